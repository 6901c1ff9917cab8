"""Named experiment driver: scaling studies with CSV, SVG, and summary output.

Each experiment writes three files into the output directory: a CSV of
per-sample rows (17 significant digits, provenance columns, seed in the
header comment), one SVG line plot, and a text summary holding scaling
fits and invariant pass/fail lines.  Identical configuration and seed
reproduce the files byte for byte.
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass, fields, replace

import numpy as np

from . import __version__
from .deckgroup import annulus_counts, ball_count, enumerate_group
from .eigenbasis import highest_weight, torus_wave, zonal
from .manifolds import TWO_PI, ManifoldModel, segment
from .norms_nodal import lp_norm, nodal_length
from .spectral import window_gram_norm, window_spectrum
from .svg import line_plot
from .toponogov import cone_spec, verify_cone_containment
from .tubes import default_family, escape_time, kn_norm, restriction_mass, tube

EXPERIMENTS = (
    "kn-scaling",
    "restriction-scaling",
    "gram-window",
    "toponogov-cone",
    "deck-counts",
    "escape-times",
    "nodal-suite",
    "saturation-contrast",
)

MAX_FREQUENCY = 4096.0
MAX_WORD_LENGTH = 16

_GRID_DEFAULTS = {
    "kn-scaling": {"lam_grid": (64.0, 128.0, 256.0, 512.0)},
    "restriction-scaling": {"k_grid": (8, 16, 32, 64)},
    "gram-window": {"lam_grid": (16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0)},
    "toponogov-cone": {},
    "deck-counts": {},
    "escape-times": {"lam_grid": (100.0, 200.0, 400.0, 800.0)},
    "nodal-suite": {"k_grid": (5, 10, 20)},
    "saturation-contrast": {"k_grid": (16, 32, 64)},
}

_GRID_USE = {
    "kn-scaling": ("lam_grid",),
    "restriction-scaling": ("k_grid",),
    "gram-window": ("lam_grid",),
    "toponogov-cone": ("t_grid", "r_grid"),
    "deck-counts": (),
    "escape-times": ("lam_grid",),
    "nodal-suite": ("k_grid",),
    "saturation-contrast": ("k_grid",),
}


class ConfigError(ValueError):
    """Rejected experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated settings for one named experiment run."""

    experiment: str
    model: str = "flat_torus"
    lam_grid: tuple = ()
    k_grid: tuple = ()
    t_grid: tuple = (2.0, 4.0, 6.0)
    r_grid: tuple = (0.5, 1.0)
    width_multiplier: float = 1.0
    base_count: int = 8
    direction_count: int = 8
    coefficient_count: int = 32
    word_length: int = 8
    resolution: int = 6
    out_dir: str = "."
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError("unknown experiment %r; expected one of %s"
                              % (self.experiment, ", ".join(EXPERIMENTS)))
        for name in _GRID_USE[self.experiment]:
            grid = getattr(self, name)
            if not grid:
                raise ConfigError("experiment %s needs a nonempty %s"
                                  % (self.experiment, name))
        for name in ("lam_grid", "k_grid", "t_grid", "r_grid"):
            grid = getattr(self, name)
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ConfigError("%s must be strictly increasing" % name)
            if grid and min(grid) <= 0:
                raise ConfigError("%s entries must be positive" % name)
        if self.lam_grid and max(self.lam_grid) > MAX_FREQUENCY:
            raise ConfigError("lam_grid exceeds the hard cap %g" % MAX_FREQUENCY)
        if self.k_grid and max(self.k_grid) > MAX_FREQUENCY:
            raise ConfigError("k_grid exceeds the hard cap %g" % MAX_FREQUENCY)
        if not 1 <= self.word_length <= MAX_WORD_LENGTH:
            raise ConfigError("word_length must lie in [1, %d]" % MAX_WORD_LENGTH)
        if self.resolution < 6:
            raise ConfigError("resolution must be at least 6")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must fit an unsigned 64-bit integer")
        for name in ("width_multiplier",):
            if getattr(self, name) <= 0:
                raise ConfigError("%s must be positive" % name)
        for name in ("base_count", "direction_count", "coefficient_count"):
            if getattr(self, name) < 1:
                raise ConfigError("%s must be at least 1" % name)


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares fit of log(value) against a transformed abscissa."""

    transform: str
    slope: float
    intercept: float
    r_squared: float


_TRANSFORMS = {
    "log": lambda x: math.log(x),
    "loglog": lambda x: math.log(math.log(x)),
    "identity": lambda x: x,
}


def fit_scaling(series, transform="log"):
    """Fit log(value) = slope * T(abscissa) + intercept.

    Parameters
    ----------
    series : sequence of (abscissa, value)
        At least three points with positive values.
    transform : {"log", "loglog", "identity"}

    Returns
    -------
    ScalingFit
    """
    if transform not in _TRANSFORMS:
        raise ValueError("unknown transform %r" % transform)
    points = [(float(a), float(v)) for a, v in series]
    if len(points) < 3:
        raise ValueError("scaling fit needs at least 3 points")
    if any(v <= 0.0 for _, v in points):
        raise ValueError("scaling fit needs positive values")
    xs = np.array([_TRANSFORMS[transform](a) for a, _ in points])
    ys = np.array([math.log(v) for _, v in points])
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = ys - (slope * xs + intercept)
    total = ys - ys.mean()
    ss_tot = float(total @ total)
    ss_res = float(residual @ residual)
    if ss_tot <= 1e-30:
        r2 = 1.0 if ss_res <= 1e-24 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return ScalingFit(transform, float(slope), float(intercept),
                      float(min(max(r2, 0.0), 1.0)))


def parse_config(text):
    """Parse line-oriented `key = value` text into a raw string map."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError("line %d is not `key = value`: %r"
                              % (lineno, line))
        key, _, value = stripped.partition("=")
        raw[key.strip().replace("-", "_")] = value.strip()
    return raw


_TUPLE_FIELDS = {"lam_grid": float, "k_grid": int, "t_grid": float,
                 "r_grid": float}
_SCALAR_FIELDS = {"model": str, "width_multiplier": float, "base_count": int,
                  "direction_count": int, "coefficient_count": int,
                  "word_length": int, "resolution": int, "out_dir": str,
                  "seed": int, "jobs": int, "experiment": str}


def _coerce(key, value):
    if key in _TUPLE_FIELDS:
        if isinstance(value, (tuple, list)):
            return tuple(_TUPLE_FIELDS[key](v) for v in value)
        parts = [p.strip() for p in str(value).split(",") if p.strip()]
        return tuple(_TUPLE_FIELDS[key](p) for p in parts)
    if key in _SCALAR_FIELDS:
        try:
            return _SCALAR_FIELDS[key](value)
        except (TypeError, ValueError):
            raise ConfigError("bad value for %s: %r" % (key, value))
    raise ConfigError("unknown config key %r" % key)


def load_config(path=None, overrides=None):
    """Build an ExperimentConfig from an optional file plus overrides.

    Override values (command line flags) win over file values; absent
    grids fall back to per-experiment defaults.
    """
    values = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                raw = parse_config(handle.read())
        except OSError as err:
            raise ConfigError("cannot read config file: %s" % err)
        values.update(raw)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    values = {("lam_grid" if key == "lambda_grid" else key): value
              for key, value in values.items()}
    coerced = {key: _coerce(key, value) for key, value in values.items()}
    experiment = coerced.get("experiment")
    if experiment is None:
        raise ConfigError("no experiment named; pass one on the command line "
                          "or set `experiment` in the config file")
    for key, default in _GRID_DEFAULTS.get(experiment, {}).items():
        coerced.setdefault(key, default)
    return ExperimentConfig(**coerced)


def _config_hash(config):
    text = ";".join("%s=%r" % (f.name, getattr(config, f.name))
                    for f in fields(config) if f.name != "out_dir")
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


def _format_value(value):
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _write_csv(path, seed, config_hash, header, rows):
    lines = ["# seed = %d" % seed]
    lines.append(",".join(tuple(header) + ("version", "config_hash")))
    for row in rows:
        lines.append(",".join([_format_value(v) for v in row]
                              + [__version__, config_hash]))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    return path


def _write_summary(path, seed, config_hash, lines):
    body = ["experiment summary", "seed = %d" % seed,
            "version = %s" % __version__, "config_hash = %s" % config_hash, ""]
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(body + list(lines)) + "\n")
    return path


def _maybe_fit(series, transform):
    if len(series) < 3:
        return None
    return fit_scaling(series, transform)


def _fit_lines(name, fit):
    if fit is None:
        return ["%s: fit skipped (needs at least 3 grid points)" % name]
    return [
        "%s: transform = %s, slope = %.17g, intercept = %.17g, R^2 = %.17g"
        % (name, fit.transform, fit.slope, fit.intercept, fit.r_squared)
    ]


def _check(label, ok):
    return "%s: %s" % (label, "pass" if ok else "FAIL")


def _random_window_mode(lam, coefficient_count, rng):
    spectrum = window_spectrum(lam)
    ks = [m.family.ks[0] for m in spectrum.modes]
    count = min(coefficient_count, len(ks))
    chosen = rng.choice(len(ks), size=count, replace=False)
    chosen.sort()
    cs = rng.normal(size=count) + 1j * rng.normal(size=count)
    cs /= np.linalg.norm(cs)
    return torus_wave([ks[i] for i in chosen], cs, quasimode=True,
                      frequency=lam)


def _run_kn_scaling(config, rng):
    torus = ManifoldModel.flat_torus()
    family = default_family(torus, 1.0, config.base_count,
                            config.direction_count)
    header = ("model", "mode", "lambda", "epsilon", "segment", "kn_squared",
              "reference")
    rows = []
    for lam in config.lam_grid:
        mode = _random_window_mode(lam, config.coefficient_count, rng)
        result = kn_norm(mode, family, config.resolution,
                         config.width_multiplier, config.jobs)
        rows.append(("flat_torus", "window-%d" % len(mode.family.ks), lam,
                     config.width_multiplier * lam ** -0.5, result.segment_id,
                     result.value ** 2, math.log(lam) ** -0.5))
    fit = _maybe_fit([(r[2], r[5]) for r in rows], "loglog")
    plot = [("kn^2", [r[2] for r in rows], [r[5] for r in rows]),
            ("(log lambda)^-1/2", [r[2] for r in rows], [r[6] for r in rows])]
    summary = _fit_lines("kn_squared", fit) + [
        _check("kn_squared <= 1 + 1e-6", all(r[5] <= 1.0 + 1e-6 for r in rows)),
    ]
    return header, rows, plot, {"log_x": True, "log_y": True,
                                "title": "tube mass of window modes",
                                "x_label": "lambda",
                                "y_label": "sup tube mass"}, summary


def _run_restriction_scaling(config, rng):
    sphere = ManifoldModel.sphere()
    equator = segment(sphere, (math.pi / 2.0, 0.0), (0.0, 1.0), TWO_PI)
    meridian = segment(sphere, (0.2, 1.0), (1.0, 0.0), math.pi - 0.4)
    header = ("model", "mode", "lambda", "geodesic", "mass", "reference")
    rows = []
    for k in config.k_grid:
        mode = highest_weight(int(k))
        lam = mode.frequency
        for name, seg in (("equator", equator), ("meridian", meridian)):
            mass = restriction_mass(mode, seg, config.resolution)
            rows.append(("sphere", "highest-%d" % k, lam, name, mass,
                         math.sqrt(lam)))
    equator_rows = [r for r in rows if r[3] == "equator"]
    fit = _maybe_fit([(r[2], r[4]) for r in equator_rows], "log")
    plot = [("equator", [r[2] for r in equator_rows],
             [r[4] for r in equator_rows]),
            ("meridian", [r[2] for r in rows if r[3] == "meridian"],
             [max(r[4], 1e-300) for r in rows if r[3] == "meridian"])]
    concentrated = all(
        e[4] > m[4] for e, m in zip(equator_rows,
                                    [r for r in rows if r[3] == "meridian"]))
    summary = _fit_lines("equator_mass", fit) + [
        _check("equator mass exceeds meridian mass", concentrated),
    ]
    return header, rows, plot, {"log_x": True, "log_y": True,
                                "title": "geodesic restriction of highest-weight modes",
                                "x_label": "lambda", "y_label": "restricted mass"}, summary


def _run_gram_window(config, rng):
    torus = ManifoldModel.flat_torus()
    header = ("lambda", "window_width", "modes", "tube", "norm", "reference")
    rows = []
    for lam in config.lam_grid:
        spectrum = window_spectrum(lam)
        tb = tube(segment(torus, (0.0, 0.0), (1.0, 0.0), TWO_PI),
                  config.width_multiplier * lam ** -0.5)
        norm = window_gram_norm(spectrum, tb, config.resolution)
        rows.append((lam, spectrum.width, len(spectrum.modes),
                     "coordinate-circle", norm, math.log(lam) ** -0.5))
    fit = _maybe_fit([(r[0], r[4]) for r in rows], "loglog")
    norms = [r[4] for r in rows]
    plot = [("window norm", [r[0] for r in rows], norms),
            ("(log lambda)^-1/2", [r[0] for r in rows], [r[5] for r in rows])]
    summary = _fit_lines("window_norm", fit) + [
        _check("norms non-increasing",
               all(b <= a for a, b in zip(norms, norms[1:]))),
        _check("norm^2 below 1", all(n ** 2 < 1.0 for n in norms)),
    ]
    return header, rows, plot, {"log_x": True, "log_y": True,
                                "title": "window projector norm on a shrinking tube",
                                "x_label": "lambda", "y_label": "norm"}, summary


def _run_toponogov_cone(config, rng):
    header = ("model", "T", "R", "theta", "violations", "max_excess",
              "chord_gap", "samples")
    rows = []
    all_clean = True
    for kind in ("hyperbolic_plane", "flat_torus"):
        model = (ManifoldModel.hyperbolic_plane() if kind == "hyperbolic_plane"
                 else ManifoldModel.flat_torus())
        base = (0.5, 1.2) if kind == "hyperbolic_plane" else (0.3, 0.4)
        for t_len in config.t_grid:
            seg = segment(model, base, (0.7, 0.3), t_len)
            for radius in config.r_grid:
                kappa = 1.0 if kind == "hyperbolic_plane" else 0.0
                cone = cone_spec(t_len, radius, kappa)
                report = verify_cone_containment(model, seg, cone)
                all_clean = all_clean and report.violation_count == 0
                rows.append((kind, t_len, radius, cone.theta,
                             report.violation_count, report.max_excess,
                             report.extremal_chord_gap, report.sample_count))
    t_min, r_max = config.t_grid[0], config.r_grid[-1]
    hyp = ManifoldModel.hyperbolic_plane()
    wide = cone_spec(t_min, r_max, 1.0)
    wide = replace(wide, theta=1.5 * wide.theta)
    sharp = verify_cone_containment(hyp, segment(hyp, (0.5, 1.2), (0.7, 0.3),
                                                 t_min), wide)
    hyp_rows = [r for r in rows if r[0] == "hyperbolic_plane"]
    plot = [("R = %.3g" % radius,
             [r[1] for r in hyp_rows if r[2] == radius],
             [r[3] for r in hyp_rows if r[2] == radius])
            for radius in config.r_grid]
    summary = [
        _check("zero containment violations", all_clean),
        _check("1.5 theta cone is violated", sharp.violation_count >= 1),
        "smallest aperture theta = %.17g"
        % min(r[3] for r in rows),
    ]
    return header, rows, plot, {"log_y": True,
                                "title": "gradient cone apertures",
                                "x_label": "T", "y_label": "theta"}, summary


def _run_deck_counts(config, rng):
    # A budget of L letters certifies displacement about L - 2; past the
    # default radius 8 the enumeration size stops being worth the wait.
    target = min(8.0, float(config.word_length) - 2.0)
    enum = enumerate_group(config.word_length, target_radius=target)
    header = ("kind", "parameter", "count", "reference")
    rows = []
    totals = []
    running = 0
    for length, count in enumerate(enum.counts_per_length):
        running += count
        totals.append((length, running))
        rows.append(("words", length, count, running))
    max_radius = int(enum.certified_radius)
    for radius in range(1, max_radius + 1):
        rows.append(("ball", radius, ball_count(enum, radius), 0))
    hyp = ManifoldModel.hyperbolic_plane()
    axis = segment(hyp, (0.0, 1.0), (0.0, 1.0), 1.0)
    k_max = max(0, min(2, int(math.log2(max(enum.certified_radius, 1.0))) - 1))
    annulus = annulus_counts(enum, axis, 1.0, k_max=k_max)
    for k, total, tube_hits in zip(annulus.ks, annulus.all_counts,
                                   annulus.tube_counts):
        rows.append(("annulus_all", k, total, 2 ** k))
        rows.append(("annulus_tube", k, tube_hits, 2 ** k))
    # Pruning flattens the tail; exponential growth holds up to the peak.
    peak = max(range(len(enum.counts_per_length)),
               key=lambda i: enum.counts_per_length[i])
    positive = [(length, value) for length, value in totals[1:peak + 1]
                if value > 0]
    fit = _maybe_fit(positive, "identity")
    plot = [("cumulative words", [t[0] for t in totals[1:]],
             [t[1] for t in totals[1:]])]
    growth_line = ("exponential growth R^2 > 0.9: skipped "
                   "(needs at least 3 lengths)" if fit is None else
                   _check("exponential growth R^2 > 0.9",
                          fit.r_squared > 0.9))
    summary = _fit_lines("cumulative_words", fit) + [
        growth_line,
        _check("annulus counts certified", annulus.certified),
        "certified_radius = %.17g" % enum.certified_radius,
    ]
    return header, rows, plot, {"log_y": True,
                                "title": "deck transformation counts",
                                "x_label": "word length",
                                "y_label": "cumulative elements"}, summary


def _run_escape_times(config, rng):
    torus = ManifoldModel.flat_torus()
    hyp = ManifoldModel.hyperbolic_plane()
    header = ("model", "lambda", "delta0", "angle", "epsilon", "time",
              "flat_reference")
    rows = []
    consistent = True
    for lam in config.lam_grid:
        eps = config.width_multiplier * lam ** -0.5
        for delta0 in (0.1, 0.25):
            angle = lam ** (-0.5 + delta0)
            reference = 2.0 * eps / math.sin(angle)
            flat_tube = tube(segment(torus, (0.0, 0.0), (1.0, 0.0), TWO_PI), eps)
            hyp_tube = tube(segment(hyp, (0.0, 1.0), (0.0, 1.0), 1.0), eps)
            flat_time = escape_time(torus, flat_tube, angle, eps)
            hyp_time = escape_time(hyp, hyp_tube, angle, eps)
            consistent = consistent and hyp_time <= flat_time
            rows.append(("flat_torus", lam, delta0, angle, eps, flat_time,
                         reference))
            rows.append(("hyperbolic_plane", lam, delta0, angle, eps, hyp_time,
                         reference))
    slow = [r for r in rows if r[0] == "flat_torus" and r[2] == 0.1]
    fit = _maybe_fit([(r[1], r[5]) for r in slow], "log")
    plot = [("flat, delta0 = 0.1", [r[1] for r in slow],
             [r[5] for r in slow]),
            ("hyperbolic, delta0 = 0.1",
             [r[1] for r in rows if r[0] == "hyperbolic_plane" and r[2] == 0.1],
             [r[5] for r in rows if r[0] == "hyperbolic_plane" and r[2] == 0.1])]
    summary = _fit_lines("flat_escape_time", fit) + [
        _check("hyperbolic escape at most flat escape", consistent),
    ]
    return header, rows, plot, {"log_x": True, "log_y": True,
                                "title": "ball escape times from shrinking tubes",
                                "x_label": "lambda", "y_label": "escape time"}, summary


def _sine_mode(k):
    c = 0.5j * math.sqrt(2.0)
    return torus_wave([(int(k), 0), (-int(k), 0)], [-c, c])


def _run_nodal_suite(config, rng):
    header = ("model", "mode", "lambda", "resolution", "length", "l1",
              "ratio", "length_over_sqrt_lambda")
    rows = []
    for k in config.k_grid:
        report = nodal_length(_sine_mode(k))
        rows.append(("flat_torus", "sine-%d" % k, report.lam,
                     report.resolution, report.length, report.l1,
                     report.ratio, report.length / math.sqrt(report.lam)))
    for k in config.k_grid:
        report = nodal_length(zonal(int(k)))
        rows.append(("sphere", "zonal-%d" % k, report.lam, report.resolution,
                     report.length, report.l1, report.ratio,
                     report.length / math.sqrt(report.lam)))
    torus_rows = [r for r in rows if r[0] == "flat_torus"]
    sphere_rows = [r for r in rows if r[0] == "sphere"]
    yau = all(abs(r[4] / r[2] - 4.0 * math.pi) <= 0.04 * math.pi
              for r in torus_rows)
    floor = min(r[6] for r in rows)
    fit = _maybe_fit([(r[2], r[4]) for r in sphere_rows], "log")
    plot = [("torus sines", [r[2] for r in torus_rows],
             [r[4] for r in torus_rows]),
            ("zonal", [r[2] for r in sphere_rows],
             [r[4] for r in sphere_rows])]
    summary = _fit_lines("zonal_nodal_length", fit) + [
        _check("torus nodal length = 4 pi lambda within 1%", yau),
        _check("ratio floor positive", floor > 0.0),
        "ratio floor = %.17g" % floor,
    ]
    return header, rows, plot, {"log_x": True, "log_y": True,
                                "title": "nodal lengths",
                                "x_label": "lambda", "y_label": "length"}, summary


def _run_saturation_contrast(config, rng):
    sphere = ManifoldModel.sphere()
    family = default_family(sphere, 1.0, config.base_count,
                            config.direction_count)
    header = ("mode", "lambda", "l4", "kn", "ratio", "reference")
    rows = []
    for k in config.k_grid:
        for name, mode in (("zonal-%d" % k, zonal(int(k))),
                           ("highest-%d" % k, highest_weight(int(k)))):
            lam = mode.frequency
            l4 = lp_norm(mode, 4.0, config.resolution)
            result = kn_norm(mode, family, config.resolution,
                             config.width_multiplier, config.jobs)
            ratio = l4 / (lam ** 0.125 * math.sqrt(result.value))
            rows.append((name, lam, l4, result.value, ratio, lam ** 0.125))
    ratios = [r[4] for r in rows]
    spread = max(ratios) / min(ratios)
    highest_rows = [r for r in rows if r[0].startswith("highest")]
    fit = _maybe_fit([(r[1], r[2]) for r in highest_rows], "log")
    plot = [("zonal L4", [r[1] for r in rows if r[0].startswith("zonal")],
             [r[2] for r in rows if r[0].startswith("zonal")]),
            ("highest L4", [r[1] for r in highest_rows],
             [r[2] for r in highest_rows])]
    summary = _fit_lines("highest_weight_l4", fit) + [
        _check("L4-to-KN ratio spread below 10", spread < 10.0),
        "ratio spread = %.17g" % spread,
    ]
    return header, rows, plot, {"log_x": True, "log_y": True,
                                "title": "L4 saturation against tube concentration",
                                "x_label": "lambda", "y_label": "L4 norm"}, summary


_RUNNERS = {
    "kn-scaling": _run_kn_scaling,
    "restriction-scaling": _run_restriction_scaling,
    "gram-window": _run_gram_window,
    "toponogov-cone": _run_toponogov_cone,
    "deck-counts": _run_deck_counts,
    "escape-times": _run_escape_times,
    "nodal-suite": _run_nodal_suite,
    "saturation-contrast": _run_saturation_contrast,
}


def run_experiment(config):
    """Run one named experiment and write CSV, SVG, and summary files.

    Returns
    -------
    list of str
        Paths of the written files.
    """
    try:
        os.makedirs(config.out_dir, exist_ok=True)
        probe = os.path.join(config.out_dir, ".writable")
        with open(probe, "w"):
            pass
        os.remove(probe)
    except OSError as err:
        raise ConfigError("unwritable output directory %r: %s"
                          % (config.out_dir, err))
    rng = np.random.default_rng(config.seed)
    header, rows, plot_series, plot_kwargs, summary = _RUNNERS[config.experiment](
        config, rng)
    config_hash = _config_hash(config)
    stem = os.path.join(config.out_dir, config.experiment.replace("-", "_"))
    comment = "seed = %d, version = %s, config_hash = %s" % (
        config.seed, __version__, config_hash)
    paths = [
        _write_csv(stem + ".csv", config.seed, config_hash, header, rows),
        line_plot(stem + ".svg", plot_series, comment=comment, **plot_kwargs),
        _write_summary(stem + "_summary.txt", config.seed, config_hash,
                       summary),
    ]
    return paths
