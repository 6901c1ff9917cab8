"""L2-normalized eigenfunctions and quasimodes on the sphere and flat torus.

Sphere families use fully normalized associated Legendre functions
carried in scaled form (the sin^m factor is split off and reattached in
log space with a per-point power-of-two rescale), so degrees up to 4096
evaluate without overflow.  Torus waves are unit-mass Fourier
combinations evaluated by direct summation.  Quasimodes store their
per-component frequencies so the defect norm ||(Lap + lambda^2) psi||
is exactly computable from coefficients.

Serialization grammar, one mode per line, whitespace separated:

    sphere harmonic L M LAMBDA
    sphere zonal L LAMBDA
    sphere highest K LAMBDA
    torus wave K1,K2:RE,IM;... LAMBDA
    torus quasiwave K1,K2:RE,IM;... LAMBDA
    sphere quasisum FAM,PARAMS...,RE,IM|... LAMBDA

The quasisum components are base sphere families with their weight
appended, joined by '|', for example `harmonic,5,3,0.5,0.0|zonal,6,0.5,0.0`.
Floats are written with 17 significant digits so lines round-trip exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .manifolds import ChartDomainError, ManifoldModel, TWO_PI
from .numerics import gauss_legendre

MAX_DEGREE = 4096
_RESCALE = 2.0 ** 512
_LOG_RESCALE = 512.0 * math.log(2.0)


class ModeLimitError(ValueError):
    """Degree or order beyond the supported range."""


class QuasimodeWindowError(ValueError):
    """Combination too spread in frequency to be a unit quasimode."""

    def __init__(self, value):
        super().__init__(
            "window too wide: quasimode quantity %.6g exceeds 1" % value
        )
        self.value = value


class SerializationError(ValueError):
    """Unparseable mode descriptor line."""


@dataclass(frozen=True)
class SphereHarmonic:
    l: int
    m: int


@dataclass(frozen=True)
class HighestWeight:
    k: int


@dataclass(frozen=True)
class Zonal:
    l: int


@dataclass(frozen=True)
class TorusWave:
    ks: tuple
    cs: tuple


@dataclass(frozen=True)
class ModeSum:
    components: tuple
    weights: tuple


@dataclass(frozen=True)
class EigenMode:
    """Eigenfunction or flagged quasimode with its frequency."""

    model: ManifoldModel
    family: object
    frequency: float
    quasimode: bool = False


def _check_degree(value, name):
    if not 1 <= value <= MAX_DEGREE:
        raise ModeLimitError("%s must lie in [1, %d]" % (name, MAX_DEGREE))


def sphere_harmonic(l, m):
    """Spherical harmonic Y_lm, L2-normalized, frequency sqrt(l(l+1))."""
    _check_degree(l, "degree l")
    if abs(m) > l:
        raise ValueError("order |m| must not exceed the degree")
    return EigenMode(ManifoldModel.sphere(), SphereHarmonic(int(l), int(m)),
                     math.sqrt(l * (l + 1.0)))


def zonal(l):
    """Rotation-invariant harmonic, peaking at the poles."""
    _check_degree(l, "degree l")
    return EigenMode(ManifoldModel.sphere(), Zonal(int(l)), math.sqrt(l * (l + 1.0)))


def highest_weight(k):
    """Equator-concentrated harmonic N_k sin^k(colat) cos(k lon)."""
    _check_degree(k, "degree k")
    return EigenMode(ManifoldModel.sphere(), HighestWeight(int(k)),
                     math.sqrt(k * (k + 1.0)))


def torus_wave(ks, cs, quasimode=False, frequency=None):
    """Fourier combination sum_j c_j exp(i k_j . x) / (2 pi).

    Parameters
    ----------
    ks : sequence of integer pairs
        Distinct lattice vectors; all must share one Euclidean length
        unless the quasimode flag is set.
    cs : sequence of complex
        Coefficients with sum |c_j|^2 = 1 within 1e-8 (Parseval mass).
    quasimode : bool
        Marks a frequency-window combination; lifts the shared-length rule.
    frequency : float, optional
        Required for quasimodes; defaults to the shared lattice length.
    """
    ks = tuple((int(a), int(b)) for a, b in ks)
    cs = tuple(complex(c) for c in cs)
    if not ks or len(ks) != len(cs):
        raise ValueError("need matching nonempty lattice vectors and coefficients")
    if len(set(ks)) != len(ks):
        raise ValueError("lattice vectors must be distinct")
    norms = [math.hypot(*k) for k in ks]
    if max(norms) > MAX_DEGREE:
        raise ModeLimitError("lattice vectors limited to length %d" % MAX_DEGREE)
    mass = sum(abs(c) ** 2 for c in cs)
    if quasimode:
        if mass > 1.0 + 1e-8:
            raise ValueError("quasimode Parseval mass exceeds 1: %.12g" % mass)
        if frequency is None:
            raise ValueError("quasimodes need an explicit frequency")
    else:
        if abs(mass - 1.0) > 1e-8:
            raise ValueError("coefficients must carry unit Parseval mass, got %.12g" % mass)
        if max(norms) - min(norms) > 1e-12:
            raise ValueError("lattice vectors of one eigenmode must share a length")
        if frequency is None:
            frequency = norms[0]
        if frequency <= 0.0:
            raise ValueError("frequency must be positive")
    return EigenMode(ManifoldModel.flat_torus(), TorusWave(ks, cs),
                     float(frequency), bool(quasimode))


@lru_cache(maxsize=256)
def _highest_weight_norm(k):
    """Normalizing constant of sin^k(colat) cos(k lon) by quadrature."""
    x, w = gauss_legendre(2 * k + 8)
    integral = float(w @ (1.0 - x * x) ** k)
    return 1.0 / math.sqrt(math.pi * integral)


def _legendre_normalized(l, m, x, s):
    """Normalized associated Legendre P-bar_l^m(x), s = sin(colat).

    Normalized so the complex harmonic P-bar * exp(i m lon) has unit L2
    norm on the sphere; includes the Condon-Shortley sign.  Carried on
    the scaled functions P-bar / s^m with power-of-two rescaling, then
    recombined in log space.
    """
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)
    log_pref = 0.5 * (math.log((2 * m + 1) / (4.0 * math.pi)) + math.lgamma(m + 0.5)
                      - 0.5 * math.log(math.pi) - math.lgamma(m + 1.0))
    seed = (-1.0) ** m * math.exp(log_pref)
    q_prev = np.full(x.shape, seed)
    count = np.zeros(x.shape, dtype=np.int64)
    if l == m:
        q = q_prev
    else:
        q = math.sqrt(2.0 * m + 3.0) * x * q_prev
        for ll in range(m + 2, l + 1):
            a = math.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m))
            b = math.sqrt((2.0 * ll + 1.0) * (ll - 1.0 + m) * (ll - 1.0 - m)
                          / ((2.0 * ll - 3.0) * (ll * ll - m * m)))
            q, q_prev = a * x * q - b * q_prev, q
            big = np.abs(q) > _RESCALE
            if big.any():
                q = np.where(big, q / _RESCALE, q)
                q_prev = np.where(big, q_prev / _RESCALE, q_prev)
                count = count + big
    if m == 0:
        return q
    with np.errstate(divide="ignore"):
        log_mag = np.log(np.abs(q)) + count * _LOG_RESCALE + m * np.log(s)
    return np.sign(q) * np.exp(log_mag)


def _sphere_angles(mode, theta, phi):
    if np.any(theta < -1e-12) or np.any(theta > math.pi + 1e-12):
        raise ChartDomainError("colatitude outside [0, pi]")
    theta = np.clip(theta, 0.0, math.pi)
    return theta, phi


def _values(mode, u, v):
    family = mode.family
    if isinstance(family, (SphereHarmonic, Zonal, HighestWeight)):
        theta, phi = _sphere_angles(mode, u, v)
        x, s = np.cos(theta), np.sin(theta)
        if isinstance(family, Zonal):
            return _legendre_normalized(family.l, 0, x, s).astype(complex)
        if isinstance(family, HighestWeight):
            k = family.k
            with np.errstate(divide="ignore"):
                radial = np.exp(k * np.log(s))
            return _highest_weight_norm(k) * radial * np.cos(k * phi) + 0.0j
        m = abs(family.m)
        base = _legendre_normalized(family.l, m, x, s)
        if family.m < 0 and m % 2 == 1:
            base = -base
        return base * np.exp(1j * family.m * phi)
    if isinstance(family, TorusWave):
        kmat = np.array(family.ks, dtype=float)
        coeffs = np.array(family.cs, dtype=complex)
        phases = np.exp(1j * (np.multiply.outer(u, kmat[:, 0])
                              + np.multiply.outer(v, kmat[:, 1])))
        return (phases @ coeffs) / TWO_PI
    if isinstance(family, ModeSum):
        total = np.zeros(np.shape(u), dtype=complex)
        for component, weight in zip(family.components, family.weights):
            total = total + weight * _values(component, u, v)
        return total
    raise TypeError("unknown mode family %r" % (family,))


def evaluate(mode, p):
    """Pointwise value of the mode.

    Parameters
    ----------
    mode : EigenMode
    p : array_like
        Chart point (2,) or stacked points (..., 2).

    Returns
    -------
    complex or ndarray
        Mode value, complex; arrays of points give arrays of values.
    """
    pts = np.asarray(p, dtype=float)
    if pts.shape[-1] != 2:
        raise ValueError("points must have two chart coordinates")
    values = _values(mode, pts[..., 0], pts[..., 1])
    if pts.ndim == 1:
        return complex(values)
    return values


def mode_components(mode):
    """Frequencies and Parseval weights of the mode's eigencomponents."""
    family = mode.family
    if isinstance(family, TorusWave):
        freqs = np.array([math.hypot(*k) for k in family.ks])
        weights = np.array([abs(c) for c in family.cs])
        return freqs, weights
    if isinstance(family, ModeSum):
        freqs = np.array([c.frequency for c in family.components])
        weights = np.array([abs(w) for w in family.weights])
        return freqs, weights
    return np.array([mode.frequency]), np.array([1.0])


def defect_norm(mode):
    """Exact L2 norm of (Lap + lambda^2) applied to the mode.

    Computed in coefficient space from the stored component frequencies:
    sqrt(sum |w_j|^2 (lambda^2 - lambda_j^2)^2).
    """
    freqs, weights = mode_components(mode)
    lam2 = mode.frequency ** 2
    return float(np.sqrt(np.sum(weights ** 2 * (lam2 - freqs ** 2) ** 2)))


def quasimode_value(mode):
    """Quasimode quantity ||psi|| + (log lambda / lambda) ||(Lap+lambda^2) psi||."""
    freqs, weights = mode_components(mode)
    mass = float(np.sqrt(np.sum(weights ** 2)))
    lam = mode.frequency
    return mass + (math.log(lam) / lam) * defect_norm(mode)


def make_quasimode(modes, weights, frequency):
    """Combine eigenmodes from a frequency window into a flagged quasimode.

    Parameters
    ----------
    modes : sequence of EigenMode
        Pairwise orthogonal exact eigenmodes on one model.
    weights : sequence of complex
        Combination weights with sum |w|^2 <= 1.
    frequency : float
        Nominal frequency lambda of the window.

    Returns
    -------
    EigenMode
        Flagged quasimode; torus combinations are merged into a single
        wave family, sphere combinations kept as a weighted sum.

    Raises
    ------
    QuasimodeWindowError
        If ||psi|| + (log lambda / lambda) ||(Lap+lambda^2) psi|| > 1;
        the error carries the computed value.
    """
    modes = list(modes)
    weights = [complex(w) for w in weights]
    if not modes or len(modes) != len(weights):
        raise ValueError("need matching nonempty modes and weights")
    models = {mode.model.kind for mode in modes}
    if len(models) != 1:
        raise ValueError("quasimode components must live on one model")
    if any(mode.quasimode for mode in modes):
        raise ValueError("components must be exact eigenmodes")
    lam = float(frequency)
    if lam <= 1.0:
        raise ValueError("quasimode frequency must exceed 1")
    mass = sum(abs(w) ** 2 for w in weights)
    if mass > 1.0 + 1e-12:
        raise ValueError("weights must carry Parseval mass at most 1")
    value = math.sqrt(mass)
    defect2 = 0.0
    for mode, w in zip(modes, weights):
        defect2 += abs(w) ** 2 * (lam ** 2 - mode.frequency ** 2) ** 2
    value += (math.log(lam) / lam) * math.sqrt(defect2)
    if value > 1.0 + 1e-12:
        raise QuasimodeWindowError(value)
    if all(isinstance(m.family, TorusWave) for m in modes):
        merged = {}
        for mode, w in zip(modes, weights):
            for k, c in zip(mode.family.ks, mode.family.cs):
                merged[k] = merged.get(k, 0.0j) + w * c
        ks = tuple(sorted(merged))
        cs = tuple(merged[k] for k in ks)
        family = TorusWave(ks, cs)
        model = modes[0].model
    else:
        family = ModeSum(tuple(modes), tuple(weights))
        model = modes[0].model
    return EigenMode(model, family, lam, True)


def laplace_residual(mode, points, step=1e-3):
    """Relative eigenvalue defect |(Lap + lambda^2) e| / lambda^2 by stencils.

    Fourth-order central differences in the chart coordinates; sphere
    points should keep 2*step clear of the poles.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    u, v = pts[:, 0], pts[:, 1]
    h = float(step)

    def d2(f, axis):
        shifts = (-2, -1, 0, 1, 2)
        coeffs = (-1.0, 16.0, -30.0, 16.0, -1.0)
        total = np.zeros(u.shape, dtype=complex)
        for shift, coeff in zip(shifts, coeffs):
            du = u + shift * h if axis == 0 else u
            dv = v + shift * h if axis == 1 else v
            total = total + coeff * f(du, dv)
        return total / (12.0 * h * h)

    def d1(f, axis):
        shifts = (-2, -1, 1, 2)
        coeffs = (1.0, -8.0, 8.0, -1.0)
        total = np.zeros(u.shape, dtype=complex)
        for shift, coeff in zip(shifts, coeffs):
            du = u + shift * h if axis == 0 else u
            dv = v + shift * h if axis == 1 else v
            total = total + coeff * f(du, dv)
        return total / (12.0 * h)

    f = lambda a, b: _values(mode, a, b)
    if mode.model.kind == "sphere":
        lap = d2(f, 0) + d1(f, 0) / np.tan(u) + d2(f, 1) / np.sin(u) ** 2
    elif mode.model.kind == "flat_torus":
        lap = d2(f, 0) + d2(f, 1)
    else:
        raise ValueError("modes live on the sphere or the flat torus")
    lam2 = mode.frequency ** 2
    return np.abs(lap + lam2 * f(u, v)) / lam2


_FLOAT = "%.17g"


def _fmt_complex(c):
    return _FLOAT % c.real + "," + _FLOAT % c.imag


def _sphere_family_token(family):
    if isinstance(family, SphereHarmonic):
        return "harmonic", "%d %d" % (family.l, family.m)
    if isinstance(family, Zonal):
        return "zonal", "%d" % family.l
    if isinstance(family, HighestWeight):
        return "highest", "%d" % family.k
    raise SerializationError("unsupported sphere family %r" % (family,))


def serialize_mode(mode):
    """One-line descriptor in the grammar `model family params lambda`."""
    lam = _FLOAT % mode.frequency
    family = mode.family
    if isinstance(family, TorusWave):
        token = "quasiwave" if mode.quasimode else "wave"
        body = ";".join("%d,%d:%s" % (k[0], k[1], _fmt_complex(c))
                        for k, c in zip(family.ks, family.cs))
        return "torus %s %s %s" % (token, body, lam)
    if isinstance(family, ModeSum):
        parts = []
        for component, weight in zip(family.components, family.weights):
            token, params = _sphere_family_token(component.family)
            parts.append(",".join([token] + params.split() + [_fmt_complex(weight)]))
        return "sphere quasisum %s %s" % ("|".join(parts), lam)
    token, params = _sphere_family_token(family)
    return "sphere %s %s %s" % (token, params, lam)


def _parse_ints(tokens, count):
    if len(tokens) != count:
        raise SerializationError("expected %d integer parameters" % count)
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise SerializationError("bad integer in %r" % (tokens,)) from exc


def _parse_wave_body(body):
    ks, cs = [], []
    for chunk in body.split(";"):
        try:
            kpart, cpart = chunk.split(":")
            k1, k2 = (int(t) for t in kpart.split(","))
            re, im = (float(t) for t in cpart.split(","))
        except ValueError as exc:
            raise SerializationError("bad wave component %r" % chunk) from exc
        ks.append((k1, k2))
        cs.append(complex(re, im))
    return ks, cs


def parse_mode(line):
    """Parse a descriptor line produced by serialize_mode."""
    tokens = line.split()
    if len(tokens) < 4:
        raise SerializationError("descriptor needs model, family, params, lambda")
    model, token, lam_token = tokens[0], tokens[1], tokens[-1]
    params = tokens[2:-1]
    try:
        lam = float(lam_token)
    except ValueError as exc:
        raise SerializationError("bad frequency %r" % lam_token) from exc
    if model == "torus" and token in ("wave", "quasiwave"):
        if len(params) != 1:
            raise SerializationError("wave descriptors take one parameter block")
        ks, cs = _parse_wave_body(params[0])
        return torus_wave(ks, cs, quasimode=(token == "quasiwave"), frequency=lam)
    if model != "sphere":
        raise SerializationError("unknown model %r" % model)
    if token == "harmonic":
        l, m = _parse_ints(params, 2)
        return sphere_harmonic(l, m)
    if token == "zonal":
        (l,) = _parse_ints(params, 1)
        return zonal(l)
    if token == "highest":
        (k,) = _parse_ints(params, 1)
        return highest_weight(k)
    if token == "quasisum":
        if len(params) != 1:
            raise SerializationError("quasisum descriptors take one parameter block")
        components, weights = [], []
        for part in params[0].split("|"):
            fields = part.split(",")
            if fields[0] == "harmonic" and len(fields) == 5:
                components.append(sphere_harmonic(int(fields[1]), int(fields[2])))
            elif fields[0] == "zonal" and len(fields) == 4:
                components.append(zonal(int(fields[1])))
            elif fields[0] == "highest" and len(fields) == 4:
                components.append(highest_weight(int(fields[1])))
            else:
                raise SerializationError("bad quasisum component %r" % part)
            weights.append(complex(float(fields[-2]), float(fields[-1])))
        return make_quasimode(components, weights, lam)
    raise SerializationError("unknown family %r" % token)
