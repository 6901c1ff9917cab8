"""Global L^p norms, the Holder chain through L^1, and nodal-set length.

Norms use the model's global quadrature rule sized by points per
wavelength.  Nodal sets of real-valued modes are extracted by marching
squares with linear edge interpolation; saddle cells are resolved by the
cell-center sign, and segment lengths use the chart metric per cell (a
sin(colatitude) longitude scaling on the sphere).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigenbasis import evaluate, serialize_mode
from .manifolds import TWO_PI
from .numerics import sphere_rule, torus_rule


class ResolutionError(ValueError):
    """Contour grid too coarse for the requested mode."""


class ChainInputError(ValueError):
    """Norm reports that cannot be chained."""


@dataclass(frozen=True)
class NormReport:
    """One global norm measurement with its scaling reference."""

    mode_id: str
    lam: float
    p: float
    value: float
    reference: float
    resolution: int


@dataclass(frozen=True)
class HolderChain:
    """Interpolation check 1 <= l1^((p-2)/(2(p-1))) lp^(p/(2(p-1)))."""

    mode_id: str
    lam: float
    p: float
    l1: float
    lp: float
    product: float
    lower_bound: float


@dataclass(frozen=True)
class NodalReport:
    """Nodal-set length of a real mode with its L^1 companion."""

    mode_id: str
    lam: float
    resolution: int
    length: float
    l1: float
    ratio: float


def _global_rule(model, frequency, resolution):
    if resolution < 6:
        raise ValueError("quadrature needs at least 6 points per wavelength")
    if model.kind == "flat_torus":
        n = max(int(math.ceil(resolution * frequency)), 16)
        x1, x2, w = torus_rule(n)
        return np.stack([x1, x2], axis=-1), w
    if model.kind == "sphere":
        n_theta = max(int(math.ceil(0.5 * resolution * frequency)) + 2, 12)
        n_phi = max(int(math.ceil(resolution * frequency)), 24)
        theta, phi, w = sphere_rule(n_theta, n_phi)
        return np.stack([theta, phi], axis=-1), w
    raise ValueError("global quadrature defined for sphere and torus models")


def lp_norm(mode, p, resolution=6):
    """Global norm (integral of |e|^p dV)^(1/p).

    Parameters
    ----------
    mode : EigenMode
        Mode on the sphere or the flat torus.
    p : float
        Exponent, at least 1.
    resolution : int
        Quadrature points per wavelength, at least 6.

    Returns
    -------
    float
    """
    p = float(p)
    if p < 1.0:
        raise ValueError("norm exponent must be at least 1")
    points, weights = _global_rule(mode.model, mode.frequency, resolution)
    values = np.abs(evaluate(mode, points))
    return float(np.sum(weights * values ** p) ** (1.0 / p))


def norm_report(mode, p, resolution=6):
    """Norm measurement bundled with the exponent reference value.

    The reference is lambda^((1/2)(1/2 - 1/p)), the surface growth rate
    of L^p norms on a two dimensional model.
    """
    value = lp_norm(mode, p, resolution)
    lam = mode.frequency
    reference = lam ** (0.5 * (0.5 - 1.0 / float(p)))
    return NormReport(serialize_mode(mode), lam, float(p), value, reference,
                      int(resolution))


def holder_chain(l1_report, lp_report):
    """Chain 1 = ||e||_2 <= ||e||_1^theta ||e||_p^(1-theta) through L^1.

    With theta = (p-2)/(2(p-1)) the product must reach 1 up to a 1e-6
    slack; rearranged, it yields the lower bound
    lambda^(-1/4) (lambda^(-(1/2)(1/2-1/p)) ||e||_p)^(-p/(p-2)) <= ||e||_1.

    Parameters
    ----------
    l1_report, lp_report : NormReport
        Measurements of the same mode at the same resolution, with
        exponents 1 and p > 2.

    Returns
    -------
    HolderChain

    Raises
    ------
    ChainInputError
        If the reports disagree on mode or resolution, or carry the
        wrong exponents.
    ArithmeticError
        If the interpolation inequality fails beyond slack, indicating
        a quadrature defect.
    """
    if l1_report.mode_id != lp_report.mode_id:
        raise ChainInputError("norm reports describe different modes")
    if l1_report.resolution != lp_report.resolution:
        raise ChainInputError("norm reports use different resolutions")
    if l1_report.p != 1.0:
        raise ChainInputError("first report must carry the L^1 norm")
    p = lp_report.p
    if p <= 2.0:
        raise ChainInputError("chain exponent must exceed 2")
    theta = (p - 2.0) / (2.0 * (p - 1.0))
    product = l1_report.value ** theta * lp_report.value ** (1.0 - theta)
    if product < 1.0 - 1e-6:
        raise ArithmeticError(
            "interpolation product %.17g fell below 1" % product)
    lam = lp_report.lam
    lower = lam ** -0.25 * (lam ** (-0.5 * (0.5 - 1.0 / p))
                            * lp_report.value) ** (-p / (p - 2.0))
    return HolderChain(l1_report.mode_id, lam, p, l1_report.value,
                       lp_report.value, product, lower)


# marching squares: corner bits A=(0,0), B=(1,0), C=(1,1), D=(0,1);
# edges 0=AB, 1=BC, 2=DC, 3=AD; each case lists crossed-edge pairs
_PLAIN_CASES = {
    1: ((0, 3),), 14: ((0, 3),),
    2: ((0, 1),), 13: ((0, 1),),
    4: ((1, 2),), 11: ((1, 2),),
    8: ((2, 3),), 7: ((2, 3),),
    3: ((3, 1),), 12: ((3, 1),),
    6: ((0, 2),), 9: ((0, 2),),
}


def _edge_local(edge, t):
    if edge == 0:
        return t, np.zeros_like(t)
    if edge == 1:
        return np.ones_like(t), t
    if edge == 2:
        return t, np.ones_like(t)
    return np.zeros_like(t), t


def _cell_lengths(case, v00, v10, v11, v01, theta0, h1, h2):
    """Summed chart lengths of the contour segments in each cell.

    theta0 holds the colatitude of each cell's first corner on the
    sphere (None on the torus); the longitude step is scaled by the
    sine of the segment's own colatitude midpoint.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        t_edge = (
            v00 / (v00 - v10),
            v10 / (v10 - v11),
            v01 / (v01 - v11),
            v00 / (v00 - v01),
        )
    total = np.zeros_like(v00)

    def add(mask, pairs):
        # unused edges carry nan interpolants; they never land in mask
        with np.errstate(invalid="ignore"):
            for edge_a, edge_b in pairs:
                a1, a2 = _edge_local(edge_a, t_edge[edge_a])
                b1, b2 = _edge_local(edge_b, t_edge[edge_b])
                d1 = (a1 - b1) * h1
                if theta0 is None:
                    scale = 1.0
                else:
                    scale = np.sin(theta0 + 0.5 * (a1 + b1) * h1)
                d2 = (a2 - b2) * h2 * scale
                total[mask] += np.hypot(d1, d2)[mask]

    for code, pairs in _PLAIN_CASES.items():
        mask = case == code
        if mask.any():
            add(mask, pairs)
    center = v00 + v10 + v11 + v01
    for code, same in ((5, True), (10, False)):
        mask = case == code
        if mask.any():
            positive = center >= 0.0
            around_bd = mask & (positive if same else ~positive)
            around_ac = mask & (~positive if same else positive)
            if around_bd.any():
                add(around_bd, ((0, 1), (2, 3)))
            if around_ac.any():
                add(around_ac, ((0, 3), (1, 2)))
    return total


def _contour_grids(model, frequency, resolution):
    if model.kind == "flat_torus":
        n = max(int(math.ceil(resolution * frequency)), 8)
        g1 = np.linspace(0.0, TWO_PI, n + 1)
        g2 = np.linspace(0.0, TWO_PI, n + 1)
        return g1, g2
    if model.kind == "sphere":
        n1 = max(int(math.ceil(0.5 * resolution * frequency)), 8)
        n2 = max(int(math.ceil(resolution * frequency)), 16)
        return np.linspace(0.0, math.pi, n1 + 1), np.linspace(0.0, TWO_PI, n2 + 1)
    raise ValueError("nodal extraction defined for sphere and torus models")


def nodal_length(mode, resolution=20, l1_resolution=8):
    """Length of the zero set of a real-valued mode.

    Parameters
    ----------
    mode : EigenMode
        Real-valued mode; imaginary parts beyond rounding are rejected.
    resolution : int
        Contour grid points per wavelength.
    l1_resolution : int
        Points per wavelength for the companion L^1 quadrature.

    Returns
    -------
    NodalReport
        Includes the ratio length / (lambda ||e||_1^2).

    Raises
    ------
    ResolutionError
        If more than 30 percent of grid cells mix signs, the grid
        cannot separate nodal components.
    """
    g1, g2 = _contour_grids(mode.model, mode.frequency, resolution)
    mesh1, mesh2 = np.meshgrid(g1, g2, indexing="ij")
    points = np.stack([mesh1, mesh2], axis=-1)
    raw = evaluate(mode, points)
    magnitude = float(np.max(np.abs(raw)))
    if magnitude > 0.0 and float(np.max(np.abs(raw.imag))) > 1e-9 * magnitude:
        raise ValueError("nodal length needs a real-valued mode")
    values = raw.real.copy()
    # periodic columns must agree exactly, or a nodal line on the seam
    # is dropped by rounding noise
    values[:, -1] = values[:, 0]
    if mode.model.kind == "flat_torus":
        values[-1, :] = values[0, :]

    v00 = values[:-1, :-1]
    v10 = values[1:, :-1]
    v11 = values[1:, 1:]
    v01 = values[:-1, 1:]
    sign = values >= 0.0
    case = (sign[:-1, :-1].astype(int)
            + 2 * sign[1:, :-1]
            + 4 * sign[1:, 1:]
            + 8 * sign[:-1, 1:])
    mixed = (case != 0) & (case != 15)
    fraction = float(np.count_nonzero(mixed)) / mixed.size
    if fraction > 0.30:
        raise ResolutionError(
            "signs change in %.0f%% of cells; refine the contour grid"
            % (100.0 * fraction))

    h1 = g1[1] - g1[0]
    h2 = g2[1] - g2[0]
    if mode.model.kind == "sphere":
        theta0 = np.broadcast_to(g1[:-1, None], v00.shape)
    else:
        theta0 = None
    lengths = _cell_lengths(case, v00, v10, v11, v01, theta0, h1, h2)
    total = float(np.sum(lengths[mixed]))

    l1 = lp_norm(mode, 1.0, l1_resolution)
    lam = mode.frequency
    return NodalReport(serialize_mode(mode), lam, int(resolution), total, l1,
                       total / (lam * l1 ** 2))


def hezari_sogge_ratio(report):
    """Nodal length over lambda ||e||_1^2 from a nodal report."""
    return report.length / (report.lam * report.l1 ** 2)
