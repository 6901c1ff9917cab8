"""Closed-form geometry for the four model surfaces.

Points are numpy arrays holding two chart coordinates:

* unit sphere: (colatitude, longitude) with colatitude in [0, pi];
* flat torus: coordinates mod 2*pi on [0, 2*pi)^2;
* hyperbolic plane: upper half-plane (x, y) with y > 0;
* hyperbolic quotient: the half-plane chart shared with an enumerated
  orbit of deck transformations of a fixed genus-two surface group.

All operations are pure and use closed forms; no geodesic ODE is ever
integrated.  Directions are coordinate components of the velocity, and a
unit direction has length one in the chart metric.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .numerics import bracketed_min

TWO_PI = 2.0 * math.pi

_BOLZA_INJECTIVITY = math.acosh(1.0 + math.sqrt(2.0))


class ChartDomainError(ValueError):
    """Coordinates outside the model's chart."""


class UnitSpeedError(ValueError):
    """Direction is not unit length in the chart metric."""


class QuotientCutoffWarning(UserWarning):
    """Enumerated orbit too small to certify a quotient distance."""


@dataclass(frozen=True)
class ManifoldModel:
    """One of the four model surfaces with its curvature and length data.

    Attributes
    ----------
    kind : str
        One of "sphere", "flat_torus", "hyperbolic_plane",
        "hyperbolic_quotient".
    curvature : float
        The constant sectional curvature of the model.
    curvature_lower : float
        Lower curvature bound used by comparison arguments.
    injectivity_radius : float
        Injectivity radius of the model.
    segment_length : float
        Length convention for the family of geodesic segments, equal to
        min(1, injectivity_radius / 10) on the compact quotients.
    deck_orbit : ndarray or None
        Shape (n, 2, 2) deck matrices for the quotient, identity included.
    orbit_radius : float
        Displacement radius up to which deck_orbit is certified complete.
    """

    kind: str
    curvature: float
    curvature_lower: float
    injectivity_radius: float
    segment_length: float
    deck_orbit: np.ndarray | None = field(default=None, compare=False, repr=False)
    orbit_radius: float = math.inf

    @classmethod
    def sphere(cls):
        """Unit round sphere, curvature +1."""
        return cls("sphere", 1.0, 1.0, math.pi, 1.0)

    @classmethod
    def flat_torus(cls):
        """Square flat torus of side 2*pi, curvature 0."""
        return cls("flat_torus", 0.0, 0.0, math.pi, min(1.0, math.pi / 10.0))

    @classmethod
    def hyperbolic_plane(cls):
        """Upper half-plane, curvature -1."""
        return cls("hyperbolic_plane", -1.0, -1.0, math.inf, 1.0)

    @classmethod
    def hyperbolic_quotient(cls, orbit=None, orbit_radius=None, word_length=10):
        """Compact genus-two quotient of the hyperbolic plane.

        Parameters
        ----------
        orbit : array_like, optional
            Deck matrices of shape (n, 2, 2).  When omitted the orbit is
            enumerated from the octagon surface group up to word_length.
        orbit_radius : float, optional
            Certified displacement radius of the supplied orbit.
        word_length : int
            Enumeration cutoff used when orbit is omitted.
        """
        if orbit is None:
            from .deckgroup import enumerate_group

            enum = enumerate_group(word_length)
            orbit = enum.matrices
            orbit_radius = enum.certified_radius
        if orbit_radius is None:
            raise ValueError("an explicit orbit needs its certified radius")
        inj = _BOLZA_INJECTIVITY
        return cls(
            "hyperbolic_quotient",
            -1.0,
            -1.0,
            inj,
            min(1.0, inj / 10.0),
            np.asarray(orbit, dtype=float),
            float(orbit_radius),
        )


@dataclass(frozen=True)
class GeodesicSegment:
    """Unit-speed geodesic segment: base point, unit direction, length."""

    base: np.ndarray
    direction: np.ndarray
    length: float


@dataclass(frozen=True)
class QuotientDistance:
    """Quotient distance together with its enumeration certificate."""

    distance: float
    certified: bool


def check_point(model, p):
    """Validate chart coordinates, returning them reduced when needed."""
    q = np.asarray(p, dtype=float)
    if q.shape != (2,):
        raise ChartDomainError("a point is two chart coordinates")
    if model.kind == "sphere":
        if not 0.0 <= q[0] <= math.pi:
            raise ChartDomainError("colatitude outside [0, pi]")
        return np.array([q[0], q[1] % TWO_PI])
    if model.kind == "flat_torus":
        return q % TWO_PI
    if q[1] <= 0.0:
        raise ChartDomainError("half-plane points need y > 0")
    return q


def metric_tensor(model, p):
    """Chart metric as a 2x2 matrix at the point p."""
    if model.kind == "sphere":
        return np.diag([1.0, math.sin(p[0]) ** 2])
    if model.kind == "flat_torus":
        return np.eye(2)
    return np.eye(2) / p[1] ** 2


def chart_norm(model, p, v):
    """Length of the coordinate vector v in the chart metric at p."""
    g = metric_tensor(model, p)
    return math.sqrt(float(np.asarray(v) @ g @ np.asarray(v)))


def segment(model, base, direction, length):
    """Build a unit-speed geodesic segment from chart data.

    The direction is normalized in the chart metric at the base point.

    Parameters
    ----------
    model : ManifoldModel
    base : array_like
        Chart coordinates of the starting point.
    direction : array_like
        Coordinate components of the initial velocity; any nonzero length.
    length : float
        Arclength of the segment, >= 0.

    Returns
    -------
    GeodesicSegment

    Raises
    ------
    ChartDomainError
        If the base point is outside the chart.
    UnitSpeedError
        If the direction vanishes.
    """
    base = check_point(model, base)
    v = np.asarray(direction, dtype=float)
    n = chart_norm(model, base, v)
    if n == 0.0 or not math.isfinite(n):
        raise UnitSpeedError("direction must be nonzero and finite")
    if length < 0.0:
        raise ValueError("segment length must be nonnegative")
    return GeodesicSegment(base, v / n, float(length))


def _require_unit(model, seg):
    n = chart_norm(model, seg.base, seg.direction)
    if abs(n - 1.0) > 1e-12:
        raise UnitSpeedError("segment direction is not unit length")


def sphere_embed(p):
    """Unit-vector embedding of a (colatitude, longitude) point in R^3."""
    th, ph = float(p[0]), float(p[1])
    st = math.sin(th)
    return np.array([st * math.cos(ph), st * math.sin(ph), math.cos(th)])


def sphere_chart(x3):
    """Chart coordinates of a unit vector in R^3."""
    z = min(1.0, max(-1.0, float(x3[2])))
    return np.array([math.acos(z), math.atan2(x3[1], x3[0]) % TWO_PI])


def sphere_tangent_frame(base, direction):
    """Embedded point and unit tangent for sphere chart data.

    Returns
    -------
    p3, v3 : ndarray
        Unit vectors in R^3 with p3 . v3 = 0; v3 realizes the coordinate
        direction (d theta, d phi).
    """
    th, ph = float(base[0]), float(base[1])
    p3 = sphere_embed(base)
    e_th = np.array([math.cos(th) * math.cos(ph), math.cos(th) * math.sin(ph), -math.sin(th)])
    e_ph = np.array([-math.sin(ph), math.cos(ph), 0.0])
    v3 = direction[0] * e_th + direction[1] * math.sin(th) * e_ph
    return p3, v3


def halfplane_geodesic_matrix(base, direction):
    """Frame matrix M sending the model geodesic s -> i*e^s to the given one.

    M acts by Moebius transformation on the upper half-plane, carries i to
    the base point, and rotates the upward direction onto the requested
    chart direction, so s -> M(i*e^s) is the unit-speed geodesic.
    """
    x, y = float(base[0]), float(base[1])
    alpha = math.atan2(direction[1], direction[0])
    half = 0.5 * (alpha - 0.5 * math.pi)
    c, s = math.cos(half), math.sin(half)
    rot = np.array([[c, s], [-s, c]])
    tri = np.array([[math.sqrt(y), x / math.sqrt(y)], [0.0, 1.0 / math.sqrt(y)]])
    return tri @ rot


def mobius_apply(m, z):
    """Apply a real 2x2 Moebius matrix to complex z (scalar or array)."""
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def mobius_inverse(m):
    """Inverse of a determinant-one 2x2 matrix."""
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def geodesic_point(model, seg, s):
    """Point of the unit-speed geodesic at arclength s.

    Parameters
    ----------
    model : ManifoldModel
    seg : GeodesicSegment
    s : float
        Arclength; values outside [0, seg.length] extend the geodesic.

    Returns
    -------
    ndarray
        Chart coordinates of the geodesic point.
    """
    _require_unit(model, seg)
    if model.kind == "flat_torus":
        return (seg.base + s * seg.direction) % TWO_PI
    if model.kind == "sphere":
        p3, v3 = sphere_tangent_frame(seg.base, seg.direction)
        return sphere_chart(math.cos(s) * p3 + math.sin(s) * v3)
    m = halfplane_geodesic_matrix(seg.base, seg.direction)
    z = mobius_apply(m, 1j * math.exp(s))
    return np.array([z.real, z.imag])


def _hyp_distance(zp, zq):
    """Hyperbolic distance between complex half-plane points (vectorized).

    Evaluates arccosh(1 + t) as log1p(t + sqrt(t(t + 2))), which stays
    accurate for nearby points where the naive form loses half the digits.
    """
    t = np.abs(zp - zq) ** 2 / (2.0 * zp.imag * zq.imag)
    return np.log1p(t + np.sqrt(t * (t + 2.0)))


def _orbit_images(orbit, z):
    """Images of the complex point z under an array of deck matrices."""
    return (orbit[:, 0, 0] * z + orbit[:, 0, 1]) / (orbit[:, 1, 0] * z + orbit[:, 1, 1])


def _quotient_distance(model, p, q):
    zp = complex(p[0], p[1])
    zq = complex(q[0], q[1])
    images = _orbit_images(model.deck_orbit, zq)
    dmin = float(np.min(_hyp_distance(np.full_like(images, zp), images)))
    base = complex(0.0, 1.0)
    reach = _hyp_distance(np.array([base]), np.array([zp]))[0]
    reach += _hyp_distance(np.array([base]), np.array([zq]))[0]
    certified = bool(dmin + reach <= model.orbit_radius + 1e-9)
    return dmin, certified


def quotient_distance_certificate(model, p, q):
    """Quotient distance with an explicit completeness certificate.

    The minimum over the enumerated orbit is certified to be the true
    quotient distance when no deck element outside the enumeration could
    move q closer to p, which holds exactly when
    d(i, p) + min + d(i, q) <= orbit_radius for the chart base point i.

    Returns
    -------
    QuotientDistance
    """
    if model.kind != "hyperbolic_quotient":
        raise ValueError("certificates only apply to the quotient model")
    p = check_point(model, p)
    q = check_point(model, q)
    dmin, certified = _quotient_distance(model, p, q)
    return QuotientDistance(dmin, certified)


def distance(model, p, q):
    """Riemannian distance between two chart points.

    Closed form on the sphere, torus, and hyperbolic plane.  On the
    quotient the distance is a minimum over the enumerated deck orbit and
    a QuotientCutoffWarning is issued when the enumeration cannot certify
    the minimum.

    Parameters
    ----------
    model : ManifoldModel
    p, q : array_like
        Chart points.

    Returns
    -------
    float
    """
    p = check_point(model, p)
    q = check_point(model, q)
    if model.kind == "sphere":
        p3, q3 = sphere_embed(p), sphere_embed(q)
        # atan2 form is accurate near both coincident and antipodal pairs
        return math.atan2(float(np.linalg.norm(np.cross(p3, q3))), float(p3 @ q3))
    if model.kind == "flat_torus":
        delta = p - q
        shifts = TWO_PI * np.array([(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)])
        return float(np.min(np.linalg.norm(delta + shifts, axis=1)))
    if model.kind == "hyperbolic_plane":
        zp, zq = complex(p[0], p[1]), complex(q[0], q[1])
        return float(_hyp_distance(np.array([zp]), np.array([zq]))[0])
    dmin, certified = _quotient_distance(model, p, q)
    if not certified:
        warnings.warn(
            "quotient distance not certified by the enumerated orbit; "
            "increase the enumeration cutoff",
            QuotientCutoffWarning,
            stacklevel=2,
        )
    return dmin


def _extended_line_distance_torus(p, seg):
    u = seg.direction
    delta = p - seg.base
    shifts = TWO_PI * np.array([(i, j) for i in range(-3, 4) for j in range(-3, 4)])
    d = delta + shifts
    cross = np.abs(d[:, 0] * u[1] - d[:, 1] * u[0])
    return float(np.min(cross))


def _extended_axis_distance(zs):
    """Distance from half-plane points to the imaginary axis (vectorized)."""
    return np.arcsinh(np.abs(zs.real) / zs.imag)


def distance_to_geodesic(model, p, seg, extended=False):
    """Distance from a point to a geodesic segment or its extension.

    Parameters
    ----------
    model : ManifoldModel
    p : array_like
        Chart point.
    seg : GeodesicSegment
    extended : bool
        When true the segment is treated as the complete geodesic through
        it (closed form per model); when false the distance is minimized
        over arclength in [0, seg.length] by a seeded golden-section
        search with tolerance 1e-10.

    Returns
    -------
    float

    Notes
    -----
    On the flat torus the extended geodesic is represented by the lattice
    translates of the chart line within a fixed window of three periods,
    which covers every tube-scale query; geodesics with irrational slope
    are dense, so a global extended distance would vanish identically.
    """
    p = check_point(model, p)
    _require_unit(model, seg)
    if extended:
        if model.kind == "flat_torus":
            return _extended_line_distance_torus(p, seg)
        if model.kind == "sphere":
            p3, v3 = sphere_tangent_frame(seg.base, seg.direction)
            normal = np.cross(p3, v3)
            dot = float(sphere_embed(p) @ normal)
            return abs(math.asin(min(1.0, max(-1.0, dot))))
        minv = mobius_inverse(halfplane_geodesic_matrix(seg.base, seg.direction))
        if model.kind == "hyperbolic_plane":
            z = mobius_apply(minv, complex(p[0], p[1]))
            return float(_extended_axis_distance(np.array([z]))[0])
        images = _orbit_images(model.deck_orbit, complex(p[0], p[1]))
        return float(np.min(_extended_axis_distance(mobius_apply(minv, images))))

    if model.kind == "hyperbolic_quotient":
        images = _orbit_images(model.deck_orbit, complex(p[0], p[1]))
        m = halfplane_geodesic_matrix(seg.base, seg.direction)

        def f(s):
            z = mobius_apply(m, 1j * math.exp(s))
            return float(np.min(_hyp_distance(images, np.full_like(images, z))))

    else:

        def f(s):
            return distance(model, p, geodesic_point(model, seg, s))

    return bracketed_min(f, 0.0, seg.length)[1]


def gauss_curvature_fd(model, p, h=1.0e-3):
    """Gauss curvature at p by finite differences of the chart metric.

    Uses the orthogonal-metric curvature formula with nested central
    differences of step h; accurate to O(h^2).  The point must stay at
    least 2*h inside the chart domain.  On the half-plane the step is
    scaled by the height y so the accuracy is scale invariant.
    """
    p = check_point(model, p)
    if model.kind in ("hyperbolic_plane", "hyperbolic_quotient"):
        h = h * p[1]

    def metric_entry(i, q):
        return metric_tensor(model, q)[i, i]

    def d0(f, q):
        e = np.array([h, 0.0])
        return (f(q + e) - f(q - e)) / (2.0 * h)

    def d1(f, q):
        e = np.array([0.0, h])
        return (f(q + e) - f(q - e)) / (2.0 * h)

    def term_u(q):
        eg = math.sqrt(metric_entry(0, q) * metric_entry(1, q))
        return d0(lambda r: metric_entry(1, r), q) / eg

    def term_v(q):
        eg = math.sqrt(metric_entry(0, q) * metric_entry(1, q))
        return d1(lambda r: metric_entry(0, r), q) / eg

    eg = math.sqrt(metric_entry(0, p) * metric_entry(1, p))
    return -(d0(term_u, p) + d1(term_v, p)) / (2.0 * eg)
