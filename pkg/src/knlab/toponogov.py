"""Cone apertures, hinge comparison, and cone-into-tube certification.

The aperture formula couples a tube radius R and a reach T through
sin(theta/2) = sinh(kappa R/2)/sinh(kappa T) on curvature -kappa^2, with
the Euclidean limit sin(theta/2) = R/(2T).  Geodesic cones of that
aperture shot from points of a complete geodesic stay inside the
radius-R tube on nonpositively curved models; the module certifies this
by sampling and also solves the isosceles hinge whose opposite side
realizes the aperture's defining identity: two sides T meeting at angle
theta have opposite side exactly R.

The perpendicular distance of the boundary ray never reaches R (its
supremum is arcsinh(sin(theta) sinh(T)) < R); what equals R exactly is
the chord from the boundary-ray endpoint to the matching point of the
geodesic.  Containment reports expose that chord identity as
extremal_chord_gap next to the strictly negative max_excess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .manifolds import (
    chart_norm,
    distance,
    geodesic_point,
    halfplane_geodesic_matrix,
    mobius_apply,
    mobius_inverse,
    segment,
)


class ConeDomainError(ValueError):
    """Tube radius too wide for the requested reach."""


class UndefinedDirectionError(ValueError):
    """No direction between coincident points."""


@dataclass(frozen=True)
class ConeSpec:
    """Cone data: reach T, tube radius R, curvature scale kappa, aperture."""

    T: float
    R: float
    kappa: float
    theta: float


@dataclass(frozen=True)
class HingeComparison:
    """Opposite side of a two-sides-T hinge in three geometries."""

    model_length: float
    hyperbolic_length: float
    flat_length: float


@dataclass(frozen=True)
class ContainmentReport:
    """Sampling record of a cone-into-tube check."""

    max_excess: float
    violation_count: int
    extremal_chord_gap: float
    sample_count: int


@dataclass(frozen=True)
class GradientAngle:
    """Angle to the transported axis direction and its chordal version."""

    angle: float
    chordal: float


def cone_half_angle(T, R, kappa=1.0):
    """Aperture of the cone guaranteed to stay in the radius-R tube.

    Parameters
    ----------
    T : float
        Reach of the cone, > 0.
    R : float
        Tube radius, >= 0.
    kappa : float
        Curvature lower-bound scale (sectional curvature >= -kappa^2);
        kappa = 0 gives the Euclidean limit 2*arcsin(R / (2T)).

    Returns
    -------
    float
        theta = 2*arcsin(sinh(kappa R / 2) / sinh(kappa T)).

    Raises
    ------
    ConeDomainError
        If the arcsine argument exceeds one (tube wider than reachable).
    """
    if T <= 0.0:
        raise ValueError("reach T must be positive")
    if R < 0.0:
        raise ValueError("radius R must be nonnegative")
    if kappa < 0.0:
        raise ValueError("curvature scale must be nonnegative")
    if kappa == 0.0:
        arg = R / (2.0 * T)
    else:
        arg = math.sinh(0.5 * kappa * R) / math.sinh(kappa * T)
    if arg > 1.0:
        raise ConeDomainError("tube of radius %g not reachable within %g" % (R, T))
    return 2.0 * math.asin(arg)


def cone_spec(T, R, kappa=1.0):
    """ConeSpec with the aperture computed and validated."""
    return ConeSpec(float(T), float(R), float(kappa), cone_half_angle(T, R, kappa))


def isosceles_opposite_length(T, theta):
    """Opposite side of the hyperbolic isosceles hinge (sides T, apex theta).

    The hyperbolic law of sines gives sinh(l/2) = sin(theta/2) * sinh(T),
    so this inverts cone_half_angle: the hinge at the computed aperture
    has opposite side exactly R.
    """
    if T <= 0.0:
        raise ValueError("side length must be positive")
    if not 0.0 <= theta <= math.pi:
        raise ValueError("apex angle must lie in [0, pi]")
    return 2.0 * math.asinh(math.sin(0.5 * theta) * math.sinh(T))


def _frame_direction(model, base, chart_angle):
    """Unit chart direction at base whose metric angle from the first
    orthonormal frame vector equals chart_angle."""
    if model.kind == "sphere":
        v = np.array([math.cos(chart_angle), math.sin(chart_angle) / math.sin(base[0])])
    else:
        v = np.array([math.cos(chart_angle), math.sin(chart_angle)])
    return v / chart_norm(model, base, v)


def hinge_comparison(model, apex, side_length, apex_angle):
    """Third side of a hinge against its flat and hyperbolic comparisons.

    Shoots two unit-speed geodesics of length side_length from apex with
    angle apex_angle between them and measures the endpoint distance; on
    the flat torus the hinge is computed in the lifted plane, without
    wraparound.

    Returns
    -------
    HingeComparison
        model_length, the hyperbolic comparison
        isosceles_opposite_length(T, theta), and the flat comparison
        2 T sin(theta / 2).
    """
    T = float(side_length)
    theta = float(apex_angle)
    flat = 2.0 * T * math.sin(0.5 * theta)
    hyp = isosceles_opposite_length(T, theta)
    apex = np.asarray(apex, dtype=float)
    if model.kind == "flat_torus":
        ends = [apex + T * np.array([math.cos(a), math.sin(a)]) for a in (0.0, theta)]
        value = float(np.linalg.norm(ends[0] - ends[1]))
    else:
        ends = []
        for a in (0.0, theta):
            seg = segment(model, apex, _frame_direction(model, apex, a), T)
            ends.append(geodesic_point(model, seg, T))
        value = distance(model, ends[0], ends[1])
    return HingeComparison(value, hyp, flat)


def _halfplane_ray_distances(seg, t0, angles, arclengths):
    """Distances to the extended geodesic of seg from ray samples.

    Rays start at the geodesic point at arclength t0 and make the given
    angles with the geodesic direction; result has shape
    (len(angles), len(arclengths)).
    """
    frame = halfplane_geodesic_matrix(seg.base, seg.direction)
    minv = mobius_inverse(frame)
    vertex_scale = np.array([[math.exp(0.5 * t0), 0.0], [0.0, math.exp(-0.5 * t0)]])
    w = 1j * np.exp(arclengths)
    out = np.empty((len(angles), len(arclengths)))
    for i, alpha in enumerate(angles):
        half = -0.5 * alpha
        rot = np.array([[math.cos(half), math.sin(half)], [-math.sin(half), math.cos(half)]])
        ray = frame @ vertex_scale @ rot
        z = mobius_apply(minv, mobius_apply(ray, w))
        out[i] = np.arcsinh(np.abs(z.real) / z.imag)
    return out


def verify_cone_containment(model, seg, cone, angle_count=200, step_count=400):
    """Sample geodesic cones along a geodesic and test tube containment.

    From each of the three vertices at arclength 0, 1/2, and 1 along seg,
    rays are shot at angle_count angles uniformly in [0, theta], sampled
    at step_count arclengths up to T; each sample reports its distance to
    the extended geodesic minus R.

    Parameters
    ----------
    model : ManifoldModel
        Flat torus (lifted to the plane) or hyperbolic plane.
    seg : GeodesicSegment
    cone : ConeSpec
    angle_count, step_count : int

    Returns
    -------
    ContainmentReport
        max_excess over all samples, the count exceeding 1e-6, the
        extremal chord identity gap, and the number of samples.
    """
    if model.kind not in ("flat_torus", "hyperbolic_plane"):
        raise ValueError("containment check needs curvature in [-kappa^2, 0]")
    angles = np.linspace(0.0, cone.theta, int(angle_count))
    arclengths = np.linspace(cone.T / int(step_count), cone.T, int(step_count))
    excess_max = -math.inf
    violations = 0
    for t0 in (0.0, 0.5, 1.0):
        if model.kind == "hyperbolic_plane":
            d = _halfplane_ray_distances(seg, t0, angles, arclengths)
        else:
            base = np.asarray(seg.base, dtype=float)
            u = np.asarray(seg.direction, dtype=float)
            vertex = base + t0 * u
            cos_a = np.cos(angles)[:, None]
            sin_a = np.sin(angles)[:, None]
            dirs = np.stack([cos_a * u[0] - sin_a * u[1], cos_a * u[1] + sin_a * u[0]], axis=-1)
            pts = vertex[None, None, :] + arclengths[None, :, None] * dirs[:, None, :]
            rel = pts - base[None, None, :]
            d = np.abs(rel[..., 0] * u[1] - rel[..., 1] * u[0])
        excess = d - cone.R
        excess_max = max(excess_max, float(excess.max()))
        violations += int((excess > 1e-6).sum())
    if cone.kappa == 0.0:
        chord = 2.0 * cone.T * math.sin(0.5 * cone.theta)
    else:
        chord = isosceles_opposite_length(cone.kappa * cone.T, cone.theta) / cone.kappa
    return ContainmentReport(
        max_excess=excess_max,
        violation_count=violations,
        extremal_chord_gap=abs(chord - cone.R),
        sample_count=3 * len(angles) * len(arclengths),
    )


def _wrap_angle(a):
    a = abs(math.remainder(a, 2.0 * math.pi))
    return a


def gradient_angle(model, x, y, axis):
    """Angle between the geodesic toward y and the transported axis direction.

    The axis direction is carried to x along the perpendicular foot; on
    the half-plane with the axis conjugated to the imaginary axis this
    transported field is tangent to the rays through the origin.  The
    angle is minimized over the two axis orientations.

    Parameters
    ----------
    model : ManifoldModel
        Hyperbolic plane or flat torus.
    x, y : array_like
        Distinct chart points.
    axis : GeodesicSegment
        Treated as a complete geodesic.

    Returns
    -------
    GradientAngle
        angle in [0, pi/2] and the chordal quantity 2 sin(angle / 2),
        the minimum over signs of |v/|v| +- axis direction|.

    Raises
    ------
    UndefinedDirectionError
        If x and y coincide.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if model.kind == "flat_torus":
        shifts = 2.0 * math.pi * np.array([(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)])
        deltas = (y % (2.0 * math.pi)) - (x % (2.0 * math.pi)) + shifts
        delta = deltas[np.argmin(np.linalg.norm(deltas, axis=1))]
        if np.linalg.norm(delta) < 1e-12:
            raise UndefinedDirectionError("coincident points have no direction")
        beta = math.atan2(delta[1], delta[0])
        rho = math.atan2(axis.direction[1], axis.direction[0])
    elif model.kind == "hyperbolic_plane":
        minv = mobius_inverse(halfplane_geodesic_matrix(axis.base, axis.direction))
        zx = mobius_apply(minv, complex(x[0], x[1]))
        zy = mobius_apply(minv, complex(y[0], y[1]))
        if abs(zx - zy) < 1e-14 * max(1.0, abs(zx)):
            raise UndefinedDirectionError("coincident points have no direction")
        if abs(zx.real - zy.real) < 1e-14 * (abs(zx) + abs(zy)):
            beta = 0.5 * math.pi if zy.imag > zx.imag else -0.5 * math.pi
        else:
            center = (abs(zy) ** 2 - abs(zx) ** 2) / (2.0 * (zy.real - zx.real))
            tangent = np.array([zx.imag, center - zx.real])
            if zy.real < zx.real:
                tangent = -tangent
            beta = math.atan2(tangent[1], tangent[0])
        rho = math.atan2(zx.imag, zx.real)
    else:
        raise ValueError("gradient angle implemented on nonpositive curvature models")
    a = _wrap_angle(beta - rho)
    if a > math.pi:
        a = 2.0 * math.pi - a
    angle = min(a, math.pi - a)
    return GradientAngle(angle, 2.0 * math.sin(0.5 * angle))
