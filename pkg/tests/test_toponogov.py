"""Tests for cone apertures, hinge comparison, and containment checks."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from knlab.manifolds import ManifoldModel, distance_to_geodesic, geodesic_point, segment
from knlab.toponogov import (
    ConeDomainError,
    ConeSpec,
    UndefinedDirectionError,
    cone_half_angle,
    cone_spec,
    gradient_angle,
    hinge_comparison,
    isosceles_opposite_length,
    verify_cone_containment,
)

APERTURE_3_1 = 0.10408007399888043215
APERTURE_FLAT_3_1 = 0.33489615843937866111
ISOSCELES_2_PI6 = 1.6747149013910297342


def test_frozen_values_match_high_precision_oracles():
    mp = pytest.importorskip("mpmath").mp
    mp.dps = 40
    theta = 2 * mp.asin(mp.sinh(mp.mpf(1) / 2) / mp.sinh(3))
    assert abs(theta - mp.mpf("0.10408007399888043215")) < mp.mpf("1e-19")
    flat = 2 * mp.asin(mp.mpf(1) / 6)
    assert abs(flat - mp.mpf("0.33489615843937866111")) < mp.mpf("1e-19")
    iso = 2 * mp.asinh(mp.sin(mp.pi / 12) * mp.sinh(2))
    assert abs(iso - mp.mpf("1.6747149013910297342")) < mp.mpf("1e-18")


def test_cone_half_angle_values():
    assert_allclose(cone_half_angle(3.0, 1.0, 1.0), APERTURE_3_1, rtol=1e-15)
    assert_allclose(cone_half_angle(3.0, 1.0, 0.0), APERTURE_FLAT_3_1, rtol=1e-15)
    assert cone_half_angle(3.0, 0.0, 1.0) == 0.0


def test_cone_half_angle_euclidean_limit():
    drift = abs(cone_half_angle(3.0, 1.0, 1e-6) - cone_half_angle(3.0, 1.0, 0.0))
    assert drift <= 1e-9


def test_cone_half_angle_domain_errors():
    with pytest.raises(ConeDomainError):
        cone_half_angle(1.0, 10.0, 1.0)
    with pytest.raises(ConeDomainError):
        cone_half_angle(1.0, 3.0, 0.0)
    with pytest.raises(ValueError):
        cone_half_angle(0.0, 1.0)
    with pytest.raises(ValueError):
        cone_half_angle(1.0, -0.5)


def test_cone_spec_rejects_wide_tube():
    with pytest.raises(ConeDomainError):
        cone_spec(1.0, 10.0)
    spec = cone_spec(3.0, 1.0)
    assert spec.theta == cone_half_angle(3.0, 1.0, 1.0)
    assert 0.0 < spec.theta <= math.pi


def test_aperture_monotone_in_reach_and_radius():
    reaches = [1.5, 2.0, 3.0, 4.0, 6.0]
    radii = [0.25, 0.5, 1.0, 1.5]
    table = {(T, R): cone_half_angle(T, R) for T in reaches for R in radii}
    for R in radii:
        values = [table[(T, R)] for T in reaches]
        assert all(a > b for a, b in zip(values, values[1:]))
    for T in reaches:
        values = [table[(T, R)] for R in radii]
        assert all(a < b for a, b in zip(values, values[1:]))


def test_isosceles_inverts_aperture():
    for T in [1.5, 2.0, 3.0, 4.0, 6.0]:
        for R in [0.25, 0.5, 1.0, 1.5]:
            theta = cone_half_angle(T, R)
            assert_allclose(isosceles_opposite_length(T, theta), R, rtol=1e-12)
    assert isosceles_opposite_length(2.0, 0.0) == 0.0


def test_isosceles_matches_geodesic_shooting():
    assert_allclose(isosceles_opposite_length(2.0, math.pi / 6), ISOSCELES_2_PI6, rtol=1e-15)
    model = ManifoldModel.hyperbolic_plane()
    comp = hinge_comparison(model, (0.3, 1.7), 2.0, math.pi / 6)
    assert_allclose(comp.model_length, ISOSCELES_2_PI6, atol=1e-8)
    assert_allclose(comp.hyperbolic_length, ISOSCELES_2_PI6, rtol=1e-15)


def test_hinge_flat_model_is_exactly_euclidean():
    model = ManifoldModel.flat_torus()
    comp = hinge_comparison(model, (1.0, 2.5), 6.0, 0.7)
    assert_allclose(comp.model_length, comp.flat_length, atol=1e-10)
    assert_allclose(comp.flat_length, 12.0 * math.sin(0.35), rtol=1e-15)


def test_hinge_sphere_violates_flat_lower_bound():
    model = ManifoldModel.sphere()
    T, theta = 1.0, math.pi / 3
    comp = hinge_comparison(model, (1.1, 0.4), T, theta)
    oracle = math.acos(math.cos(T) ** 2 + math.sin(T) ** 2 * math.cos(theta))
    assert_allclose(comp.model_length, oracle, rtol=1e-10)
    assert comp.model_length < comp.flat_length - 1e-3


def test_hinge_sandwich_on_nonpositive_curvature():
    flat = ManifoldModel.flat_torus()
    hyp = ManifoldModel.hyperbolic_plane()
    for T in np.linspace(0.5, 3.0, 5):
        for theta in np.linspace(0.1, 2.5, 5):
            for model, apex in ((flat, (0.2, 0.9)), (hyp, (-0.4, 2.3))):
                comp = hinge_comparison(model, apex, T, theta)
                assert comp.flat_length <= comp.model_length + 1e-8
                assert comp.model_length <= comp.hyperbolic_length + 1e-8
            comp = hinge_comparison(hyp, (-0.4, 2.3), T, theta)
            assert_allclose(comp.model_length, comp.hyperbolic_length, rtol=1e-10)


def test_containment_hyperbolic_plane():
    model = ManifoldModel.hyperbolic_plane()
    seg = segment(model, (0.5, 1.2), (0.7, 0.3), 1.0)
    cone = cone_spec(3.0, 1.0)
    report = verify_cone_containment(model, seg, cone)
    assert report.violation_count == 0
    # extremal ray: perpendicular distance peaks at arclength T, below R
    oracle = math.asinh(math.sin(cone.theta) * math.sinh(cone.T)) - cone.R
    assert oracle < 0.0
    assert_allclose(report.max_excess, oracle, atol=1e-9)
    assert report.extremal_chord_gap <= 1e-12
    assert report.sample_count == 3 * 200 * 400


def test_containment_flat_lifted_plane():
    model = ManifoldModel.flat_torus()
    seg = segment(model, (0.3, 0.4), (2.0, 1.0), 1.0)
    cone = cone_spec(3.0, 1.0, kappa=0.0)
    report = verify_cone_containment(model, seg, cone)
    assert report.violation_count == 0
    oracle = cone.T * math.sin(cone.theta) - cone.R
    assert_allclose(report.max_excess, oracle, atol=1e-9)
    assert report.extremal_chord_gap <= 1e-15


def test_containment_sharpness_with_inflated_aperture():
    model = ManifoldModel.hyperbolic_plane()
    seg = segment(model, (0.0, 1.0), (0.0, 1.0), 1.0)
    base = cone_spec(3.0, 1.0)
    too_wide = ConeSpec(base.T, base.R, base.kappa, 1.5 * base.theta)
    report = verify_cone_containment(model, seg, too_wide)
    assert report.violation_count >= 1
    assert report.max_excess > 1e-6
    assert report.extremal_chord_gap > 1e-3


def test_containment_rejects_positive_curvature():
    model = ManifoldModel.sphere()
    seg = segment(model, (0.5 * math.pi, 0.0), (0.0, 1.0), 1.0)
    with pytest.raises(ValueError):
        verify_cone_containment(model, seg, cone_spec(1.0, 0.2))


def test_gradient_angle_on_axis_cases():
    model = ManifoldModel.hyperbolic_plane()
    axis = segment(model, (0.0, 1.0), (0.0, 1.0), 1.0)
    ahead = gradient_angle(model, (0.0, 1.0), (0.0, math.e), axis)
    assert_allclose(ahead.angle, 0.0, atol=1e-12)
    behind = gradient_angle(model, (0.0, 1.0), (0.0, 1.0 / math.e), axis)
    assert_allclose(behind.angle, 0.0, atol=1e-12)
    # unit-speed perpendicular through i is t -> (tanh t, sech t)
    sideways = gradient_angle(model, (0.0, 1.0), (math.tanh(1.0), 1.0 / math.cosh(1.0)), axis)
    assert_allclose(sideways.angle, 0.5 * math.pi, atol=1e-12)
    assert_allclose(sideways.chordal, math.sqrt(2.0), rtol=1e-12)


def test_gradient_angle_flat_cases():
    model = ManifoldModel.flat_torus()
    axis = segment(model, (0.0, 0.0), (1.0, 0.0), 1.0)
    assert_allclose(gradient_angle(model, (0.0, 0.0), (0.3, 0.0), axis).angle, 0.0, atol=1e-12)
    assert_allclose(
        gradient_angle(model, (0.0, 0.0), (6.0, 0.0), axis).angle, 0.0, atol=1e-12
    )
    quarter = gradient_angle(model, (0.0, 0.0), (0.0, 0.2), axis)
    assert_allclose(quarter.angle, 0.5 * math.pi, atol=1e-12)
    diag = gradient_angle(model, (0.0, 0.0), (0.3, 0.3), axis)
    assert_allclose(diag.angle, 0.25 * math.pi, atol=1e-12)
    assert_allclose(diag.chordal, 2.0 * math.sin(math.pi / 8), rtol=1e-12)


def test_gradient_angle_rejects_coincident_points():
    hyp = ManifoldModel.hyperbolic_plane()
    axis = segment(hyp, (0.0, 1.0), (0.0, 1.0), 1.0)
    with pytest.raises(UndefinedDirectionError):
        gradient_angle(hyp, (0.2, 1.5), (0.2, 1.5), axis)
    flat = ManifoldModel.flat_torus()
    flat_axis = segment(flat, (0.0, 0.0), (1.0, 0.0), 1.0)
    with pytest.raises(UndefinedDirectionError):
        gradient_angle(flat, (0.1, 0.2), (0.1 + 2.0 * math.pi, 0.2), flat_axis)


def test_gradient_angle_outside_tube_lower_bound():
    model = ManifoldModel.hyperbolic_plane()
    axis = segment(model, (0.0, 1.0), (0.0, 1.0), 1.0)
    T, R = 3.0, 1.0
    theta = cone_half_angle(T, R)
    floor = 2.0 * math.sin(0.5 * theta) * (1.0 - 1e-6)
    rng = np.random.default_rng(7)
    x = np.array([0.0, 1.0])
    accepted = 0
    while accepted < 1000:
        omega = rng.uniform(0.0, 2.0 * math.pi)
        s = rng.uniform(0.1, T)
        ray = segment(model, x, (math.cos(omega), math.sin(omega)), s)
        y = geodesic_point(model, ray, s)
        if distance_to_geodesic(model, y, axis, extended=True) <= R:
            continue
        accepted += 1
        result = gradient_angle(model, x, y, axis)
        assert result.chordal >= floor
