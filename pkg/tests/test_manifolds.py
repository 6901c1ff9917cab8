import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from knlab.manifolds import (
    ChartDomainError,
    GeodesicSegment,
    ManifoldModel,
    UnitSpeedError,
    chart_norm,
    distance,
    distance_to_geodesic,
    gauss_curvature_fd,
    geodesic_point,
    segment,
)

ARCSINH_ONE = 0.88137358701954302523


def base_models():
    return [
        ManifoldModel.sphere(),
        ManifoldModel.flat_torus(),
        ManifoldModel.hyperbolic_plane(),
    ]


def random_point(model, rng):
    if model.kind == "sphere":
        return np.array([math.acos(rng.uniform(-0.98, 0.98)), rng.uniform(0.0, 2.0 * math.pi)])
    if model.kind == "flat_torus":
        return rng.uniform(0.0, 2.0 * math.pi, size=2)
    return np.array([rng.uniform(-2.0, 2.0), math.exp(rng.uniform(-1.5, 1.5))])


def random_segment(model, rng, length=None):
    base = random_point(model, rng)
    direction = rng.normal(size=2)
    if length is None:
        length = model.segment_length
    return segment(model, base, direction, length)


def test_torus_geodesic_is_straight_line():
    model = ManifoldModel.flat_torus()
    seg = segment(model, (0.0, 0.0), (1.0, 0.0), 1.0)
    assert_allclose(geodesic_point(model, seg, math.pi / 2.0), [math.pi / 2.0, 0.0], atol=1e-15)


def test_halfplane_vertical_geodesic():
    model = ManifoldModel.hyperbolic_plane()
    seg = segment(model, (0.0, 1.0), (0.0, 1.0), 2.0)
    for t in [0.0, 0.5, 1.0, 1.7]:
        assert_allclose(geodesic_point(model, seg, t), [0.0, math.exp(t)], atol=1e-13)


def test_sphere_great_circle_closes():
    model = ManifoldModel.sphere()
    seg = segment(model, (math.pi / 2.0, 0.3), (0.0, 1.0), 1.0)
    assert_allclose(geodesic_point(model, seg, 2.0 * math.pi), [math.pi / 2.0, 0.3], atol=1e-12)


def test_distance_examples():
    h2 = ManifoldModel.hyperbolic_plane()
    assert_allclose(distance(h2, (0.0, 1.0), (0.0, math.e)), 1.0, rtol=1e-14)
    torus = ManifoldModel.flat_torus()
    assert_allclose(distance(torus, (0.0, 0.0), (2.0 * math.pi - 0.1, 0.0)), 0.1, atol=1e-12)
    sphere = ManifoldModel.sphere()
    assert_allclose(distance(sphere, (0.0, 0.0), (math.pi, 0.0)), math.pi, rtol=1e-14)


def test_distance_to_axis_matches_brute_force():
    # oracle: dense sampling of the imaginary axis
    model = ManifoldModel.hyperbolic_plane()
    p = np.array([1.0, 1.0])
    ts = np.linspace(-3.0, 3.0, 200001)
    brute = min(distance(model, p, (0.0, math.exp(t))) for t in ts)
    axis = segment(model, (0.0, 1.0), (0.0, 1.0), 1.0)
    value = distance_to_geodesic(model, p, axis, extended=True)
    assert_allclose(value, brute, atol=1e-9)
    assert_allclose(value, ARCSINH_ONE, rtol=1e-14)


def test_torus_flat_normal_distance():
    model = ManifoldModel.flat_torus()
    seg = segment(model, (0.0, 0.0), (1.0, 0.0), 2.0)
    assert_allclose(distance_to_geodesic(model, (1.0, 0.3), seg, extended=True), 0.3, atol=1e-12)
    assert_allclose(distance_to_geodesic(model, (1.0, 0.3), seg, extended=False), 0.3, atol=1e-9)


def test_point_on_geodesic_distance_zero():
    rng = np.random.default_rng(7)
    for model in base_models():
        seg = random_segment(model, rng)
        p = geodesic_point(model, seg, 0.5 * seg.length)
        assert distance_to_geodesic(model, p, seg, extended=True) <= 1e-9
        assert distance_to_geodesic(model, p, seg, extended=False) <= 1e-9


def test_distance_symmetry():
    rng = np.random.default_rng(11)
    for model in base_models():
        for _ in range(1000):
            p, q = random_point(model, rng), random_point(model, rng)
            assert abs(distance(model, p, q) - distance(model, q, p)) <= 1e-12


def test_triangle_inequality():
    rng = np.random.default_rng(13)
    for model in base_models():
        for _ in range(1000):
            p, q, r = (random_point(model, rng) for _ in range(3))
            assert distance(model, p, q) <= distance(model, p, r) + distance(model, r, q) + 1e-10


def test_unit_speed():
    rng = np.random.default_rng(17)
    for model in base_models():
        cap = min(model.injectivity_radius, 2.0)
        for _ in range(50):
            seg = random_segment(model, rng, length=cap)
            s, t = sorted(rng.uniform(0.0, 0.95 * cap, size=2))
            gap = distance(model, geodesic_point(model, seg, s), geodesic_point(model, seg, t))
            assert abs(gap - (t - s)) <= 1e-9


def test_gauss_curvature_matches_constant():
    rng = np.random.default_rng(19)
    for model in base_models():
        for _ in range(20):
            p = random_point(model, rng)
            assert abs(gauss_curvature_fd(model, p) - model.curvature) <= 1e-4


def test_segment_normalizes_direction():
    rng = np.random.default_rng(23)
    for model in base_models():
        p = random_point(model, rng)
        seg = segment(model, p, (0.4, -2.2), 1.0)
        assert abs(chart_norm(model, seg.base, seg.direction) - 1.0) <= 1e-12


def test_segment_rejects_bad_input():
    model = ManifoldModel.hyperbolic_plane()
    with pytest.raises(UnitSpeedError):
        segment(model, (0.0, 1.0), (0.0, 0.0), 1.0)
    with pytest.raises(ChartDomainError):
        segment(model, (0.0, -1.0), (0.0, 1.0), 1.0)
    with pytest.raises(ChartDomainError):
        segment(ManifoldModel.sphere(), (4.0, 0.0), (1.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        segment(model, (0.0, 1.0), (0.0, 1.0), -1.0)


def test_geodesic_point_requires_unit_direction():
    model = ManifoldModel.flat_torus()
    seg = GeodesicSegment(np.zeros(2), np.array([2.0, 0.0]), 1.0)
    with pytest.raises(UnitSpeedError):
        geodesic_point(model, seg, 0.1)


def test_sphere_extended_distance_is_band_colatitude():
    model = ManifoldModel.sphere()
    equator = segment(model, (math.pi / 2.0, 0.0), (0.0, 1.0), 1.0)
    for colat in [0.3, 1.0, 1.5]:
        value = distance_to_geodesic(model, (colat, 2.0), equator, extended=True)
        assert_allclose(value, abs(math.pi / 2.0 - colat), atol=1e-12)


def quotient_random_point(rng):
    # stay within the certified neighbourhood of the chart base point
    angle = rng.uniform(0.0, 2.0 * math.pi)
    r = rng.uniform(0.0, 1.2)
    w = math.tanh(0.5 * r) * complex(math.cos(angle), math.sin(angle))
    z = 1j * (1.0 + w) / (1.0 - w)
    return np.array([z.real, z.imag])


def test_quotient_deck_images_are_identified():
    from knlab.deckgroup import bolza_generators

    model = ManifoldModel.hyperbolic_quotient()
    p = np.array([0.3, 1.2])
    for g in bolza_generators()[:4]:
        z = complex(p[0], p[1])
        image = (g.matrix[0, 0] * z + g.matrix[0, 1]) / (g.matrix[1, 0] * z + g.matrix[1, 1])
        assert distance(model, p, (image.real, image.imag)) <= 1e-9


def test_quotient_distance_below_plane_distance():
    model = ManifoldModel.hyperbolic_quotient()
    plane = ManifoldModel.hyperbolic_plane()
    rng = np.random.default_rng(29)
    for _ in range(100):
        p, q = quotient_random_point(rng), quotient_random_point(rng)
        assert distance(model, p, q) <= distance(plane, p, q) + 1e-12


def test_quotient_metric_properties():
    model = ManifoldModel.hyperbolic_quotient()
    rng = np.random.default_rng(31)
    for _ in range(200):
        p, q = quotient_random_point(rng), quotient_random_point(rng)
        assert abs(distance(model, p, q) - distance(model, q, p)) <= 1e-12
    for _ in range(200):
        p, q, r = (quotient_random_point(rng) for _ in range(3))
        assert distance(model, p, q) <= distance(model, p, r) + distance(model, r, q) + 1e-10
    for _ in range(20):
        seg = segment(model, quotient_random_point(rng), rng.normal(size=2), model.segment_length)
        s, t = sorted(rng.uniform(0.0, model.segment_length, size=2))
        gap = distance(model, geodesic_point(model, seg, s), geodesic_point(model, seg, t))
        assert abs(gap - (t - s)) <= 1e-9
        assert abs(gauss_curvature_fd(model, seg.base) + 1.0) <= 1e-4


def test_quotient_systole_loop_closes():
    model = ManifoldModel.hyperbolic_quotient()
    systole = 2.0 * math.acosh(1.0 + math.sqrt(2.0))
    assert distance(model, (0.0, 1.0), (0.0, math.exp(systole))) <= 1e-9
    half = distance(model, (0.0, 1.0), (0.0, math.exp(0.5 * systole)))
    assert_allclose(half, 0.5 * systole, rtol=1e-12)


def test_quotient_certificate_flags_far_pairs():
    from knlab.manifolds import QuotientCutoffWarning, quotient_distance_certificate

    model = ManifoldModel.hyperbolic_quotient()
    near = quotient_distance_certificate(model, (0.3, 1.2), (-0.4, 0.8))
    assert near.certified
    far_p, far_q = (0.0, math.exp(4.0)), (0.0, math.exp(-4.0))
    far = quotient_distance_certificate(model, far_p, far_q)
    assert not far.certified
    with pytest.warns(QuotientCutoffWarning):
        distance(model, far_p, far_q)


def test_quotient_geodesic_distance_uses_orbit():
    from knlab.deckgroup import bolza_generators

    model = ManifoldModel.hyperbolic_quotient()
    axis = segment(model, (0.0, 1.0), (0.0, 1.0), model.segment_length)
    g = bolza_generators()[2].matrix
    z = complex(0.0, math.exp(0.07))
    image = (g[0, 0] * z + g[0, 1]) / (g[1, 0] * z + g[1, 1])
    assert distance_to_geodesic(model, (image.real, image.imag), axis, extended=True) <= 1e-9
    assert distance_to_geodesic(model, (image.real, image.imag), axis, extended=False) <= 1e-8
