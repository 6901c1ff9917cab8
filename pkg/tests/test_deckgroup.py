import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from knlab.deckgroup import (
    CIRCUMRADIUS,
    SYSTOLE,
    DedupToleranceError,
    annulus_counts,
    ball_count,
    bolza_generators,
    displacement,
    dump_enumeration,
    enumerate_group,
    fundamental_domain_sample,
    mobius_element,
)
from knlab.manifolds import ManifoldModel, segment

BOLZA_SYSTOLE = 3.0571418389619963


def axis_segment():
    h2 = ManifoldModel.hyperbolic_plane()
    return segment(h2, (0.0, 1.0), (0.0, 1.0), 1.0)


def test_generators_are_valid():
    gens = bolza_generators()
    assert len(gens) == 8
    for g in gens:
        det = np.linalg.det(g.matrix)
        assert abs(det - 1.0) <= 1e-12
        assert_allclose(displacement(g), BOLZA_SYSTOLE, rtol=1e-14)
    for i in range(8):
        for j in range(i + 1, 8):
            assert np.abs(gens[i].matrix - gens[j].matrix).max() > 1.0


def test_octagon_relator_is_identity():
    g = [x.matrix for x in bolza_generators()[:4]]
    gi = [np.linalg.inv(x) for x in g]
    rel = g[0] @ gi[1] @ g[2] @ gi[3] @ gi[0] @ g[1] @ gi[2] @ g[3]
    assert np.abs(rel - np.eye(2)).max() <= 1e-11


def test_mobius_element_validation():
    with pytest.raises(ValueError):
        mobius_element(np.diag([2.0, 1.0]))
    el = mobius_element(-np.eye(2))
    assert el.matrix[0, 0] == 1.0


def test_displacement_examples():
    assert displacement(np.eye(2)) == 0.0
    for t in (0.7, 2.0):
        m = np.diag([math.exp(t / 2.0), math.exp(-t / 2.0)])
        assert_allclose(displacement(m), t, rtol=1e-13)
    g = bolza_generators()[1]
    assert_allclose(displacement(g), displacement(np.linalg.inv(g.matrix)), rtol=1e-13)


def test_small_enumerations():
    assert len(enumerate_group(0).elements) == 1
    enum1 = enumerate_group(1)
    assert enum1.counts_per_length == (1, 8)
    assert enum1.certified_radius == 0.0


def test_enumeration_counts_and_certificate():
    enum = enumerate_group(12)
    assert enum.certified_radius >= 8.0
    assert enum.counts_per_length == (1, 8, 56, 392, 2736, 14608, 28672, 25120, 13032, 3616, 592, 0)
    assert len(enum.elements) == 88833
    assert ball_count(enum, 8.0) == 793
    assert [ball_count(enum, r) for r in (4, 5, 6, 7, 8)] == [9, 49, 97, 265, 793]
    ratios = [
        enum.counts_per_length[k] / enum.counts_per_length[k - 1] for k in (2, 3, 4)
    ]
    for r in ratios:
        assert 4.0 < r <= 7.2
    assert_allclose(enum.diam_d, 2.0 * CIRCUMRADIUS, rtol=1e-13)


def test_certified_ball_matches_independent_enumeration():
    # oracle: plain dict dedup with a different canonicalization
    gens = [g.matrix for g in bolza_generators()]
    prune = 8.0 + CIRCUMRADIUS + 0.05

    def canon(m):
        flat = m.ravel()
        lead = flat[np.argmax(np.abs(flat))]
        return m if lead > 0 else -m

    def key(m):
        return tuple(np.round(m.ravel() * 1e5).astype(np.int64).tolist())

    mats = [np.eye(2)]
    seen = {key(canon(np.eye(2)))}
    frontier = [(np.eye(2), None)]
    for _ in range(10):
        new = []
        for m, last in frontier:
            if displacement(m) > prune:
                continue
            for gi in range(8):
                if last is not None and last == (gi + 4) % 8:
                    continue
                m2 = canon(m @ gens[gi])
                k2 = key(m2)
                if k2 in seen:
                    continue
                seen.add(k2)
                mats.append(m2)
                new.append((m2, gi))
        frontier = new
    oracle_ball = {
        key(canon(m)) for m in mats if displacement(m) <= 8.0
    }
    enum = enumerate_group(12)
    lib_ball = {
        key(canon(el.matrix))
        for el in enum.elements
        if displacement(el) <= 8.0
    }
    assert lib_ball == oracle_ball
    assert len(lib_ball) == 793


def test_dedup_tolerance_insensitive():
    a = enumerate_group(10, dedup_tol=1e-7)
    b = enumerate_group(10, dedup_tol=1e-9)
    assert a.counts_per_length == b.counts_per_length


def test_word_length_cap():
    with pytest.raises(ValueError):
        enumerate_group(17)


def test_displacement_subadditive_and_rotation_covariant():
    enum = enumerate_group(4)
    rng = np.random.default_rng(3)
    mats = enum.matrices
    idx = rng.integers(0, len(mats), size=(60, 2))
    for i, j in idx:
        a, b = mats[i], mats[j]
        assert displacement(b @ a) <= displacement(a) + displacement(b) + 1e-9
    for i in rng.integers(0, len(mats), size=30):
        ang = rng.uniform(0.0, math.pi)
        rot = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
        conj = rot @ mats[i] @ rot.T
        assert abs(displacement(conj) - displacement(mats[i])) <= 1e-9


def test_fundamental_domain_sample():
    samp = fundamental_domain_sample()
    assert len(samp.points) >= 200
    assert np.all(samp.points[:, 1] > 0.0)
    assert 0.1 < samp.mesh < 0.6
    # the eight octagon vertices sit at distance circumradius from i
    z = samp.points[:, 0] + 1j * samp.points[:, 1]
    d = np.arccosh(1.0 + np.abs(z - 1j) ** 2 / (2.0 * z.imag))
    vertex_count = int((np.abs(d - CIRCUMRADIUS) < 1e-9).sum())
    assert vertex_count == 8


def test_annulus_counts_on_axis():
    enum = enumerate_group(12)
    table = annulus_counts(enum, axis_segment(), 1.0)
    assert table.certified
    assert table.ks == (0, 1, 2)
    assert table.all_counts == (0, 8, 784)
    assert table.tube_counts == (0, 6, 14)
    for a, t in zip(table.all_counts, table.tube_counts):
        assert t <= a
    # O(2^k) shape: linear fit of log tube_count against k log 2
    slope = math.log2(table.tube_counts[2] / table.tube_counts[1])
    assert slope <= 1.3
    # exponential growth of total counts in the radius
    radii = np.arange(4.0, 8.5, 1.0)
    counts = np.array([ball_count(enum, r) for r in radii])
    fit = np.polyfit(radii, np.log(counts), 1)
    pred = np.polyval(fit, radii)
    resid = np.log(counts) - pred
    r2 = 1.0 - resid.var() / np.log(counts).var()
    assert fit[0] > 0.0
    assert r2 > 0.9


def test_annulus_counts_partial_flag():
    enum = enumerate_group(4)
    table = annulus_counts(enum, axis_segment(), 1.0)
    assert not table.certified


def test_dump_enumeration(tmp_path):
    enum = enumerate_group(2)
    path = tmp_path / "elements.txt"
    dump_enumeration(enum, path)
    lines = path.read_text().splitlines()
    assert lines[0].split() == ["word", "m00", "m01", "m10", "m11", "displacement"]
    assert len(lines) == 1 + len(enum.elements)
    first = lines[1].split()
    assert first[0] == "e"
    assert float(first[-1]) == 0.0
    row = lines[2].split()
    m = np.array([float(x) for x in row[1:5]]).reshape(2, 2)
    assert_allclose(displacement(m), float(row[5]), rtol=1e-12)
