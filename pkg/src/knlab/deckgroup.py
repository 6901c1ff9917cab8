"""Deck-transformation enumeration for a compact hyperbolic surface.

The fixed group is the genus-two octagon group: four hyperbolic
translations of equal displacement 2*arccosh(1 + sqrt(2)) whose axes pass
through the half-plane base point i at angles spaced pi/4 apart,

    g_k = rot(k*pi/8) @ diag(e^{s/2}, e^{-s/2}) @ rot(k*pi/8).T,

with cosh(s/2) = 1 + sqrt(2) and rot a real rotation matrix (which acts
on the half-plane as a rotation about i by twice its angle).  The single
defining relation g0 g1' g2 g3' g0' g1 g2' g3 = 1 (primes are inverses)
holds to machine precision.

Enumeration is a breadth-first word expansion with free reduction,
matrix-level deduplication, and displacement pruning.  Pruning at
displacement P still finds every element with displacement at most
P - circumradius(D): the translate chain along the geodesic from the
base point i to alpha(i) crosses fundamental domains whose translates all
stay within circumradius of that geodesic, so every prefix of the chain
word has displacement at most d(i, alpha(i)) + circumradius and is never
pruned.  The enumeration is certified when it terminates with no
extendable frontier, which makes the recorded set closed under extension.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .manifolds import halfplane_geodesic_matrix, mobius_inverse

SYSTOLE = 2.0 * math.acosh(1.0 + math.sqrt(2.0))
INRADIUS = math.acosh(1.0 + math.sqrt(2.0))
CIRCUMRADIUS = math.acosh(3.0 + 2.0 * math.sqrt(2.0))

_GRID = 1e-6
_LETTERS = "abcdABCD"


class DedupToleranceError(RuntimeError):
    """Two distinct enumerated elements collide at the dedup tolerance."""


@dataclass(frozen=True)
class MobiusElement:
    """Determinant-one real matrix acting on the half-plane, with its word.

    The stored matrix is the sign-normalized representative: the first
    entry larger than 1e-9 in magnitude is positive.  The word is the
    sequence of generator indices that produced the element; indices 0-3
    are the generators, 4-7 their inverses.
    """

    matrix: np.ndarray
    word: tuple


@dataclass(frozen=True)
class DomainSample:
    """Point sample of the Dirichlet fundamental domain at base point i.

    points holds half-plane chart coordinates, shape (n, 2); mesh is an
    upper bound for the covering radius of the sample inside the domain,
    used as the one-sided slack of superset tube tests.
    """

    points: np.ndarray
    mesh: float


@dataclass(frozen=True)
class AnnulusCounts:
    """Per-annulus totals and tube-meeting counts.

    Annulus k collects elements with displacement in [2^k, 2^(k+1)).
    tube_counts are superset counts: an element is counted when any
    sample point of the fundamental domain lands within radius + slack
    of the extended geodesic.  certified reports whether the enumeration
    ball of radius 2^(k_max+1) was complete.
    """

    ks: tuple
    all_counts: tuple
    tube_counts: tuple
    radius: float
    slack: float
    certified: bool


def _canonical(m):
    for x in m.ravel():
        if abs(x) > 1e-9:
            return np.array(m) if x > 0 else -np.array(m)
    return np.array(m)


def mobius_element(matrix, word=()):
    """Validated, sign-normalized MobiusElement from a matrix.

    Raises
    ------
    ValueError
        If the determinant differs from one by more than 1e-10.
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (2, 2):
        raise ValueError("a Moebius element is a 2x2 matrix")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1.0) > 1e-10:
        raise ValueError("determinant must equal one within 1e-10")
    return MobiusElement(_canonical(m), tuple(word))


def bolza_generators():
    """The eight octagon translations: four generators, then inverses."""
    c = 1.0 + math.sqrt(2.0)
    s = math.sqrt(c * c - 1.0)
    axis = np.diag([c + s, c - s])
    gens = []
    for k in range(4):
        a = k * math.pi / 8.0
        rot = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
        gens.append(rot @ axis @ rot.T)
    gens += [mobius_inverse(g) for g in gens]
    return [mobius_element(g, (i,)) for i, g in enumerate(gens)]


def displacement(alpha):
    """Hyperbolic displacement d(i, alpha(i)) of the base point.

    Accepts a MobiusElement or a raw 2x2 matrix; for entries (a, b; c, d)
    the displacement satisfies cosh d = (a^2 + b^2 + c^2 + d^2) / 2.
    """
    m = alpha.matrix if isinstance(alpha, MobiusElement) else np.asarray(alpha, float)
    return math.acosh(max(1.0, float((m * m).sum()) / 2.0))


@dataclass(frozen=True)
class GroupEnumeration:
    """Deduplicated group elements up to a word length.

    Attributes
    ----------
    generators : tuple of MobiusElement
    elements : tuple of MobiusElement
        All recorded elements; complete and inverse-closed within
        certified_radius, with a partial tail beyond it.
    diam_d : float
        Diameter of the fundamental domain, from the regular-octagon
        relation cosh(circumradius) = cosh(min displacement / 2)^2.
    counts_per_length : tuple of int
        New elements found at each word length, starting at length 0.
    certified_radius : float
        Displacement radius up to which the element list is certified
        complete; 0 when the enumeration hit the word-length cap with an
        extendable frontier.
    prune_bound : float
        Displacement beyond which words were not extended.
    """

    generators: tuple
    elements: tuple
    diam_d: float
    counts_per_length: tuple
    certified_radius: float
    prune_bound: float

    @cached_property
    def matrices(self):
        """All element matrices, shape (n, 2, 2)."""
        return np.array([e.matrix for e in self.elements])

    @cached_property
    def displacements(self):
        """All element displacements, shape (n,)."""
        m = self.matrices
        return np.arccosh(np.maximum(1.0, (m * m).sum(axis=(1, 2)) / 2.0))


def _dedup_keys(m):
    scaled = m.ravel() / _GRID
    base = np.round(scaled)
    frac = scaled - base
    options = []
    for b, f in zip(base.astype(np.int64), frac):
        if f > 0.5 - 1e-2:
            options.append((int(b), int(b) + 1))
        elif f < -0.5 + 1e-2:
            options.append((int(b), int(b) - 1))
        else:
            options.append((int(b),))
    if all(len(o) == 1 for o in options):
        return [tuple(o[0] for o in options)]
    return list(itertools.product(*options))


class _Dedup:
    def __init__(self, tol):
        self.tol = tol
        self.table = {}

    def register(self, mats, m):
        """Index of a duplicate of m in mats, or None after registering m."""
        keys = _dedup_keys(m)
        hits = {i for k in keys for i in self.table.get(k, ())}
        for idx in hits:
            gap = float(np.abs(m - mats[idx]).max())
            if gap <= self.tol:
                if abs(displacement(m) - displacement(mats[idx])) > 1e-9:
                    raise DedupToleranceError(
                        "matrices agree within tolerance but displacements differ"
                    )
                return idx
            raise DedupToleranceError(
                "distinct elements %.3e apart inside the dedup grid; retune" % gap
            )
        idx = len(mats)
        for k in keys:
            self.table.setdefault(k, []).append(idx)
        return None


def _inverse_word(word):
    return tuple((g + 4) % 8 for g in reversed(word))


def enumerate_group(word_length=12, generators=None, target_radius=8.0, dedup_tol=1e-7):
    """Breadth-first enumeration of the deck group up to a word length.

    Words are freely reduced, deduplicated at matrix level, and pruned
    once their displacement exceeds target_radius + circumradius + slack;
    by the translate-chain argument this loses nothing within
    target_radius.  Each new element is recorded together with its
    inverse, so the element list is inverse-closed.

    Parameters
    ----------
    word_length : int
        Maximum word length, at most 16.
    generators : sequence of MobiusElement, optional
        Defaults to the octagon generators; index i + 4 must invert i.
    target_radius : float
        Displacement radius the enumeration is asked to certify.
    dedup_tol : float
        Matrix distance below which two words are the same element.

    Returns
    -------
    GroupEnumeration

    Raises
    ------
    ValueError
        If word_length exceeds 16 or a generator is not determinant-one.
    DedupToleranceError
        If two words land in the ambiguity band of the tolerance.
    """
    if word_length > 16:
        raise ValueError("word length capped at 16")
    if generators is None:
        return _cached_enumeration(int(word_length), float(target_radius), float(dedup_tol))
    return _enumerate(word_length, generators, target_radius, dedup_tol)


@lru_cache(maxsize=8)
def _cached_enumeration(word_length, target_radius, dedup_tol):
    return _enumerate(word_length, bolza_generators(), target_radius, dedup_tol)


def _enumerate(word_length, generators, target_radius, dedup_tol):
    generators = [mobius_element(g.matrix, g.word) for g in generators]
    if len(generators) != 8:
        raise ValueError("expected four generators and their inverses")
    ell = min(displacement(g) for g in generators)
    circumradius = math.acosh(math.cosh(0.5 * ell) ** 2)
    diam_d = 2.0 * circumradius
    prune = target_radius + circumradius + 0.05

    gen_mats = [g.matrix for g in generators]
    dedup = _Dedup(dedup_tol)
    mats = []
    words = []

    def record(m, word, bucket):
        if dedup.register(mats, m) is None:
            mats.append(m)
            words.append(word)
            bucket.append(len(mats) - 1)

    first = []
    record(np.eye(2), (), first)
    frontier = first
    counts = [1]
    certified = False
    for _ in range(word_length):
        new = []
        for idx in frontier:
            if displacement(mats[idx]) > prune:
                continue
            w = words[idx]
            for gi in range(8):
                if w and w[-1] == (gi + 4) % 8:
                    continue
                m2 = _canonical(mats[idx] @ gen_mats[gi])
                record(m2, w + (gi,), new)
                record(_canonical(mobius_inverse(m2)), _inverse_word(w + (gi,)), new)
        counts.append(len(new))
        frontier = new
        if not new:
            certified = True
            break
    else:
        certified = all(displacement(mats[i]) > prune for i in frontier)

    elements = tuple(MobiusElement(m, w) for m, w in zip(mats, words))
    return GroupEnumeration(
        generators=tuple(generators),
        elements=elements,
        diam_d=diam_d,
        counts_per_length=tuple(counts),
        certified_radius=(prune - circumradius) if certified else 0.0,
        prune_bound=prune,
    )


def ball_count(enum, radius):
    """Number of enumerated elements with displacement at most radius."""
    return int((enum.displacements <= radius).sum())


def _disk_distance(u, v):
    return np.arccosh(
        1.0 + 2.0 * np.abs(u - v) ** 2 / ((1.0 - np.abs(u) ** 2) * (1.0 - np.abs(v) ** 2))
    )


def _octagon_points(n_radial, n_angular, neighbor_images, radius_euclid, vertices):
    angles = 2.0 * np.pi * np.arange(n_angular) / n_angular
    radii = radius_euclid * np.arange(1, n_radial + 1) / n_radial
    w = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    keep = np.ones(len(w), dtype=bool)
    d0 = _disk_distance(w, np.zeros_like(w))
    for nb in neighbor_images:
        keep &= d0 <= _disk_distance(w, np.full_like(w, nb)) + 1e-12
    pts = [0.0 + 0.0j] + list(w[keep])
    if vertices:
        pts += [radius_euclid * np.exp(1j * (2 * k + 1) * np.pi / 8.0) for k in range(8)]
    return np.array(pts)


@lru_cache(maxsize=4)
def fundamental_domain_sample(n_radial=8, n_angular=40):
    """Point sample of the octagon fundamental domain, with mesh bound.

    A polar grid in the Poincare disk is clipped by the eight Dirichlet
    bisector inequalities and joined with the octagon vertices.  The
    returned mesh is a measured covering radius of the sample inside the
    domain, inflated by 1.3 to bound the probe's own resolution.
    """
    gens = bolza_generators()
    images = np.array([(g.matrix[0, 0] * 1j + g.matrix[0, 1]) / (g.matrix[1, 0] * 1j + g.matrix[1, 1]) for g in gens])
    neighbors = (images - 1j) / (images + 1j)
    radius_euclid = math.tanh(0.5 * CIRCUMRADIUS)
    pts = _octagon_points(n_radial, n_angular, neighbors, radius_euclid, vertices=True)
    probe = _octagon_points(6 * n_radial, 6 * n_angular, neighbors, radius_euclid, vertices=True)
    gaps = _disk_distance(probe[:, None], pts[None, :]).min(axis=1)
    mesh = 1.3 * float(gaps.max())
    z = 1j * (1.0 + pts) / (1.0 - pts)
    return DomainSample(points=np.column_stack([z.real, z.imag]), mesh=mesh)


def annulus_counts(enum, seg, radius, k_max=2, sample=None):
    """Annulus totals and tube-meeting counts along an extended geodesic.

    For k = 0..k_max, counts elements with displacement in [2^k, 2^(k+1))
    and, among them, those whose translate of the fundamental domain
    meets the radius-tube of the extended geodesic through seg, decided
    by a superset point-sample test with one-sided slack sample.mesh.

    Parameters
    ----------
    enum : GroupEnumeration
    seg : GeodesicSegment
        Half-plane segment; its complete geodesic is used.
    radius : float
        Tube radius.
    k_max : int
    sample : DomainSample, optional

    Returns
    -------
    AnnulusCounts
        certified is False when the enumeration cannot guarantee the
        ball of radius 2^(k_max+1) is complete, making counts partial.
    """
    if sample is None:
        sample = fundamental_domain_sample()
    certified = 2.0 ** (k_max + 1) <= enum.certified_radius
    minv = mobius_inverse(halfplane_geodesic_matrix(seg.base, seg.direction))
    z = sample.points[:, 0] + 1j * sample.points[:, 1]
    disp = enum.displacements
    mats = enum.matrices
    ks, alls, tubes = [], [], []
    for k in range(k_max + 1):
        sel = np.flatnonzero((disp >= 2.0**k) & (disp < 2.0 ** (k + 1)))
        count = 0
        for m in mats[sel]:
            c = minv @ m
            im = (c[0, 0] * z + c[0, 1]) / (c[1, 0] * z + c[1, 1])
            if float(np.arcsinh(np.abs(im.real) / im.imag).min()) <= radius + sample.mesh:
                count += 1
        ks.append(k)
        alls.append(int(sel.size))
        tubes.append(count)
    return AnnulusCounts(
        ks=tuple(ks),
        all_counts=tuple(alls),
        tube_counts=tuple(tubes),
        radius=float(radius),
        slack=sample.mesh,
        certified=certified,
    )


def dump_enumeration(enum, path):
    """Write the enumeration as a text table: word, matrix entries, displacement."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("word m00 m01 m10 m11 displacement\n")
        for el in enum.elements:
            word = "".join(_LETTERS[g] for g in el.word) or "e"
            entries = " ".join("%.17g" % x for x in el.matrix.ravel())
            fh.write("%s %s %.17g\n" % (word, entries, displacement(el)))
