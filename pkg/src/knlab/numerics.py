"""Shared numerical helpers: quadrature rules and scalar searches."""

from __future__ import annotations

import math

import numpy as np


def gauss_legendre(n, a=-1.0, b=1.0):
    """Gauss-Legendre nodes and weights on the interval [a, b].

    Parameters
    ----------
    n : int
        Number of nodes.
    a, b : float
        Interval endpoints, a < b.

    Returns
    -------
    nodes : ndarray
        Shape (n,) nodes interior to (a, b).
    weights : ndarray
        Shape (n,) positive weights summing to b - a.
    """
    x, w = np.polynomial.legendre.leggauss(int(n))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def panel_rule(a, b, max_spacing, order=8):
    """Composite Gauss-Legendre rule with panels at most max_spacing wide.

    Parameters
    ----------
    a, b : float
        Interval endpoints, a < b.
    max_spacing : float
        Upper bound on the panel width.
    order : int
        Nodes per panel.

    Returns
    -------
    nodes, weights : ndarray
        Flattened composite rule; weights sum to b - a.
    """
    if not b > a:
        raise ValueError("panel_rule needs a nonempty interval")
    if not max_spacing > 0.0:
        raise ValueError("panel_rule needs a positive spacing")
    panels = max(1, math.ceil((b - a) / max_spacing))
    edges = np.linspace(a, b, panels + 1)
    x, w = np.polynomial.legendre.leggauss(int(order))
    half = 0.5 * (edges[1] - edges[0])
    mids = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mids[:, None] + half * x[None, :]).ravel()
    weights = np.tile(half * w, panels)
    return nodes, weights


def sphere_rule(n_theta, n_phi):
    """Product quadrature on the unit sphere in colatitude and longitude.

    Gauss-Legendre in cos(theta) crossed with an equispaced (trapezoid)
    rule in longitude.  The weights absorb the sin(theta) area element, so
    sums of f(theta, phi) * w approximate the surface integral of f.

    Parameters
    ----------
    n_theta, n_phi : int
        Node counts in colatitude and longitude.

    Returns
    -------
    theta, phi, w : ndarray
        Flattened arrays of shape (n_theta * n_phi,); w sums to 4*pi.
    """
    x, wx = np.polynomial.legendre.leggauss(int(n_theta))
    theta = np.arccos(x)
    phi = 2.0 * np.pi * np.arange(int(n_phi)) / int(n_phi)
    big_theta, big_phi = np.meshgrid(theta, phi, indexing="ij")
    big_w = np.broadcast_to(wx[:, None] * (2.0 * np.pi / int(n_phi)), big_theta.shape)
    return big_theta.ravel(), big_phi.ravel(), np.ascontiguousarray(big_w.ravel())


def torus_rule(n):
    """Uniform n-by-n product rule on [0, 2*pi)^2; weights sum to 4*pi^2."""
    x = 2.0 * np.pi * np.arange(int(n)) / int(n)
    x1, x2 = np.meshgrid(x, x, indexing="ij")
    w = np.full(int(n) * int(n), (2.0 * np.pi / int(n)) ** 2)
    return x1.ravel(), x2.ravel(), w


def golden_section(f, a, b, tol=1e-10):
    """Golden-section minimization of f on [a, b].

    Returns
    -------
    x, fx : float
        Abscissa within tol of the minimizer of a unimodal f, and f(x).
    """
    invphi = 0.5 * (math.sqrt(5.0) - 1.0)
    lo, hi = float(a), float(b)
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


def bracketed_min(f, a, b, seeds=64, tol=1e-10):
    """Minimize f on [a, b]: uniform seed scan, then golden-section.

    The seed scan makes the search robust when f is only piecewise
    unimodal; golden-section then refines the best bracket to tol.

    Returns
    -------
    x, fx : float
    """
    if b <= a:
        return float(a), float(f(a))
    s = np.linspace(a, b, int(seeds))
    vals = np.array([f(t) for t in s])
    i = int(np.argmin(vals))
    lo = s[max(i - 1, 0)]
    hi = s[min(i + 1, len(s) - 1)]
    x, fx = golden_section(f, lo, hi, tol=tol)
    if vals[i] < fx:
        return float(s[i]), float(vals[i])
    return x, fx


def bisect_root(f, a, b, tol=1e-8):
    """Bisection for a sign change of f on [a, b]; returns the abscissa."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return float(a)
    if fb == 0.0:
        return float(b)
    if fa * fb > 0.0:
        raise ValueError("bisect_root needs a sign change on the bracket")
    lo, hi = float(a), float(b)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            hi = mid
        else:
            lo, fa = mid, fm
    return 0.5 * (lo + hi)
