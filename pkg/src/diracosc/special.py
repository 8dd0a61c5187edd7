"""Hermite and associated Laguerre polynomials by upward recurrence, plus quadrature.

Degrees in use stay below ~50, where upward recursion is stable in double
precision. All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import numpy as np

from .core import DomainError


def hermite(n: int, y):
    """Physicists' Hermite polynomial H_n(y)."""
    if n < 0:
        raise DomainError(f"hermite: n must be >= 0, got {n}")
    y = np.asarray(y, dtype=float)
    h_prev, h = np.zeros_like(y), np.ones_like(y)
    for j in range(n):
        h_prev, h = h, 2.0 * y * h - 2.0 * j * h_prev
    return h if h.ndim else float(h)


def laguerre_assoc(k: int, alpha: int, x):
    """Associated Laguerre polynomial L_k^alpha(x) for integer alpha >= 0."""
    if k < 0 or alpha < 0:
        raise DomainError(f"laguerre_assoc: k and alpha must be >= 0, got k={k}, alpha={alpha}")
    x = np.asarray(x, dtype=float)
    l_prev, l = np.zeros_like(x), np.ones_like(x)
    for j in range(k):
        l_prev, l = l, ((2 * j + 1 + alpha - x) * l - (j + alpha) * l_prev) / (j + 1)
    return l if l.ndim else float(l)


def integrate(f, grid) -> float:
    """Composite Simpson over node pairs, trapezoid on a leftover last panel.

    Handles non-uniform grids with the three-point Simpson rule per pair of
    panels.
    """
    x = np.asarray(grid, dtype=float)
    y = np.asarray(f, dtype=float)
    if x.ndim != 1 or x.size < 3:
        raise DomainError("integrate: need at least 3 nodes")
    if y.shape != x.shape:
        raise DomainError("integrate: samples and grid differ in shape")
    h = np.diff(x)
    if np.any(h <= 0):
        raise DomainError("integrate: grid must be strictly increasing")

    panels = h.size - h.size % 2
    h0, h1 = h[0:panels:2], h[1:panels:2]
    y0, y1, y2 = y[0:panels:2], y[1:panels + 1:2], y[2:panels + 1:2]
    hs = h0 + h1
    total = np.sum(hs / 6.0 * (y0 * (2.0 - h1 / h0) + y1 * hs * hs / (h0 * h1) + y2 * (2.0 - h0 / h1)))
    if panels < h.size:
        total += 0.5 * h[-1] * (y[-2] + y[-1])
    return float(total)
