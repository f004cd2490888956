"""Composite Gauss-Legendre rules on panels aligned with known breakpoints."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre", "panel_edges", "panel_rule", "midpoint_rule"]


@lru_cache(maxsize=64)
def gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_edges(a: float, b: float, breakpoints=(), max_width: float | None = None, min_panels: int = 1):
    """Panel boundaries covering [a, b], split at interior breakpoints.

    Each piece between breakpoints is subdivided uniformly so no panel is
    wider than ``max_width``.
    """
    if not b > a:
        return np.array([a, a])
    cuts = sorted({float(a), float(b), *(float(p) for p in breakpoints if a < p < b)})
    edges = [cuts[0]]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        n = max(min_panels, 1)
        if max_width is not None and max_width > 0:
            n = max(n, math.ceil((hi - lo) / max_width))
        edges.extend(np.linspace(lo, hi, n + 1)[1:].tolist())
    return np.asarray(edges)


def panel_rule(edges, order: int = 16):
    """Nodes and weights of the composite rule on the given panel edges."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    lo, hi = edges[:-1], edges[1:]
    half = (hi - lo) / 2.0
    mid = (hi + lo) / 2.0
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def midpoint_rule(r_max: float, n_points: int):
    h = r_max / n_points
    return (np.arange(n_points) + 0.5) * h, np.full(n_points, h)
