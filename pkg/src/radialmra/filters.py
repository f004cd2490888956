"""Even 2-periodic filter functions G(lam) = sqrt(2) sum_n g_n cos(n pi lam)."""
from __future__ import annotations

import math

import numpy as np

from .quadrature import panel_edges, panel_rule

__all__ = ["FilterError", "CosineFilter", "fold", "cosine_coefficients", "shannon_filter"]

SQRT2 = math.sqrt(2.0)


class FilterError(ValueError):
    """Filter coefficients that violate a required identity."""


def fold(lam):
    """Map lam onto [0, 1] using evenness and 2-periodicity."""
    lam = np.abs(np.asarray(lam, dtype=float)) % 2.0
    return np.where(lam > 1.0, 2.0 - lam, lam)


def cosine_coefficients(func, n_max: int, breakpoints=(), n_nodes: int = 4096, order: int = 16):
    """g_0 = (1/sqrt 2) int_0^1 G, g_n = sqrt 2 int_0^1 G(lam) cos(n pi lam) dlam.

    Gauss-Legendre panels with about ``n_nodes`` nodes in total, aligned
    with ``breakpoints`` so jumps of G do not spoil the rule.
    """
    n_pan = max(1, n_nodes // order)
    lam, w = panel_rule(panel_edges(0.0, 1.0, breakpoints, max_width=1.0 / n_pan), order)
    vals = np.asarray(func(lam)) * w
    n = np.arange(n_max + 1)
    g = SQRT2 * (np.cos(np.pi * np.outer(n, lam)) @ vals)
    g[0] /= 2.0
    if not np.iscomplexobj(g) or not np.any(g.imag):
        g = np.real(g).astype(complex)
    return g


class CosineFilter:
    """Coefficients g_0..g_N of a filter function and the derived two-sided taps.

    Parameters
    ----------
    g : array_like
        Cosine coefficients, complex allowed.
    orthonormal : bool
        Whether G is meant to satisfy |G(lam)|^2 + |G(lam + 1)|^2 = 1.
    exact : callable, optional
        Closed form of G on the real line.  When present it is the reference
        for identity checks; the series is its N-term truncation.
    name : str
    breakpoints : sequence of float
        Jumps of G (or its low derivatives) in [0, 1].
    """

    def __init__(self, g, orthonormal: bool = True, exact=None, name: str = "user", breakpoints=()):
        g = np.asarray(g, dtype=complex).ravel()
        if g.size == 0:
            raise FilterError("a filter needs at least g_0")
        if not np.all(np.isfinite(g)):
            raise FilterError("filter coefficients must be finite")
        self.g = g
        self.orthonormal = bool(orthonormal)
        self.exact = exact
        self.name = name
        self.breakpoints = tuple(breakpoints)

    @property
    def N(self) -> int:
        return self.g.size - 1

    def coeff(self, n: int) -> complex:
        """g_n, zero outside 0..N."""
        return complex(self.g[n]) if 0 <= n <= self.N else 0.0j

    @property
    def taps(self) -> np.ndarray:
        """h_k for k = -N..N: h_0 = 2 g_0 and h_k = g_|k| otherwise."""
        h = np.concatenate([self.g[:0:-1], [2.0 * self.g[0]], self.g[1:]])
        return h

    def tap(self, k: int) -> complex:
        if k == 0:
            return 2.0 * self.g[0]
        return self.coeff(abs(k))

    def series(self, lam):
        """Truncated series sqrt(2) sum_n g_n cos(n pi lam)."""
        lam = np.asarray(lam, dtype=float)
        n = np.arange(self.N + 1)
        out = SQRT2 * (np.cos(np.pi * np.multiply.outer(lam, n)) @ self.g)
        return _maybe_real(out)

    def series_from_taps(self, lam):
        """(1/sqrt 2) sum_k h_k exp(i k pi lam); equals :meth:`series`."""
        lam = np.asarray(lam, dtype=float)
        k = np.arange(-self.N, self.N + 1)
        return _maybe_real(np.exp(1j * np.pi * np.multiply.outer(lam, k)) @ self.taps / SQRT2)

    def __call__(self, lam, exact: bool | None = None):
        use_exact = self.exact is not None if exact is None else exact
        if use_exact:
            if self.exact is None:
                raise FilterError("this filter has no closed form")
            return self.exact(np.asarray(lam, dtype=float))
        return self.series(lam)

    def qmf_residual(self, n_points: int = 4096, exact: bool | None = None) -> float:
        """sup over [0, 1] of | |G(lam)|^2 + |G(lam + 1)|^2 - 1 |."""
        lam = np.linspace(0.0, 1.0, n_points)
        a, b = self(lam, exact), self(lam + 1.0, exact)
        return float(np.max(np.abs(np.abs(a) ** 2 + np.abs(b) ** 2 - 1.0)))

    def sum_identities(self):
        """(sqrt 2 sum g_n - 1, sqrt 2 sum (-1)^n g_n), i.e. G(0) - 1 and G(1)."""
        sign = (-1.0) ** np.arange(self.N + 1)
        return complex(SQRT2 * self.g.sum() - 1.0), complex(SQRT2 * (sign * self.g).sum())

    def truncate(self, n: int) -> "CosineFilter":
        return CosineFilter(self.g[: n + 1], self.orthonormal, self.exact, self.name, self.breakpoints)

    def __repr__(self):
        return f"CosineFilter(name={self.name!r}, N={self.N}, orthonormal={self.orthonormal})"


def _maybe_real(v):
    v = np.asarray(v)
    if np.iscomplexobj(v) and not np.any(v.imag):
        return v.real
    return v


def shannon_filter(N: int = 64) -> CosineFilter:
    """G = indicator of [0, 1/2) on [0, 1]; g_0 = 1/(2 sqrt 2), g_n = sqrt 2 sin(n pi/2)/(n pi)."""
    n = np.arange(1, N + 1)
    g = np.concatenate([[1.0 / (2.0 * SQRT2)], SQRT2 * np.sin(n * np.pi / 2.0) / (n * np.pi)])
    # sin(n pi / 2) is not exactly zero in floating point for even n
    g[2::2] = 0.0

    def exact(lam):
        return (fold(lam) < 0.5).astype(float)

    return CosineFilter(g, True, exact, "shannon", (0.5,))
