"""Generalized translation, point-measure convolution and dilation.

For index alpha the translation of a radial function is the average

    T_r f(s) = C_alpha int_0^pi f(sqrt(r^2 + s^2 - 2 r s cos t)) sin^(2 alpha) t dt,
    C_alpha = Gamma(alpha + 1) / (Gamma(alpha + 1/2) Gamma(1/2)),

and for alpha = 1/2 the substitution u = |r - s e^{it}| turns it into

    T_r f(s) = (1 / (2 r s)) int_{|r-s|}^{r+s} f(u) u du.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.interpolate import CubicSpline

from .profiles import Profile, ProfileError, RadialGrid
from .quadrature import gauss_legendre, panel_edges, panel_rule
from .special import InvalidIndexError, _check_alpha

__all__ = [
    "TruncationWarning",
    "translation_constant",
    "translate_half",
    "translate_half_at",
    "translate_general",
    "translate_general_at",
    "convolve_points",
    "dilate",
]


class TruncationWarning(UserWarning):
    """A translation needed values of f beyond the end of its grid; they were taken as 0."""


def translation_constant(alpha: float) -> float:
    """C_alpha = Gamma(alpha+1) / (Gamma(alpha+1/2) sqrt(pi)); undefined at alpha = -1/2."""
    alpha = _check_alpha(alpha)
    if alpha == -0.5:
        raise InvalidIndexError("the translation kernel degenerates at alpha = -1/2")
    return math.exp(math.lgamma(alpha + 1.0) - math.lgamma(alpha + 0.5)) / math.sqrt(math.pi)


def _check_shift(r):
    r = float(r)
    if not (r >= 0 and math.isfinite(r)):
        raise ValueError(f"translation distance must be >= 0, got {r}")
    return r


def _output_grid(f: Profile, grid):
    if f.is_tabulated:
        return f.grid
    if grid is None:
        raise ProfileError("closed-form profile needs an output grid")
    return grid


def _moment_antiderivative(f: Profile):
    """A(t) = int_0^t u f(u) du for sampled f, zero-extended past r_max."""
    g = f.grid
    x = np.concatenate([[0.0], g.points, [g.r_max]])
    y = np.concatenate([[0.0], g.points * f.values, [g.r_max * f.values[-1]]])
    anti = CubicSpline(x, y, bc_type="not-a-knot").antiderivative()
    total = anti(g.r_max)

    def A(t):
        t = np.asarray(t, dtype=float)
        return np.where(t >= g.r_max, total, anti(np.minimum(t, g.r_max)))

    return A


def _warn_if_truncated(f: Profile, reach: float) -> bool:
    if f.is_tabulated and reach > f.grid.r_max * (1 + 1e-12):
        warnings.warn(f"translation reaches r = {reach:g} beyond the grid end {f.grid.r_max:g}; "
                      "missing samples are treated as 0", TruncationWarning, stacklevel=3)
        return True
    return False


def translate_half_at(f: Profile, r: float, s, order: int = 16, max_width: float = 0.5):
    """(T_r f)(s) at arbitrary points for alpha = 1/2.

    Sampled profiles use the exact antiderivative of the spline through
    u f(u).  Closed forms use Gauss-Legendre panels on [|r - s|, r + s],
    split at the profile's breakpoints.
    """
    r = _check_shift(r)
    s_in = np.asarray(s, dtype=float)
    s = np.abs(np.atleast_1d(s_in)).ravel()
    if r == 0.0:
        out = np.asarray(f(s))
        return out.reshape(s_in.shape) if s_in.ndim else out[0]
    lo, hi = np.abs(r - s), r + s
    zero = s == 0.0
    out = np.empty(s.shape, dtype=complex)
    if f.is_tabulated:
        A = _moment_antiderivative(f)
        out[~zero] = (A(hi[~zero]) - A(lo[~zero])) / (2.0 * r * s[~zero])
    elif not f.breakpoints:
        # same panel count for every s; each interval has length 2 min(r, s)
        n_pan = max(1, math.ceil(2.0 * r / max_width))
        x, w = gauss_legendre(order)
        t = (np.arange(n_pan)[:, None] + 0.5 * (x[None, :] + 1.0)).ravel() / n_pan
        ww = np.tile(w, n_pan) / (2.0 * n_pan)
        nz = ~zero
        span = (hi - lo)[nz]
        u = lo[nz, None] + span[:, None] * t[None, :]
        vals = f(u) * u
        out[nz] = (vals @ ww) * span / (2.0 * r * s[nz])
    else:
        for i in np.flatnonzero(~zero):
            u, w = panel_rule(panel_edges(lo[i], hi[i], f.breakpoints, max_width=max_width), order)
            out[i] = np.sum(f(u) * u * w) / (2.0 * r * s[i])
    if zero.any():
        out[zero] = f(r)
    if not np.any(out.imag):
        out = out.real
    return out.reshape(s_in.shape) if s_in.ndim else out[0]


def translate_half(f: Profile, r: float, grid: RadialGrid | None = None) -> Profile:
    """T_r f sampled on the grid of ``f`` (or ``grid`` for closed forms).

    ``T_0 f`` returns the samples unchanged.  Reads beyond the end of a
    sampled profile are zero and set ``truncated`` on the result.
    """
    grid = _output_grid(f, grid)
    r = _check_shift(r)
    s = grid.points
    if r == 0.0:
        vals = f.samples(grid)
    else:
        vals = translate_half_at(f, r, s)
    out = Profile(grid=grid, values=vals, kind=f.kind, tag="derived", params={"shift": r})
    out.truncated = f.truncated or _warn_if_truncated(f, r + s[-1])
    return out


def translate_general_at(alpha: float, f: Profile, r: float, s, order: int = 64):
    """(T_r f)(s) for any alpha > -1/2 by Gauss-Legendre quadrature in the angle."""
    C = translation_constant(alpha)
    r = _check_shift(r)
    s_in = np.asarray(s, dtype=float)
    s = np.abs(np.atleast_1d(s_in)).ravel()
    x, w = gauss_legendre(order)
    phi = 0.5 * math.pi * (x + 1.0)
    w = 0.5 * math.pi * w * np.sin(phi) ** (2.0 * alpha)
    d2 = r * r + s[:, None] ** 2 - 2.0 * r * s[:, None] * np.cos(phi)[None, :]
    out = C * (f(np.sqrt(np.maximum(d2, 0.0))) @ w)
    # the quadrature is exact for constants only up to rounding; the limits are exact
    if r == 0.0:
        out = np.asarray(f(s))
    else:
        zero = s == 0.0
        if zero.any():
            out = np.asarray(out, dtype=np.result_type(out, f(r)))
            out[zero] = f(r)
    return out.reshape(s_in.shape) if s_in.ndim else out[0]


def translate_general(alpha: float, f: Profile, r: float, grid: RadialGrid | None = None,
                      order: int = 64) -> Profile:
    """T_r f for general index, sampled like :func:`translate_half`."""
    grid = _output_grid(f, grid)
    r = _check_shift(r)
    s = grid.points
    vals = translate_general_at(alpha, f, r, s, order)
    out = Profile(grid=grid, values=vals, kind=f.kind, tag="derived", params={"shift": r, "alpha": alpha})
    out.truncated = f.truncated or _warn_if_truncated(f, r + s[-1])
    return out


def convolve_points(alpha: float, r: float, s: float, test_fn, order: int = 64) -> complex:
    """(delta_r * delta_s)(f), i.e. (T_r f)(s), for a test function f.

    ``test_fn`` may be a Profile or any vectorized callable.
    """
    r, s = _check_shift(r), _check_shift(s)
    translation_constant(alpha)
    f = test_fn if isinstance(test_fn, Profile) else Profile(test_fn)
    if s == 0.0:
        return complex(f(r))
    if r == 0.0:
        return complex(f(s))
    return complex(translate_general_at(alpha, f, r, np.array([s]), order)[0])


def dilate(alpha: float, f: Profile, a: float) -> Profile:
    """D_a f(r) = a^-(alpha+1) f(r / a), unitary on L^2(omega_alpha).

    On the transform side ``dilate(alpha, F, 1/a)`` is the matching
    operation: (D_a f)^ = D_{1/a} f^.
    """
    alpha = _check_alpha(alpha)
    a = float(a)
    if not (a > 0 and math.isfinite(a)):
        raise ValueError(f"dilation factor must be positive, got {a}")
    c = a ** -(alpha + 1.0)
    if a == 1.0:
        return f
    if f.is_tabulated:
        vals = c * f(f.grid.points / a)
        out = Profile(grid=f.grid, values=vals, kind=f.kind, tag="derived", params={"dilation": a})
        # stretching pushes the samples beyond r_max / a off the grid
        lost = f.values[f.grid.points > f.grid.r_max / a]
        out.truncated = f.truncated or bool(lost.size and np.abs(lost).max() > 1e-12 * np.abs(f.values).max())
        return out
    func = f.func
    lo, hi = f.support
    ext = None if f.extent is None else f.extent * a
    out = Profile(lambda x: c * func(x / a), kind=f.kind, tag="derived", params={"dilation": a},
                  support=(lo * a, hi * a), breakpoints=[b * a for b in f.breakpoints], extent=ext)
    out.truncated = f.truncated
    return out
