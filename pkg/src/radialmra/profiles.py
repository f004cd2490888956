"""Radial and spectral profiles: functions of r >= 0 or lambda >= 0.

A profile is either a closed form (any vectorized callable, usually one of
the builtins below) or samples on a :class:`RadialGrid`.  Spectral profiles
are always read through their even extension, so evaluating at -lambda gives
the value at lambda.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

__all__ = [
    "ProfileError",
    "IncompatibleGridError",
    "RadialGrid",
    "Profile",
    "RadialProfile",
    "SpectralProfile",
    "tabulated",
    "gaussian",
    "indicator",
    "shannon_scaling_radial",
    "shannon_wavelet_radial",
]


class ProfileError(ValueError):
    """Malformed profile data."""


class IncompatibleGridError(ProfileError):
    """Two tabulated profiles live on different grids."""


@dataclass(frozen=True)
class RadialGrid:
    """Uniform midpoint grid r_i = (i + 1/2) r_max / n_points on [0, r_max]."""

    r_max: float
    n_points: int

    def __post_init__(self):
        if not (self.r_max > 0 and math.isfinite(self.r_max)):
            raise ProfileError(f"r_max must be positive, got {self.r_max}")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ProfileError(f"n_points must be an integer >= 2, got {self.n_points}")
        object.__setattr__(self, "r_max", float(self.r_max))
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def spacing(self) -> float:
        return self.r_max / self.n_points

    @property
    def points(self) -> np.ndarray:
        return (np.arange(self.n_points) + 0.5) * self.spacing

    def dual(self) -> "RadialGrid":
        """Grid on the transform side for which the discrete sine kernel is orthogonal."""
        return RadialGrid(math.pi * self.n_points / self.r_max, self.n_points)

    def __eq__(self, other):
        if not isinstance(other, RadialGrid):
            return NotImplemented
        return self.n_points == other.n_points and math.isclose(self.r_max, other.r_max, rel_tol=1e-12)

    def __hash__(self):
        return hash((round(self.r_max, 9), self.n_points))


class Profile:
    """A function on the half line, given in closed form or as grid samples.

    Parameters
    ----------
    func : callable, optional
        Vectorized closed form ``func(x) -> array``.
    grid, values : RadialGrid, array_like, optional
        Tabulated representation; mutually exclusive with ``func``.
    kind : {"radial", "spectral"}
    tag : str
        Builtin name or ``"user-tabulated"`` / ``"derived"``.
    support : (float, float)
        Interval outside which the profile vanishes.
    breakpoints : sequence of float
        Points where the profile (or one of its low derivatives) jumps;
        quadrature panels are aligned with them.
    extent : float, optional
        Recommended truncation radius for closed forms with unbounded support.
    """

    def __init__(self, func=None, *, grid=None, values=None, kind="radial", tag=None,
                 params=None, support=(0.0, math.inf), breakpoints=(), extent=None):
        if kind not in ("radial", "spectral"):
            raise ProfileError(f"kind must be 'radial' or 'spectral', got {kind!r}")
        if (func is None) == (grid is None):
            raise ProfileError("give exactly one of a closed form or grid samples")
        self.kind = kind
        self.params = dict(params or {})
        self.func = func
        self.grid = grid
        self._spline = None
        self.truncated = False
        if grid is not None:
            values = np.asarray(values)
            if values.ndim != 1 or values.shape[0] != grid.n_points:
                raise ProfileError(
                    f"expected {grid.n_points} samples, got {values.shape}")
            if not np.all(np.isfinite(values)):
                raise ProfileError("profile samples must be finite")
            self.values = values.astype(complex if np.iscomplexobj(values) else float)
            self.tag = tag or "user-tabulated"
            self.support = (0.0, grid.r_max)
            self.breakpoints = ()
            self.extent = grid.r_max
        else:
            self.values = None
            self.tag = tag or "derived"
            self.support = (float(support[0]), float(support[1]))
            self.breakpoints = tuple(sorted(float(b) for b in breakpoints))
            if extent is None:
                extent = self.support[1] if math.isfinite(self.support[1]) else None
            self.extent = extent

    # -- representation -------------------------------------------------
    @property
    def is_tabulated(self) -> bool:
        return self.grid is not None

    @property
    def is_band_limited(self) -> bool:
        return math.isfinite(self.support[1])

    @property
    def upper(self) -> float:
        """Right end of the interval a quadrature over this profile must cover."""
        if self.is_band_limited:
            return self.support[1]
        if self.extent is None:
            raise ProfileError(f"profile {self.tag!r} has unbounded support and no extent")
        return float(self.extent)

    def _interpolant(self):
        if self._spline is None:
            r = self.grid.points
            # even extension keeps the slope at the origin at zero
            x = np.concatenate([-r[::-1], r])
            y = np.concatenate([self.values[::-1], self.values])
            self._spline = CubicSpline(x, y, extrapolate=False)
        return self._spline

    def __call__(self, x):
        x_in = np.asarray(x, dtype=float)
        x = np.abs(x_in)
        if self.func is not None:
            out = np.asarray(self.func(x))
            if out.shape != x.shape:
                out = np.broadcast_to(out, x.shape).copy()
        else:
            out = self._interpolant()(x)
            out = np.where(x > self.grid.r_max, 0.0, out)
            edge = (x > self.grid.points[-1]) & (x <= self.grid.r_max)
            out = np.where(edge, self.values[-1], out)
        if not np.iscomplexobj(out):
            out = out.astype(float)
        return out if x_in.ndim else out[()]

    def samples(self, grid: RadialGrid | None = None) -> np.ndarray:
        """Values on ``grid`` (the own grid for tabulated profiles)."""
        if grid is None:
            if not self.is_tabulated:
                raise ProfileError("closed-form profile needs a grid to be sampled")
            return self.values
        if self.is_tabulated and grid == self.grid:
            return self.values
        return self(grid.points)

    def sample(self, grid: RadialGrid) -> "Profile":
        out = Profile(grid=grid, values=self.samples(grid), kind=self.kind,
                      tag=self.tag if self.is_tabulated else "user-tabulated", params=self.params)
        out.truncated = self.truncated
        return out

    def with_kind(self, kind: str) -> "Profile":
        if self.is_tabulated:
            return Profile(grid=self.grid, values=self.values, kind=kind, tag=self.tag, params=self.params)
        return Profile(self.func, kind=kind, tag=self.tag, params=self.params, support=self.support,
                       breakpoints=self.breakpoints, extent=self.extent)

    # -- linear structure ---------------------------------------------
    def _combine(self, other, op):
        if not isinstance(other, Profile):
            return NotImplemented
        if self.kind != other.kind:
            raise ProfileError("cannot combine radial and spectral profiles")
        if self.is_tabulated and other.is_tabulated:
            if self.grid != other.grid:
                raise IncompatibleGridError("profiles are tabulated on different grids")
            return Profile(grid=self.grid, values=op(self.values, other.values), kind=self.kind)
        if self.is_tabulated or other.is_tabulated:
            grid = self.grid if self.is_tabulated else other.grid
            return Profile(grid=grid, values=op(self.samples(grid), other.samples(grid)), kind=self.kind)
        f, g = self.func, other.func
        lo = min(self.support[0], other.support[0])
        hi = max(self.support[1], other.support[1])
        ext = [e for e in (self.extent, other.extent) if e is not None]
        return Profile(lambda x: op(f(x), g(x)), kind=self.kind, support=(lo, hi),
                       breakpoints=self.breakpoints + other.breakpoints,
                       extent=max(ext) if ext else None)

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, c):
        if isinstance(c, Profile):
            return self._combine(c, np.multiply)
        if not np.isscalar(c):
            return NotImplemented
        if self.is_tabulated:
            return Profile(grid=self.grid, values=c * self.values, kind=self.kind)
        f = self.func
        return Profile(lambda x: c * f(x), kind=self.kind, support=self.support,
                       breakpoints=self.breakpoints, extent=self.extent)

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self

    def __repr__(self):
        rep = f"grid={self.grid}" if self.is_tabulated else f"support={self.support}"
        return f"Profile(kind={self.kind!r}, tag={self.tag!r}, {rep})"


def RadialProfile(func=None, **kw) -> Profile:
    kw.setdefault("kind", "radial")
    return Profile(func, **kw)


def SpectralProfile(func=None, **kw) -> Profile:
    kw.setdefault("kind", "spectral")
    return Profile(func, **kw)


def tabulated(grid: RadialGrid, values, kind: str = "radial") -> Profile:
    return Profile(grid=grid, values=values, kind=kind)


def gaussian(kind: str = "radial", width: float = 1.0) -> Profile:
    """exp(-x^2 / (2 width^2)); a fixed point of every Hankel transform when width = 1."""
    w2 = 2.0 * width * width
    return Profile(lambda x: np.exp(-(x * x) / w2), kind=kind, tag="gaussian",
                   params={"width": width}, extent=40.0 * width)


def indicator(a: float, b: float, kind: str = "spectral") -> Profile:
    """Characteristic function of [a, b) on the half line."""
    if not 0.0 <= a < b:
        raise ProfileError("indicator needs 0 <= a < b")
    return Profile(lambda x: ((x >= a) & (x < b)).astype(float), kind=kind, tag="indicator",
                   params={"a": a, "b": b}, support=(a, b), breakpoints=(a, b))


def _sinc_cube(x):
    # (sin x - x cos x) / x^3, Taylor series near the origin
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-2
    xs = x[small] ** 2
    out[small] = 1.0 / 3.0 - xs / 30.0 + xs * xs / 840.0 - xs ** 3 / 45360.0
    xl = x[~small]
    out[~small] = (np.sin(xl) - xl * np.cos(xl)) / xl ** 3
    return out


def shannon_scaling_radial() -> Profile:
    """sqrt(2/pi) (sin x - x cos x) / x^3, whose transform is chi_[0,1]."""
    c = math.sqrt(2.0 / math.pi)
    return Profile(lambda x: c * _sinc_cube(x), kind="radial", tag="shannon-scaling", extent=400.0)


def shannon_wavelet_radial() -> Profile:
    """sqrt(2/pi) (sin 2x - sin x - 2x cos 2x + x cos x) / x^3, transform chi_[1,2]."""
    c = math.sqrt(2.0 / math.pi)
    return Profile(lambda x: c * (8.0 * _sinc_cube(2.0 * x) - _sinc_cube(x)), kind="radial",
                   tag="shannon-wavelet", extent=400.0)
