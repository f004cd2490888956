"""Normalized Bessel functions, their zeros and the orthonormal bases built on them.

All functions accept numpy arrays for the spatial argument and a scalar index.
The normalized Bessel function is

    j_alpha(z) = Gamma(alpha + 1) (z/2)^(-alpha) J_alpha(z),

so that j_alpha(0) = 1 and j_{1/2}(z) = sin(z)/z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "HypergroupIndex",
    "InvalidIndexError",
    "ConvergenceError",
    "haar_weight",
    "bessel_j",
    "bessel_J",
    "bessel_zero",
    "bessel_zeros",
    "fourier_bessel_norm",
    "fourier_bessel",
    "sine_basis",
    "chebyshev_u",
]

# below this |z| the power series is used for non half-integer indices;
# the switch moves to 3 alpha once the Hankel expansion needs it (alpha > 16/3)
SERIES_SWITCH = 16.0
_ASYMPTOTIC_TERMS = 60


class InvalidIndexError(ValueError):
    """Hypergroup index outside alpha >= -1/2."""


class ConvergenceError(RuntimeError):
    """Root refinement did not converge."""


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < -0.5:
        raise InvalidIndexError(f"hypergroup index must satisfy alpha >= -1/2, got {alpha}")
    return alpha


@dataclass(frozen=True)
class HypergroupIndex:
    """Index alpha of the Bessel-Kingman hypergroup.

    ``alpha = d/2 - 1`` encodes radial analysis in R^d; the Haar measure is
    ``d omega_alpha(r) = r^(2 alpha + 1) dr / (2^alpha Gamma(alpha + 1))``.
    """

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))

    @property
    def measure_constant(self) -> float:
        return 1.0 / (2.0 ** self.alpha * math.gamma(self.alpha + 1.0))

    def weight(self, r):
        """Density of the Haar measure with respect to dr."""
        return haar_weight(self.alpha, r)


def haar_weight(alpha: float, r):
    """Density r^(2a+1) / (2^a Gamma(a+1)) of omega_alpha."""
    alpha = _check_alpha(alpha)
    r = np.asarray(r, dtype=float)
    return r ** (2.0 * alpha + 1.0) / (2.0 ** alpha * math.gamma(alpha + 1.0))


def _is_half_integer(alpha: float) -> bool:
    return abs((alpha - 0.5) - round(alpha - 0.5)) < 1e-14 and alpha >= 0.5


def _series(alpha: float, z: np.ndarray) -> np.ndarray:
    # j_alpha(z) = sum_n (-(z/2)^2)^n / (n! (alpha+1)_n), summed in extended
    # precision: near z = 16 the terms reach 1e5 and cancel to O(1)
    zl = np.asarray(z, dtype=np.longdouble)
    x = -(zl * zl) / 4
    a = np.longdouble(alpha)
    term = np.ones_like(zl)
    total = np.ones_like(zl)
    n = 0
    while True:
        n += 1
        term = term * x / (n * (n + a))
        total = total + term
        if n > 8 and np.all(np.abs(term) <= 1e-20 * np.maximum(np.abs(total), 1e-300)):
            break
        if n > 500:  # pragma: no cover - argument far outside the series range
            break
    return total.astype(float)


def _snap(v: float) -> float:
    # exact trigonometric values when the phase is a multiple of pi/2
    for exact in (0.0, 1.0, -1.0):
        if abs(v - exact) < 1e-14:
            return exact
    return v


def _asymptotic(alpha: float, z: np.ndarray) -> np.ndarray:
    """Hankel expansion, optimally truncated, for z well above the series range."""
    mu = 4.0 * alpha * alpha
    p = np.ones_like(z)
    q = np.zeros_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    prev = np.full(z.shape, np.inf)
    terminating = _is_half_integer(alpha)
    for k in range(1, _ASYMPTOTIC_TERMS):
        factor = (mu - (2 * k - 1) ** 2) / (k * 8.0)
        if factor == 0.0:
            break
        term = term * factor / z
        mag = np.abs(term)
        # stop once terms start to grow (divergent tail)
        if not terminating:
            active &= mag < prev
        prev = np.where(active, mag, prev)
        contrib = np.where(active, term, 0.0)
        if k % 2 == 0:
            p = p + (-1) ** (k // 2) * contrib
        else:
            q = q + (-1) ** ((k - 1) // 2) * contrib
        if not active.any():
            break
    theta = (alpha / 2.0 + 0.25) * math.pi
    ct, st = _snap(math.cos(theta)), _snap(math.sin(theta))
    cz, sz = np.cos(z), np.sin(z)
    cos_chi = cz * ct + sz * st
    sin_chi = sz * ct - cz * st
    const = math.exp(math.lgamma(alpha + 1.0) + (alpha + 0.5) * math.log(2.0)) / math.sqrt(math.pi)
    return const * z ** (-alpha - 0.5) * (p * cos_chi - q * sin_chi)


def bessel_j(alpha: float, z):
    """Normalized Bessel function j_alpha(z), even in z, with j_alpha(0) = 1."""
    alpha = _check_alpha(alpha)
    z_in = np.asarray(z, dtype=float)
    z = np.abs(np.atleast_1d(z_in))
    if alpha == -0.5:
        out = np.cos(z)
        return out.reshape(z_in.shape) if z_in.ndim else float(out[0])
    if alpha == 0.5:
        small = z <= 0.5
        out = np.empty_like(z)
        out[small] = _series(0.5, z[small])
        out[~small] = np.sin(z[~small]) / z[~small]
        return out.reshape(z_in.shape) if z_in.ndim else float(out[0])
    if _is_half_integer(alpha):
        switch = max(4.0, 2.0 * alpha)
    else:
        switch = max(SERIES_SWITCH, 3.0 * alpha)
    out = np.empty_like(z)
    small = z <= switch
    if small.any():
        out[small] = _series(alpha, z[small])
    if (~small).any():
        out[~small] = _asymptotic(alpha, z[~small])
    if z_in.ndim == 0:
        return float(out[0])
    return out.reshape(z_in.shape)


def bessel_J(alpha: float, z):
    """Ordinary Bessel function J_alpha(z) for z >= 0."""
    alpha = _check_alpha(alpha)
    z = np.asarray(z, dtype=float)
    return (z / 2.0) ** alpha * bessel_j(alpha, z) / math.gamma(alpha + 1.0)


def _bessel_j_prime(alpha: float, z):
    # d/dz j_alpha(z) = -z j_{alpha+1}(z) / (2 (alpha + 1))
    return -z * bessel_j(alpha + 1.0, z) / (2.0 * (alpha + 1.0))


def _mcmahon(alpha: float, n: int) -> float:
    mu = 4.0 * alpha * alpha
    beta = (n + alpha / 2.0 - 0.25) * math.pi
    b8 = 8.0 * beta
    return (
        beta
        - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 ** 3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8 ** 5)
    )


@lru_cache(maxsize=4096)
def bessel_zero(alpha: float, n: int) -> float:
    """n-th positive zero of j_alpha (McMahon seed refined by Newton's method)."""
    alpha = _check_alpha(alpha)
    if int(n) != n or n < 1:
        raise ValueError(f"zero index must be a positive integer, got {n}")
    n = int(n)
    if alpha == 0.5:
        return n * math.pi
    seed = _mcmahon(alpha, n)
    x = seed
    step = math.inf
    for _ in range(50):
        df = float(_bessel_j_prime(alpha, x))
        if df == 0.0:
            break
        step = float(bessel_j(alpha, x)) / df
        x -= step
        if abs(step) <= 1e-15 * abs(x):
            break
    # the last steps only chase rounding noise of j_alpha
    if abs(step) > 1e-11 * abs(x):
        raise ConvergenceError(f"Newton iteration for zero {n} of j_{alpha} did not converge")
    if not math.isfinite(x) or abs(x - seed) > math.pi / 2:
        raise ConvergenceError(f"zero {n} of j_{alpha} drifted away from its McMahon seed")
    return x


def bessel_zeros(alpha: float, n: int) -> np.ndarray:
    """The first n positive zeros of j_alpha."""
    return np.array([bessel_zero(alpha, k) for k in range(1, n + 1)])


@lru_cache(maxsize=4096)
def fourier_bessel_norm(alpha: float, n: int) -> float:
    """Normalizer M_n^alpha making rho_n^alpha a unit vector in L^2([0,1], omega_alpha)."""
    alpha = _check_alpha(alpha)
    nu = bessel_zero(alpha, n)
    j_next = abs(float(bessel_J(alpha + 1.0, nu)))
    return 2.0 ** ((1.0 - alpha) / 2.0) * nu ** alpha / (math.sqrt(math.gamma(alpha + 1.0)) * j_next)


def fourier_bessel(alpha: float, n: int, r):
    """Normalized Fourier-Bessel function rho_n^alpha(r) = M_n^alpha j_alpha(nu_n r)."""
    return fourier_bessel_norm(alpha, n) * bessel_j(alpha, bessel_zero(alpha, n) * np.asarray(r, dtype=float))


def sine_basis(k: int, r):
    """s_k(r) = sqrt(2) sin(k pi r); odd and 2-periodic."""
    return math.sqrt(2.0) * np.sin(k * math.pi * np.asarray(r, dtype=float))


def chebyshev_u(k: int, x):
    """Chebyshev polynomial of the second kind normalized to U_k(1) = 1.

    Equals sin((k+1)t) / ((k+1) sin t) for x = cos t.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise ValueError("chebyshev_u is defined on [-1, 1]")
    u_prev, u = np.ones_like(x), 2.0 * x
    if k == 0:
        return u_prev if x.ndim else float(u_prev)
    for _ in range(k - 1):
        u_prev, u = u, 2.0 * x * u - u_prev
    out = u / (k + 1)
    return out if x.ndim else float(out)
