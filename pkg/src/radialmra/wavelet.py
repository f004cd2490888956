"""Radial wavelets built from an orthonormal scaling function and its filter.

The basic wavelet has spectrum psi^(mu) = conj(G(mu/2 + 1)) phi^(mu/2).  Its
family is generated by half-integer hypergroup translates,

    psi_{0,k}^(lam) = (M_{2k-1} / 2) j((2k - 1) pi lam / 2) psi^(lam),
    psi_{j,k}^(lam) = 2^(-3j/2) psi_{0,k}^(2^-j lam),

with j(x) = sin(x)/x.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .filters import CosineFilter, FilterError
from .hankel import hankel_half_at
from .mra import SQRT2, ScalingFunction, SineSeries, spectral_rule
from .profiles import Profile, RadialGrid, shannon_wavelet_radial
from .special import fourier_bessel_norm

__all__ = [
    "Wavelet",
    "build_wavelet",
    "wavelet_spectrum",
    "wavelet_family",
    "w_space_lift",
    "lift_norm",
    "shannon_wavelet",
    "shannon_wavelet_translate",
]

_OMEGA = math.sqrt(2.0 / math.pi)


@dataclass
class Wavelet:
    """Spectrum of a basic radial wavelet with the pair it was built from."""

    spectral: Profile
    phi: ScalingFunction
    filter: CosineFilter
    radial: Profile | None = None
    name: str = "user"

    def __call__(self, lam):
        return self.spectral(lam)

    def radial_at(self, r):
        """psi(r) by the inverse transform, or the closed form when known."""
        if self.radial is not None:
            return self.radial(r)
        return hankel_half_at(self.spectral, r)


def _filter_fn(G: CosineFilter):
    return G.exact if G.exact is not None else G.series


def _wavelet_breakpoints(phi, G, hi):
    pts = {2.0 * b for b in phi.breakpoints}
    # G(mu/2 + 1) jumps where mu/2 + 1 = 2m +- b for a jump b of G in [0, 1]
    for b in G.breakpoints:
        m = 0
        while True:
            new = [2.0 * (2 * m + b - 1.0), 2.0 * (2 * m - b - 1.0)]
            pts.update(v for v in new if 0.0 < v < hi)
            if min(new) > hi:
                break
            m += 1
    return tuple(sorted(p for p in pts if 0.0 < p < hi))


def build_wavelet(phi: ScalingFunction, G: CosineFilter, tol: float = 1e-6) -> Wavelet:
    """psi^(mu) = conj(G(mu/2 + 1)) phi^(mu/2).

    Raises
    ------
    FilterError
        When phi is not orthonormal or G violates |G(lam)|^2 + |G(lam+1)|^2 = 1
        by more than ``tol``.
    """
    if not phi.orthonormal:
        raise FilterError("the wavelet construction needs an orthonormal scaling function")
    resid = G.qmf_residual()
    if resid > tol:
        raise FilterError(f"filter identity violated by {resid:.3g} (> {tol:g})")
    g_fn = _filter_fn(G)

    def spec_fn(mu):
        mu = np.asarray(mu, dtype=float)
        return np.conj(g_fn(mu / 2.0 + 1.0)) * phi(mu / 2.0)

    sp = phi.spectral
    hi = 2.0 * sp.support[1]
    ext = None if sp.extent is None else 2.0 * sp.extent
    bps = _wavelet_breakpoints(phi, G, 2.0 * phi.upper)
    spec = Profile(spec_fn, kind="spectral", tag="derived", support=(0.0, hi), breakpoints=bps, extent=ext)
    radial = shannon_wavelet_radial() if phi.name == "shannon" and G.name == "shannon" else None
    return Wavelet(spec, phi, G, radial, f"{phi.name}-wavelet")


def wavelet_spectrum(psi: Wavelet, j: int, k: int) -> Profile:
    """psi_{j,k}^ as a closed-form spectral profile."""
    if int(k) != k or k < 1:
        raise ValueError("translation index k must be a positive integer")
    m = 2 * k - 1
    Mm = fourier_bessel_norm(0.5, m)
    s = 2.0 ** j
    c = s ** -1.5

    def fn(x):
        y = np.asarray(x, dtype=float) / s
        return c * 0.5 * Mm * np.sinc(m * y / 2.0) * psi(y)

    sp = psi.spectral
    ext = None if sp.extent is None else sp.extent * s
    return Profile(fn, kind="spectral", tag="derived", params={"j": j, "k": k},
                   support=(sp.support[0] * s, sp.support[1] * s),
                   breakpoints=[b * s for b in sp.breakpoints], extent=ext)


def wavelet_family(psi: Wavelet, j: int, k: int, grid: RadialGrid | None = None, points=None):
    """psi_{j,k} on the radial side, by inverting its spectrum.

    Returns a profile on ``grid`` or an array of values at ``points``.
    """
    if (grid is None) == (points is None):
        raise ValueError("give exactly one of grid or points")
    r = grid.points if grid is not None else np.asarray(points, dtype=float)
    vals = hankel_half_at(wavelet_spectrum(psi, j, k), r)
    if grid is None:
        return vals
    return Profile(grid=grid, values=vals, kind="radial", tag="derived", params={"j": j, "k": k})


def w_space_lift(alpha: SineSeries, phi: ScalingFunction, G: CosineFilter) -> Profile:
    """Spectrum (2 pi)^(1/4) (alpha(lam) / lam) conj(G(lam + 1)) phi^(lam) of an element of W_{-1}.

    The map alpha -> f_alpha is an isometry from S0 onto W_{-1}.
    """
    if alpha.subspace != "S0":
        raise ValueError("the lift is defined on S0 (odd-index sine series)")
    g_fn = _filter_fn(G)
    c = (2.0 * math.pi) ** 0.25
    kmax = alpha.coefficients.size
    ks = np.arange(1, kmax + 1)

    def fn(lam):
        lam = np.asarray(lam, dtype=float)
        # alpha(lam) / lam written with sinc so lam = 0 is regular
        a = SQRT2 * np.pi * (np.sinc(np.multiply.outer(lam, ks)) * ks) @ alpha.coefficients
        if not np.any(alpha.coefficients.imag):
            a = a.real
        return c * a * np.conj(g_fn(lam + 1.0)) * phi(lam)

    sp = phi.spectral
    return Profile(fn, kind="spectral", tag="derived", support=sp.support,
                   breakpoints=sp.breakpoints + tuple(G.breakpoints), extent=sp.extent)


def lift_norm(F: Profile) -> float:
    """Weighted L^2 norm of a spectrum, int |F|^2 d omega_{1/2}."""
    lam, w = spectral_rule(F, max_width=1.0 / 64)
    return math.sqrt(float(np.sum(np.abs(F(lam)) ** 2 * _OMEGA * lam ** 2 * w)))


def shannon_wavelet(n_coeffs: int = 64) -> Wavelet:
    """psi^ = indicator of [1, 2)."""
    from .filters import shannon_filter
    from .mra import shannon

    return build_wavelet(shannon(), shannon_filter(n_coeffs))


def shannon_wavelet_translate(k: int, x):
    """Closed form of psi_{0,k} for the Shannon wavelet.

    (2 pi)^(-1/4) x^-1 (p(x - c) - p(x + c)), c = (2k - 1) pi / 2,
    p(x) = (sin 2x - sin x) / x.
    """
    x = np.asarray(x, dtype=float)
    c = (2 * k - 1) * math.pi / 2.0

    def p(t):
        # (sin 2t - sin t)/t = 2 sinc(2t/pi) - sinc(t/pi) with numpy's normalized sinc
        return 2.0 * np.sinc(2.0 * t / math.pi) - np.sinc(t / math.pi)

    return (2.0 * math.pi) ** -0.25 * (p(x - c) - p(x + c)) / x
