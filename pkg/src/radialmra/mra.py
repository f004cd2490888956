"""Radial scaling functions for alpha = 1/2 (radial analysis in R^3).

A scaling function is carried by its spectrum phi^(lam) on the half line,
read through its even extension.  The basis of V_j is

    phi_{j,k}^(lam) = 2^(-3j/2) rho_k(2^-j lam) phi^(2^-j lam),   k = 1, 2, ...

with rho_k(lam) = M_k sin(k pi lam) / (k pi lam) and M_k = 2^(1/4) pi^(5/4) k,
and Gram entries reduce to int_0^inf s_k s_l |phi^|^2 dlam with
s_k(lam) = sqrt(2) sin(k pi lam).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .filters import CosineFilter, FilterError, cosine_coefficients, fold
from .hankel import hankel_half_at
from .profiles import Profile, ProfileError, RadialGrid, shannon_scaling_radial
from .quadrature import panel_edges, panel_rule
from .special import chebyshev_u, fourier_bessel_norm

__all__ = [
    "RieszError",
    "ScalingFunction",
    "SineSeries",
    "PeriodizationProfile",
    "shannon",
    "meyer",
    "meyer_transition",
    "hat_spline",
    "from_classical",
    "periodization_at",
    "periodize",
    "riesz_bounds",
    "orthogonalize",
    "basis_spectrum",
    "translate_basis",
    "spectral_rule",
    "spectral_inner",
    "spectral_gram",
    "gram_matrix",
    "extract_filter",
    "gamma_from_filter",
    "two_scale_check",
    "chebyshev_check",
    "validate_mra",
    "shift_invariance_defect",
]

SQRT2 = math.sqrt(2.0)
_OMEGA = math.sqrt(2.0 / math.pi)  # Haar density of alpha = 1/2 is _OMEGA * lam^2
DEFAULT_NMAX = 64


class RieszError(ValueError):
    """The translates do not form a Riesz basis (lower bound A vanishes)."""


@dataclass
class ScalingFunction:
    """Spectrum of a radial scaling function plus optional companions.

    Attributes
    ----------
    spectral : Profile
        phi^, kind "spectral".
    radial : Profile, optional
        Closed form of phi itself.
    classical : callable, optional
        Even classical scaling function phi_R it was bridged from.
    orthonormal : bool
        Whether P_phi = 1, i.e. the translates are orthonormal.
    """

    spectral: Profile
    radial: Profile | None = None
    classical: object = None
    orthonormal: bool = False
    name: str = "user"
    params: dict = field(default_factory=dict)

    def __call__(self, lam):
        return self.spectral(lam)

    @property
    def upper(self) -> float:
        return self.spectral.upper

    @property
    def breakpoints(self):
        return self.spectral.breakpoints

    @property
    def band_limited(self) -> bool:
        return self.spectral.is_band_limited


@dataclass
class SineSeries:
    """beta(lam) = sum_k a_k sqrt(2) sin(k pi lam), odd and 2-periodic.

    ``subspace="S0"`` restricts to odd k, the antiperiodic functions
    beta(lam + 1) = -beta(lam).
    """

    coefficients: np.ndarray
    subspace: str = "S"

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("sine coefficients must be finite")
        if self.subspace not in ("S", "S0"):
            raise ValueError("subspace must be 'S' or 'S0'")
        if self.subspace == "S0" and np.any(c[1::2] != 0):
            raise ValueError("S0 admits only odd-index sines")
        self.coefficients = c

    @classmethod
    def odd(cls, coefficients) -> "SineSeries":
        """Element of S0 from the coefficients of s_1, s_3, s_5, ..."""
        c = np.asarray(coefficients, dtype=complex).ravel()
        full = np.zeros(2 * c.size, dtype=complex)
        full[0::2] = c
        return cls(full, "S0")

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        k = np.arange(1, self.coefficients.size + 1)
        out = SQRT2 * (np.sin(np.pi * np.multiply.outer(lam, k)) @ self.coefficients)
        return out.real if not np.any(self.coefficients.imag) else out

    def norm(self) -> float:
        """L^2[0, 1] norm, which equals the l^2 norm of the coefficients."""
        return float(np.linalg.norm(self.coefficients))


@dataclass
class PeriodizationProfile:
    """Samples of P_phi(lam) = sum_n |phi^(lam + 2n)|^2 on a uniform grid of [0, 1]."""

    lam: np.ndarray
    values: np.ndarray
    n_max: int
    tail_estimate: float = 0.0

    @property
    def bounds(self):
        return riesz_bounds(self)

    def satisfies_rb(self, tol: float = 1e-12) -> bool:
        A, B = riesz_bounds(self)
        return A > tol and math.isfinite(B)


# -- builtins -------------------------------------------------------------

def meyer_transition(smoothness: int = 7):
    """Polynomial nu with nu(0) = 0, nu(1) = 1, nu(x) + nu(1-x) = 1.

    Degree 2p+1 with p = ``smoothness`` vanishing derivatives at both ends;
    p = 3 is x^4 (35 - 84x + 70x^2 - 20x^3).
    """
    p = int(smoothness)
    if p < 0:
        raise ValueError("smoothness must be >= 0")
    coeffs = [comb(p + k, k) * comb(2 * p + 1, p - k) * (-1) ** k for k in range(p + 1)]

    def nu(x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return x ** (p + 1) * np.polynomial.polynomial.polyval(x, coeffs)

    return nu


def _classical_from_spectrum(spec, upper, breakpoints, n_nodes=2048):
    """phi_R(x) = int_0^upper phi^(lam) cos(pi x lam) dlam for a band-limited spectrum."""
    lam, w = panel_rule(panel_edges(0.0, upper, breakpoints, max_width=upper / (n_nodes // 16)), 16)
    wv = spec(lam) * w

    def phi_R(x):
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x).ravel()
        out = np.empty(flat.shape, dtype=np.result_type(wv, float))
        for s in range(0, flat.size, 256):
            out[s:s + 256] = np.cos(np.pi * np.outer(flat[s:s + 256], lam)) @ wv
        return out.reshape(x.shape) if x.ndim else out[0]

    return phi_R


def shannon() -> ScalingFunction:
    """phi^ = indicator of [0, 1); phi(x) = sqrt(2/pi) (sin x - x cos x) / x^3."""
    spec = Profile(lambda x: (x < 1.0).astype(float), kind="spectral", tag="shannon-scaling",
                   support=(0.0, 1.0), breakpoints=(1.0,))
    return ScalingFunction(spec, shannon_scaling_radial(), np.sinc, True, "shannon")


def meyer(smoothness: int = 7) -> ScalingFunction:
    """Meyer spectrum: 1 on [0, 2/3], cos(pi/2 nu(3 lam/2 - 1)) on [2/3, 4/3], 0 after."""
    nu = meyer_transition(smoothness)

    def spec_fn(x):
        return np.where(x <= 2.0 / 3.0, 1.0,
                        np.where(x < 4.0 / 3.0, np.cos(0.5 * np.pi * nu(1.5 * x - 1.0)), 0.0))

    spec = Profile(spec_fn, kind="spectral", tag="meyer-scaling", params={"smoothness": smoothness},
                   support=(0.0, 4.0 / 3.0), breakpoints=(2.0 / 3.0, 4.0 / 3.0))
    classical = _classical_from_spectrum(spec, 4.0 / 3.0, (2.0 / 3.0,))
    return ScalingFunction(spec, None, classical, True, "meyer", {"smoothness": smoothness})


def _hat(x):
    return np.maximum(1.0 - np.abs(np.asarray(x, dtype=float)), 0.0)


def hat_spline(n_max: int = DEFAULT_NMAX) -> ScalingFunction:
    """Bridge of the linear B-spline max(1 - |x|, 0): phi^ = (sin(pi lam/2) / (pi lam/2))^2.

    Not orthonormal: P_phi = (2 + cos(pi lam)) / 3.
    """
    spec = Profile(lambda x: np.sinc(x / 2.0) ** 2, kind="spectral", tag="hat-spline",
                   extent=2.0 * n_max + 1.0)
    return ScalingFunction(spec, None, _hat, False, "hat-spline", {"n_max": n_max})


def from_classical(spectrum, *, classical=None, band_limit=None, breakpoints=(), extent=None,
                   name="from-classical", tol=1e-8, n_max=None) -> ScalingFunction:
    """Radial scaling function with phi^(lam) = sqrt(2 pi) F(phi_R)(pi lam).

    Parameters
    ----------
    spectrum : callable or Profile
        Classical Fourier transform F(phi_R)(xi), even in xi.  A tabulated
        Profile is read on its xi-grid.
    classical : callable, optional
        phi_R itself, for the classical evaluation path of the translates.
    band_limit : float, optional
        xi beyond which F vanishes.
    breakpoints : sequence of float
        Jumps of F or its low derivatives, in xi.
    extent : float, optional
        xi-truncation for spectra of unbounded support.

    The result is flagged orthonormal when sup |P_phi - 1| < ``tol``.
    """
    F = spectrum if isinstance(spectrum, Profile) else None
    f = spectrum
    if F is not None and F.is_tabulated and band_limit is None:
        band_limit = F.grid.r_max
    if F is None:
        # profiles are even by construction; plain callables are probed
        probe = np.linspace(0.0, band_limit or extent or 40.0, 257)[1:]
        if not np.allclose(np.asarray(f(probe)), np.asarray(f(-probe)), rtol=1e-10, atol=1e-14):
            raise ProfileError("the classical spectrum must be even")
    c = math.sqrt(2.0 * math.pi)
    if band_limit is not None:
        support = (0.0, band_limit / math.pi)
        ext = None
    else:
        if extent is None:
            raise ProfileError("give band_limit or extent for the classical spectrum")
        support = (0.0, math.inf)
        ext = extent / math.pi
    spec = Profile(lambda x: c * np.asarray(f(math.pi * x)), kind="spectral", tag=name,
                   support=support, breakpoints=[b / math.pi for b in breakpoints], extent=ext)
    phi = ScalingFunction(spec, None, classical, False, name)
    # weighted L^2 norm must be finite; compare the last half of the range with the total
    lam, w = spectral_rule(phi)
    dens = np.abs(spec(lam)) ** 2 * _OMEGA * lam ** 2 * w
    total = dens.sum()
    if not math.isfinite(total):
        raise ProfileError("weighted norm of the spectrum diverges")
    if not phi.band_limited:
        upper_half = dens[lam > 0.5 * phi.upper].sum()
        if upper_half > 0.5 * total:
            raise ProfileError("weighted norm of the spectrum does not converge on the given extent")
    P = periodize(phi, 1024, n_max)
    A, B = riesz_bounds(P)
    if A <= 0.0:
        raise RieszError("spectrum vanishes: the translates do not form a Riesz basis")
    phi.orthonormal = bool(np.max(np.abs(P.values - 1.0)) < tol)
    return phi


# -- periodization and orthogonalization --------------------------------

def _default_nmax(phi: ScalingFunction) -> int:
    if phi.band_limited:
        return max(1, math.ceil((phi.upper + 1.0) / 2.0))
    return DEFAULT_NMAX


def periodization_at(phi, lam, n_max: int | None = None, fold_input: bool = True):
    """Truncated lattice sum sum_{|n| <= n_max} |phi^(lam + 2n)|^2.

    With ``fold_input`` the argument is first reduced to [0, 1], which makes
    the truncated sum exactly even and 2-periodic.
    """
    n_max = _default_nmax(phi) if n_max is None else int(n_max)
    lam = np.asarray(lam, dtype=float)
    x = fold(lam) if fold_input else lam
    n = np.arange(-n_max, n_max + 1)
    shifted = x[..., None] + 2.0 * n
    vals = np.abs(phi(shifted)) ** 2
    return vals.sum(axis=-1)


def periodize(phi, grid_pts: int = 4096, n_max: int | None = None) -> PeriodizationProfile:
    """P_phi on the ``grid_pts`` cell midpoints of a uniform partition of [0, 1].

    Midpoints keep the samples off lam = 0 and lam = 1, where spectra with
    a jump at an integer take a one-sided value.

    Band-limited spectra use the exact number of lattice terms; otherwise
    ``n_max`` defaults to 64 and the neglected tail is estimated from the
    decay of the last two terms.
    """
    n_max = _default_nmax(phi) if n_max is None else int(n_max)
    lam = (np.arange(int(grid_pts)) + 0.5) / int(grid_pts)
    vals = periodization_at(phi, lam, n_max)
    tail = 0.0
    if not phi.band_limited:
        far = np.abs(phi(2.0 * n_max + lam)) ** 2
        near = np.abs(phi(2.0 * (n_max - 1) + lam)) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            # power-law decay |phi^|^2 ~ C lam^-p; tail ~ 2 * last * n / (p - 1)
            p = np.log(near / far) / np.log(n_max / (n_max - 1.0))
            est = np.where((p > 1.0) & np.isfinite(p), 2.0 * far * n_max / (p - 1.0), np.inf)
        tail = float(np.max(est))
    return PeriodizationProfile(lam, vals, n_max, tail)


def riesz_bounds(P: PeriodizationProfile):
    """(A, B) = (min P_phi, max P_phi) over the sample grid."""
    if P.values.size == 0:
        raise ValueError("empty periodization profile")
    return float(np.min(P.values)), float(np.max(P.values))


def orthogonalize(phi: ScalingFunction, n_max: int | None = None, tol: float = 1e-12) -> ScalingFunction:
    """phi*^ = phi^ / sqrt(P_phi), whose translates are orthonormal."""
    n_max = _default_nmax(phi) if n_max is None else int(n_max)
    A, _ = riesz_bounds(periodize(phi, 4096, n_max))
    if A <= tol:
        raise RieszError(f"lower Riesz bound {A:g} vanishes; cannot orthogonalize")
    base = phi.spectral

    def spec_fn(x):
        num = np.asarray(base(x))
        den = np.sqrt(periodization_at(phi, x, n_max))
        # P_phi vanishes only on a null set where phi^ does too, e.g. lam = 1 for shannon
        out = np.zeros(np.broadcast(num, den).shape, dtype=np.result_type(num, float))
        np.divide(num, den, out=out, where=den > 0)
        return out if out.ndim else out[()]

    spec = Profile(spec_fn, kind="spectral", tag="derived", support=base.support,
                   breakpoints=base.breakpoints, extent=base.extent)
    return ScalingFunction(spec, None, None, True, f"{phi.name}*", {"n_max": n_max, "from": phi.name})


# -- bases and Gram matrices --------------------------------------------

def _rho(k: int, lam):
    return fourier_bessel_norm(0.5, k) * np.sinc(k * np.asarray(lam, dtype=float))


def basis_spectrum(phi, j: int, k: int) -> Profile:
    """phi_{j,k}^(lam) = 2^(-3j/2) rho_k(2^-j lam) phi^(2^-j lam) as a closed-form spectral profile."""
    if int(k) != k or k < 1:
        raise ValueError("translation index k must be a positive integer")
    s = 2.0 ** j
    c = s ** -1.5

    def fn(x):
        y = x / s
        return c * _rho(k, y) * phi(y)

    sp = phi.spectral
    ext = None if sp.extent is None else sp.extent * s
    return Profile(fn, kind="spectral", tag="derived", params={"j": j, "k": k},
                   support=(sp.support[0] * s, sp.support[1] * s),
                   breakpoints=[b * s for b in sp.breakpoints], extent=ext)


def _classical_translate(phi_R, j, k, r):
    x = (2.0 ** j) * np.asarray(r, dtype=float)
    c = (2.0 * math.pi) ** -0.25 * 8.0 ** (j / 2.0)
    out = np.empty(x.shape, dtype=float)
    small = np.abs(x) < 1e-6
    xl = x[~small]
    out[~small] = c * (phi_R(xl / math.pi - k) - phi_R(xl / math.pi + k)) / xl
    if small.any():
        # limit -(2/pi) phi_R'(k), derivative by a central difference
        h = 1e-5
        d = (phi_R(np.array([k + h])) - phi_R(np.array([k - h])))[0] / (2 * h)
        out[small] = -c * 2.0 / math.pi * d
    return out


def translate_basis(phi: ScalingFunction, j: int, k: int, grid: RadialGrid | None = None,
                    points=None, path: str = "spectral") -> Profile:
    """phi_{j,k} = D_{2^-j}(M_k T^(k) phi) on the radial side.

    ``path="spectral"`` inverts rho_k phi^ with the index-1/2 Hankel
    transform; ``path="classical"`` uses the closed form
    (2 pi)^(-1/4) x^-1 (phi_R(x/pi - k) - phi_R(x/pi + k)) in x = 2^j r.
    Returns a profile sampled on ``grid`` (or values at ``points``).
    """
    if (grid is None) == (points is None):
        raise ValueError("give exactly one of grid or points")
    r = grid.points if grid is not None else np.asarray(points, dtype=float)
    if path == "spectral":
        vals = hankel_half_at(basis_spectrum(phi, j, k), r)
    elif path == "classical":
        if phi.classical is None:
            raise ValueError(f"scaling function {phi.name!r} has no classical origin attached")
        vals = _classical_translate(phi.classical, j, k, r)
    else:
        raise ValueError("path must be 'spectral' or 'classical'")
    if grid is None:
        return vals
    return Profile(grid=grid, values=vals, kind="radial", tag="derived", params={"j": j, "k": k})


def spectral_rule(*items, max_width: float = 0.125, order: int = 16):
    """Nodes and dlam weights covering the spectral supports of the given profiles/functions."""
    profs = [it.spectral if isinstance(it, ScalingFunction) else it for it in items]
    hi = max(p.upper for p in profs)
    bps = sorted({b for p in profs for b in p.breakpoints})
    return panel_rule(panel_edges(0.0, hi, bps, max_width=max_width), order)


def spectral_inner(F: Profile, G: Profile, **kw) -> complex:
    """<f, g> = int F conj(G) d omega_{1/2}(lam) for spectra F, G."""
    lam, w = spectral_rule(F, G, **kw)
    lo = max(F.support[0], G.support[0])
    hi = min(F.upper, G.upper)
    keep = (lam >= lo) & (lam <= hi)
    lam, w = lam[keep], w[keep]
    return complex(np.sum(F(lam) * np.conj(G(lam)) * _OMEGA * lam ** 2 * w))


def spectral_gram(spectra, **kw) -> np.ndarray:
    """Gram matrix <f_a, f_b> of a list of spectral profiles."""
    lam, w = spectral_rule(*spectra, **kw)
    V = np.array([np.asarray(F(lam), dtype=complex) for F in spectra])
    Wt = V * (_OMEGA * lam ** 2 * w)
    return Wt @ V.conj().T


def gram_matrix(phi: ScalingFunction, K: int = 8, j: int = 0) -> np.ndarray:
    """<phi_{j,k}, phi_{j,l}> for k, l = 1..K."""
    return spectral_gram([basis_spectrum(phi, j, k) for k in range(1, K + 1)])


# -- filter function ----------------------------------------------------

def _filter_breakpoints(phi):
    pts = set()
    for b in phi.breakpoints:
        for v in (b, b / 2.0):
            f = float(fold(v))
            pts.update((f, 1.0 - f))
    return tuple(sorted(p for p in pts if 0.0 < p < 1.0))


def _ratio_filter(phi, eps):
    """Pointwise G from phi^(2 lam) / phi^(lam) with the orthonormal completion."""
    probe_hi = phi.upper
    probe = np.linspace(0.0, probe_hi, 8193)
    thr = eps * float(np.max(np.abs(phi(probe))))
    complete = phi.orthonormal

    def ratio(l):
        den = phi(l)
        ok = np.abs(den) > thr
        out = np.zeros(l.shape, dtype=np.result_type(den, float))
        out[ok] = phi(2.0 * l[ok]) / den[ok]
        return out, ok

    def G(lam):
        lam = np.asarray(lam, dtype=float)
        l = fold(lam)
        out, ok = ratio(l)
        if complete and not ok.all():
            m = 1.0 - l[~ok]
            mirror, ok_m = ratio(m)
            fill = np.where(ok_m, np.sqrt(np.maximum(0.0, 1.0 - np.abs(mirror) ** 2)), 0.0)
            out[~ok] = fill
        if np.iscomplexobj(out) and not np.any(out.imag):
            out = out.real
        return out

    def mask(lam):
        l = fold(np.asarray(lam, dtype=float))
        _, ok = ratio(l)
        if complete:
            _, ok_m = ratio(1.0 - l)
            return ok | ok_m
        return ok

    return G, mask, thr


def extract_filter(phi: ScalingFunction, grid_pts: int = 4096, n_coeffs: int = 64, eps: float = 1e-8,
                   tol: float = 1e-6) -> CosineFilter:
    """Filter function G with phi^(2 lam) = G(lam) phi^(lam) and its cosine coefficients.

    G is the ratio where |phi^(lam)| > eps max|phi^|; elsewhere, for
    orthonormal phi, the completion |G(lam)|^2 = 1 - |G(lam + 1)|^2 with a
    nonnegative real value; remaining points are set to 0.  Coefficients
    g_0..g_{n_coeffs} come from Gauss-Legendre panels (``grid_pts`` nodes)
    aligned with the jumps of G.

    Raises
    ------
    FilterError
        If the two-scale relation fails by more than ``tol`` max|phi^| on
        a ``grid_pts`` grid covering the spectral support.
    """
    G, mask, thr = _ratio_filter(phi, eps)
    lam = np.linspace(0.0, max(2.0, phi.upper), grid_pts)
    scale = float(np.max(np.abs(phi(lam)))) or 1.0
    resid = float(np.max(np.abs(phi(2.0 * lam) - G(lam) * phi(lam)))) / scale
    if resid > tol:
        raise FilterError(f"two-scale residual {resid:.3g} exceeds {tol:g}: not a scaling function")
    bps = _filter_breakpoints(phi)
    g = cosine_coefficients(G, n_coeffs, bps, n_nodes=grid_pts)
    filt = CosineFilter(g, orthonormal=phi.orthonormal, exact=G, name=phi.name, breakpoints=bps)
    filt.mask = mask
    filt.two_scale_residual = resid
    return filt


def gamma_from_filter(G) -> object:
    """gamma(lam) = G(lam) sin(2 pi lam), the two-scale symbol in S.

    A CosineFilter with coefficients g_n gives an exact finite sine series
    sum_n (g_n / 2)(s_{n+2} - s_{n-2}) when no closed form is attached.
    """
    if isinstance(G, CosineFilter) and G.exact is None:
        N = G.N
        a = np.zeros(N + 2, dtype=complex)
        for n, gn in enumerate(G.g):
            a[n + 2 - 1] += gn / 2.0
            m = n - 2
            if m > 0:
                a[m - 1] -= gn / 2.0
            elif m < 0:
                a[-m - 1] += gn / 2.0
        return SineSeries(a)
    g_fn = G if not isinstance(G, CosineFilter) else G.exact

    def gamma(lam):
        lam = np.asarray(lam, dtype=float)
        return g_fn(lam) * np.sin(2.0 * np.pi * lam)

    return gamma


def _spectral_grid(phi, n_points):
    return np.linspace(0.0, max(2.0, phi.upper), n_points)


def two_scale_check(phi: ScalingFunction, gamma=None, n_points: int = 8192) -> float:
    """sup |sin(2 pi lam) phi^(2 lam) - gamma(lam) phi^(lam)| over the spectral grid.

    ``gamma`` defaults to G sin(2 pi lam) with G extracted from phi.
    """
    if gamma is None:
        gamma = gamma_from_filter(extract_filter(phi))
    lam = _spectral_grid(phi, n_points)
    lhs = np.sin(2.0 * np.pi * lam) * phi(2.0 * lam)
    rhs = np.asarray(gamma(lam)) * phi(lam)
    return float(np.max(np.abs(lhs - rhs)))


def chebyshev_check(phi: ScalingFunction, k: int, gamma=None, n_points: int = 8192) -> float:
    """sup |sin(2k pi lam) phi^(2 lam) - k gamma(lam) U_{k-1}(cos 2 pi lam) phi^(lam)|."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if gamma is None:
        gamma = gamma_from_filter(extract_filter(phi))
    lam = _spectral_grid(phi, n_points)
    u = chebyshev_u(k - 1, np.clip(np.cos(2.0 * np.pi * lam), -1.0, 1.0))
    lhs = np.sin(2.0 * k * np.pi * lam) * phi(2.0 * lam)
    rhs = k * np.asarray(gamma(lam)) * u * phi(lam)
    return float(np.max(np.abs(lhs - rhs)))


def validate_mra(phi: ScalingFunction, K: int = 8, grid_pts: int = 4096, tol: float = 1e-6) -> dict:
    """Report on the MRA conditions for ``phi``.

    Keys: ``riesz`` {A, B}, ``rb`` (A > 0 and B finite),
    ``two_scale_residual``, ``phi_hat_at_zero``, ``orthonormal_at_zero``
    (|phi^(0)| = 1), ``gram_deviation`` (orthonormal phi only), ``passed``.
    """
    P = periodize(phi, grid_pts)
    A, B = riesz_bounds(P)
    rb = A > tol and math.isfinite(B)
    report = {
        "riesz": {"A": A, "B": B},
        "rb": bool(rb),
        "periodization_deviation": float(np.max(np.abs(P.values - 1.0))),
        "phi_hat_at_zero": float(abs(complex(phi(0.0)))),
        "two_scale_residual": None,
        "gram_deviation": None,
    }
    report["generates_mra"] = bool(rb and report["phi_hat_at_zero"] > tol)
    if rb:
        try:
            report["two_scale_residual"] = two_scale_check(phi, n_points=2 * grid_pts)
        except FilterError as exc:
            report["two_scale_residual"] = float("inf")
            report["filter_error"] = str(exc)
    if phi.orthonormal:
        report["orthonormal_at_zero"] = bool(abs(report["phi_hat_at_zero"] - 1.0) < tol)
        report["gram_deviation"] = float(np.max(np.abs(gram_matrix(phi, K) - np.eye(K))))
    report["passed"] = bool(
        report["generates_mra"]
        and report["two_scale_residual"] is not None
        and report["two_scale_residual"] < tol
        and (not phi.orthonormal or (report["gram_deviation"] < tol and report["orthonormal_at_zero"]))
    )
    return report


def shift_invariance_defect(phi: ScalingFunction, k: int = 1, shift: int = 1, K: int = 64) -> float:
    """Relative distance of T^(shift) phi_{0,k} from V_0, measured spectrally.

    V_0 consists of spectra beta(lam) phi^(lam) / lam with beta in S.  The
    function lam (T^(shift) phi_{0,k})^(lam) is projected in L^2[0, upper]
    onto span{s_m phi^ : m <= K}; the relative residual is returned.  When
    |phi^| = 1 on [0, 1] and 0 beyond this is the L^2[0, 1] projection of the
    ratio onto s_1..s_K.
    """
    lam, w = spectral_rule(phi, max_width=1.0 / 64)
    target = lam * np.sinc(shift * lam) * _rho(k, lam) * phi(lam)
    m = np.arange(1, K + 1)
    basis = SQRT2 * np.sin(np.pi * np.outer(lam, m)) * phi(lam)[:, None]
    sw = np.sqrt(w)
    coef, *_ = np.linalg.lstsq(basis * sw[:, None], target * sw, rcond=None)
    resid = np.linalg.norm((basis @ coef - target) * sw)
    return float(resid / np.linalg.norm(target * sw))
