"""Continuous wavelet transform and Bessel frames on the hypergroup of index alpha.

Everything is evaluated on the transform side.  With the Hankel transform
of index alpha the analyzing family pi(r, a) g = T_r D_a g has spectrum
j_alpha(lam r) a^(alpha+1) g^(a lam), so

    Psi_g f(r, a) = int f^(lam) j_alpha(lam r) a^(alpha+1) conj(g^(a lam)) d omega_alpha(lam).

The energy of Psi_g f against a^-(2 alpha + 3) da d omega_alpha(r) equals
C_g ||f||^2 with C_g = int |g^(lam)|^2 dlam / lam.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .hankel import hankel_at
from .profiles import Profile
from .quadrature import panel_edges, panel_rule
from .special import _check_alpha, bessel_j, bessel_zero, fourier_bessel_norm, haar_weight

__all__ = [
    "NotAdmissibleError",
    "SupportError",
    "admissibility",
    "CwtGrid",
    "cwt",
    "cwt_energy",
    "cwt_inner",
    "FrameSpec",
    "Frame",
    "build_frame",
    "frame_bounds",
    "frame_energy",
    "lattice_bounds",
    "random_band_limited",
]


class NotAdmissibleError(ValueError):
    """int |g^|^2 dlam / lam diverges."""


class SupportError(ValueError):
    """The analyzing spectrum does not vanish beyond the band limit."""


def _spectrum(p: Profile, alpha: float) -> Profile:
    """The transform-side profile of ``p`` (itself if already spectral)."""
    if p.kind == "spectral":
        return p
    ext = p.upper

    def fn(lam):
        lam = np.asarray(lam, dtype=float)
        return hankel_at(alpha, p, lam.ravel()).reshape(lam.shape)

    return Profile(fn, kind="spectral", tag="derived", extent=ext)


def _log_rule(lo, hi, breakpoints=(), per_decade=8, order=16):
    """Gauss-Legendre in u = ln(lam) on [lo, hi]; returns lam nodes and dlam/lam weights."""
    ul, uh = math.log(lo), math.log(hi)
    bps = [math.log(b) for b in breakpoints if lo < b < hi]
    width = math.log(10.0) / per_decade
    u, w = panel_rule(panel_edges(ul, uh, bps, max_width=width), order)
    return np.exp(u), w


def admissibility(g: Profile, alpha: float = 0.5, floor: float = 1e-12, decades: int = 8) -> float:
    """C_g = int_0^inf |g^(lam)|^2 dlam / lam.

    ``g`` is a spectral profile (or a radial one, transformed by quadrature).
    The integrand near lam = 0 is checked decade by decade; a contribution
    that does not decay signals a logarithmic divergence.

    Raises
    ------
    NotAdmissibleError
    """
    alpha = _check_alpha(alpha)
    G = _spectrum(g, alpha)
    lo_s, hi = G.support[0], G.upper
    if hi <= 0:
        return 0.0
    lo = max(lo_s, floor)
    split = max(lo, min(1e-2 * hi, 1e-2))
    total = 0.0
    if split < hi:
        lam, w = _log_rule(split, hi, G.breakpoints)
        total = float(np.sum(np.abs(G(lam)) ** 2 * w))
    if lo < split:
        incs = []
        top = split
        for _ in range(decades):
            bottom = max(top / 10.0, lo)
            lam, w = _log_rule(bottom, top, G.breakpoints, per_decade=2)
            incs.append(float(np.sum(np.abs(G(lam)) ** 2 * w)))
            top = bottom
            if bottom <= lo:
                break
        total += sum(incs)
        if len(incs) >= 3 and incs[-1] > 1e-9 * max(total, 1e-300) and incs[-1] > 0.5 * incs[-2]:
            raise NotAdmissibleError(
                f"int |g^|^2 dlam/lam does not converge at lam -> 0 (last decade adds {incs[-1]:.3g})")
    return total


@dataclass
class CwtGrid:
    """Translation samples r_i, scale samples a_m and their quadrature weights.

    ``r_weights`` carry the Haar density, ``a_weights`` the factor
    a^-(2 alpha + 3) da.
    """

    r: np.ndarray
    a: np.ndarray
    r_weights: np.ndarray
    a_weights: np.ndarray
    alpha: float = 0.5

    def __post_init__(self):
        if np.any(self.r < 0) or np.any(self.a <= 0):
            raise ValueError("need r >= 0 and a > 0")
        if np.any(self.r_weights < 0) or np.any(self.a_weights <= 0):
            raise ValueError("quadrature weights must be positive")

    @classmethod
    def log_uniform(cls, r_max=40.0, n_r=1024, a_min=2.0 ** -6, a_max=2.0 ** 6, n_a=128, alpha=0.5):
        """Midpoint rule in r and in log(a)."""
        alpha = _check_alpha(alpha)
        h = r_max / n_r
        r = (np.arange(n_r) + 0.5) * h
        du = math.log(a_max / a_min) / n_a
        a = a_min * np.exp((np.arange(n_a) + 0.5) * du)
        # a^-(2 alpha + 3) da = a^-(2 alpha + 2) dlog(a)
        return cls(r, a, haar_weight(alpha, r) * h, a ** (-(2.0 * alpha + 2.0)) * du, alpha)

    def to_dict(self):
        return {"r": self.r.tolist(), "a": self.a.tolist(), "r_weights": self.r_weights.tolist(),
                "a_weights": self.a_weights.tolist(), "alpha": self.alpha}


def cwt(f: Profile, g: Profile, alpha: float, grid: CwtGrid, n_nodes: int = 256) -> np.ndarray:
    """Psi_g f(r_i, a_m) as an array of shape (len(r), len(a)).

    ``f`` and ``g`` may be radial or spectral profiles; radial ones are
    transformed by quadrature.  The lam-integral for each scale runs over the
    support of g^(a .) with up to ``n_nodes`` Gauss-Legendre nodes, fewer
    when the interval is short against the largest r.
    """
    alpha = _check_alpha(alpha)
    F, G = _spectrum(f, alpha), _spectrum(g, alpha)
    try:
        admissibility(G, alpha)
    except NotAdmissibleError as exc:
        warnings.warn(f"analyzing function is not admissible: {exc}", RuntimeWarning, stacklevel=2)
    glo, ghi = G.support[0], G.upper
    r = np.asarray(grid.r, dtype=float)
    out = np.zeros((r.size, grid.a.size), dtype=complex)
    order = 16
    r_top = float(r.max()) if r.size else 0.0
    for m, a in enumerate(grid.a):
        lo, hi = glo / a, min(ghi / a, F.upper)
        lo = max(lo, F.support[0])
        if hi <= lo:
            continue
        bps = [b / a for b in G.breakpoints] + list(F.breakpoints)
        # at most 6 rad of j(lam r) phase per panel, and no more than n_nodes nodes
        n_pan = min(max(1, n_nodes // order), max(1, math.ceil((hi - lo) * r_top / 6.0)))
        edges = panel_edges(lo, hi, bps, max_width=(hi - lo) / n_pan)
        lam, w = panel_rule(edges, order)
        integrand = F(lam) * a ** (alpha + 1.0) * np.conj(G(a * lam)) * haar_weight(alpha, lam) * w
        out[:, m] = bessel_j(alpha, np.outer(r, lam)) @ integrand
    return out


def _r_sum(dens, tail):
    raw = complex(dens.sum())
    half = complex(dens[: dens.size // 2].sum())
    if tail == "richardson":
        corrected = 2.0 * raw - half
    elif tail == "none":
        corrected = raw
    else:
        raise ValueError("tail must be 'richardson' or 'none'")
    return raw, half, corrected


def cwt_energy(values: np.ndarray, grid: CwtGrid, tail: str = "richardson") -> dict:
    """Discretized int int |Psi|^2 a^-(2 alpha + 3) da d omega(r).

    The r-integrand decays like r^-2, so truncation at R loses about c/R.
    ``tail="richardson"`` removes that term with 2 I(R) - I(R/2).

    Returns
    -------
    dict with ``raw``, ``corrected`` and ``half`` (the energy up to R/2).
    """
    dens = (np.abs(values) ** 2 @ grid.a_weights) * grid.r_weights
    raw, half, corrected = _r_sum(dens, tail)
    return {"raw": raw.real, "half": half.real, "corrected": corrected.real}


def cwt_inner(v1: np.ndarray, v2: np.ndarray, grid: CwtGrid, tail: str = "richardson") -> dict:
    """Polarized energy int int Psi_1 conj(Psi_2) d omega~, same layout as :func:`cwt_energy`."""
    if v1.shape != v2.shape:
        raise ValueError("transforms must share the grid")
    dens = ((v1 * np.conj(v2)) @ grid.a_weights) * grid.r_weights
    raw, half, corrected = _r_sum(dens, tail)
    return {"raw": raw, "half": half, "corrected": corrected}


# -- frames -------------------------------------------------------------

@dataclass
class FrameSpec:
    """Frame parameters: index, band limit l, dilation set Q and the count of spatial translates.

    The translation radii are r_n = nu_{alpha,n} / l.
    """

    alpha: float
    l: float
    Q: list
    n_max: int = 512

    def __post_init__(self):
        self.alpha = _check_alpha(self.alpha)
        if not self.l > 0:
            raise ValueError("band limit l must be positive")
        self.Q = [float(q) for q in self.Q]
        if not self.Q or any(q <= 0 for q in self.Q):
            raise ValueError("dilations must be positive")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError("n_max must be a positive integer")
        self.n_max = int(self.n_max)

    @classmethod
    def dyadic(cls, alpha=0.5, l=2.0, k0=3, n_max=512, base=2.0):
        return cls(alpha, l, [base ** k for k in range(-k0, k0 + 1)], n_max)

    @property
    def radii(self) -> np.ndarray:
        return np.array([bessel_zero(self.alpha, n) for n in range(1, self.n_max + 1)]) / self.l


@dataclass
class Frame:
    """Frame elements g_{n,q} = M_n T_{r_n q} D_q g, evaluated through their spectra."""

    g: Profile
    spec: FrameSpec
    support_excess: float = 0.0
    bounds: tuple = (math.nan,) * 4
    _nodes: dict = field(default_factory=dict, repr=False)

    def element_spectrum(self, n: int, q: float):
        """g_{n,q}^(lam) = rho_n(q lam / l) q^(alpha+1) g^(q lam)."""
        a, l = self.spec.alpha, self.spec.l
        nu, M = bessel_zero(a, n), fourier_bessel_norm(a, n)

        def fn(lam):
            lam = np.asarray(lam, dtype=float)
            return M * bessel_j(a, nu * q * lam / l) * q ** (a + 1.0) * self.g(q * lam)

        return fn

    def _fourier_bessel_table(self, x):
        key = (x.size, float(x.sum()), float(x[0]), float(x[-1]))
        if key not in self._nodes:
            if len(self._nodes) >= 8:
                self._nodes.clear()
            a = self.spec.alpha
            n = np.arange(1, self.spec.n_max + 1)
            nu = np.array([bessel_zero(a, k) for k in n])
            M = np.array([fourier_bessel_norm(a, k) for k in n])
            self._nodes[key] = M[:, None] * bessel_j(a, np.outer(nu, x))
        return self._nodes[key]

    def coefficients(self, f: Profile, q: float, n_nodes: int = 4096) -> np.ndarray:
        """<g_{n,q}, f> for n = 1..n_max.

        These are the Fourier-Bessel coefficients of x -> g^(l x) conj(f^(l x / q))
        on [0, 1], scaled by q^(alpha+1) (l/q)^(2 alpha + 2).
        """
        a, l = self.spec.alpha, self.spec.l
        F = _spectrum(f, a)
        bps = [b / l for b in self.g.breakpoints] + [b * q / l for b in F.breakpoints]
        bps += [self.g.support[0] / l, F.support[0] * q / l]
        if F.is_band_limited:
            bps.append(F.support[1] * q / l)
        x, w = panel_rule(panel_edges(0.0, 1.0, bps, max_width=16.0 / n_nodes), 16)
        h = self.g(l * x) * np.conj(F(l * x / q)) * haar_weight(a, x) * w
        return q ** (a + 1.0) * (l / q) ** (2.0 * a + 2.0) * (self._fourier_bessel_table(x) @ h)


def build_frame(g: Profile, spec: FrameSpec, tol: float = 1e-10, n_points: int = 4096) -> Frame:
    """Frame generated by ``g`` (spectral, or radial and transformed).

    The lattice-sum bounds from :func:`frame_bounds` are stored on the result.

    Raises
    ------
    SupportError
        When |g^| exceeds ``tol`` max|g^| beyond the band limit l.
    """
    G = _spectrum(g, spec.alpha)
    top = max(G.upper, spec.l) * 2.0
    lam = np.linspace(0.0, top, n_points)
    vals = np.abs(G(lam))
    peak = float(vals.max()) if vals.size else 0.0
    beyond = vals[lam > spec.l * (1 + 1e-12)]
    excess = float(beyond.max()) if beyond.size else 0.0
    if excess > tol * max(peak, 1e-300):
        raise SupportError(f"g^ is {excess:.3g} beyond the band limit l = {spec.l}")
    frame = Frame(G, spec, excess)
    if peak > 0:
        frame.bounds = frame_bounds(G, spec, n_points=n_points)
    else:
        frame.bounds = (0.0, 0.0, 0.0, 0.0)
    return frame


def frame_bounds(g: Profile, spec: FrameSpec, lam_range=None, n_points: int = 4096):
    """Estimate A, B of A <= sum_q |g^(q lam)|^2 <= B on a log-uniform lam grid.

    The default range is where the finite dilation set can cover:
    [lo / max Q, hi / min Q] for g^ supported in [lo, hi].  Returns
    (A, B, A l^(2 alpha + 2), B l^(2 alpha + 2)).
    """
    G = _spectrum(g, spec.alpha)
    if lam_range is None:
        lo = max(G.support[0], 1e-12)
        lam_range = (lo / max(spec.Q), G.upper / min(spec.Q))
    a, b = lam_range
    u = np.log(a) + (np.arange(n_points) + 0.5) / n_points * math.log(b / a)
    lam = np.exp(u)
    S = sum(np.abs(G(q * lam)) ** 2 for q in spec.Q)
    A, B = float(S.min()), float(S.max())
    c = spec.l ** (2.0 * spec.alpha + 2.0)
    return A, B, A * c, B * c


def frame_energy(f: Profile, g, spec: FrameSpec | None = None, n_max: int | None = None,
                 n_nodes: int = 4096) -> dict:
    """Partial frame energy sum_q sum_{n <= n_max} |<g_{n,q}, f>|^2 against ||f||^2.

    ``g`` is a :class:`Frame` or an analyzing profile (then ``spec`` is
    required).  Dilations q whose band q [0, l] misses the support of f^ add
    nothing and are skipped.  The neglected n-tail is estimated from the last
    quarter of coefficients assuming |c_n|^2 ~ C n^-2.
    """
    if isinstance(g, Frame):
        frame = g
        if n_max is not None and n_max != frame.spec.n_max:
            frame = Frame(frame.g, FrameSpec(frame.spec.alpha, frame.spec.l, frame.spec.Q, n_max))
    else:
        if spec is None:
            raise ValueError("a FrameSpec is needed with a bare analyzing profile")
        if n_max is not None:
            spec = FrameSpec(spec.alpha, spec.l, spec.Q, n_max)
        frame = build_frame(g, spec)
    a, l = frame.spec.alpha, frame.spec.l
    F = _spectrum(f, a)
    lo = max(F.support[0], 0.0)
    energy, tail = 0.0, 0.0
    for q in frame.spec.Q:
        if lo * q >= l or F.upper * q <= frame.g.support[0]:
            continue
        p = np.abs(frame.coefficients(F, q, n_nodes)) ** 2
        energy += float(p.sum())
        quarter = max(1, p.size // 4)
        tail += float(np.mean(p[-quarter:]) * p.size)
    lam, w = panel_rule(panel_edges(lo, F.upper, list(F.breakpoints), max_width=(F.upper - lo) / 256), 16)
    norm_sq = float(np.sum(np.abs(F(lam)) ** 2 * haar_weight(a, lam) * w))
    ratio = energy / norm_sq if norm_sq > 0 else 0.0
    return {"energy": energy, "norm_sq": norm_sq, "ratio": ratio, "tail_estimate": tail,
            "ratio_with_tail": (energy + tail) / norm_sq if norm_sq > 0 else 0.0}


def lattice_bounds(g: Profile, base: float, alpha: float = 0.5, n_points: int = 4096) -> dict:
    """Check sigma^2 <= sum_k |g^(base^k lam)|^2 <= M tau^2 for a lattice Q = {base^k}.

    sigma is the largest essential infimum of |g^| over an interval
    [base^n, base^(n+1)], tau = sup |g^|, and M is the largest number of
    dilates base^-k T of the support T that overlap.  The lattice sum is
    base-periodic in log(lam), so one period [1, base) is sampled.
    """
    if not base > 1:
        raise ValueError("lattice base must exceed 1")
    G = _spectrum(g, alpha)
    lo, hi = G.support[0], G.upper
    if not (lo > 0 and math.isfinite(hi)):
        raise SupportError("g^ must have compact support inside (0, inf)")
    t = (np.arange(n_points) + 0.5) / n_points
    lam = base ** t
    k = np.arange(math.floor(math.log(lo, base)) - 1, math.ceil(math.log(hi, base)) + 2)
    arg = np.outer(lam, base ** k.astype(float))
    vals = np.abs(G(arg)) ** 2
    S = vals.sum(axis=1)
    tau = float(np.sqrt(vals.max()))
    sigma = 0.0
    for n in k:
        seg = np.abs(G(base ** (n + t)))
        sigma = max(sigma, float(seg.min()))
    inside = (arg >= lo) & (arg <= hi)
    M = int(inside.sum(axis=1).max())
    ok = bool(np.all(S >= sigma ** 2 * (1 - 1e-12)) and np.all(S <= M * tau ** 2 * (1 + 1e-12)))
    return {"sigma": sigma, "tau": tau, "M": M, "S_min": float(S.min()), "S_max": float(S.max()),
            "holds": ok}


def random_band_limited(rng: np.random.Generator, lo: float = 0.5, hi: float = 4.0, n_modes: int = 6) -> Profile:
    """Smooth random spectrum supported in [lo, hi]: a bump times a random cosine sum."""
    c = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)
    m = np.arange(n_modes)
    width = hi - lo

    def fn(lam):
        x = (np.asarray(lam, dtype=float) - lo) / width
        inside = (x > 0) & (x < 1)
        bump = np.where(inside, np.exp(-1.0 / np.where(inside, x * (1 - x), 1.0)), 0.0)
        return bump * (np.cos(np.pi * np.multiply.outer(x, m)) @ c)

    return Profile(fn, kind="spectral", tag="random-band-limited", params={"lo": lo, "hi": hi},
                   support=(lo, hi))
