"""Fast radial wavelet transform driven by the cosine coefficients g_n of G.

One decomposition step maps c^(j) to

    c_l^(j-1) = sum_k c_k^(j) q_l^(k),     d_l^(j-1) = sum_k c_k^(j) r_l^(k),

and reconstruction applies the adjoint,

    c_k^(j) = sum_l c_l^(j-1) conj(q_l^(k)) + sum_l d_l^(j-1) conj(r_l^(k)).

The coefficients q, r are finite differences of the g_n (see
:func:`qr_coefficients`).  Far from the origin they reduce to the taps h_k of
a classical two-channel filter bank.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._kernels import _pykernels
from .filters import CosineFilter, FilterError
from .mra import ScalingFunction, basis_spectrum, spectral_rule
from .profiles import Profile
from .quadrature import panel_edges, panel_rule

__all__ = [
    "CoefficientPyramid",
    "PyramidError",
    "qr_coefficients",
    "q_coefficient",
    "r_coefficient",
    "q_table",
    "r_table",
    "output_length",
    "project",
    "decompose",
    "reconstruct",
    "classical_tail_check",
    "trig_integral",
    "trig_integral_formula",
]

_OMEGA = math.sqrt(2.0 / math.pi)


class PyramidError(ValueError):
    """Inconsistent coefficient pyramid."""


def _check_index(name, v):
    if int(v) != v or v < 1:
        raise ValueError(f"{name} must be a positive integer, got {v}")
    return int(v)


def q_coefficient(g: CosineFilter, ell: int, k: int) -> complex:
    ell, k = _check_index("ell", ell), _check_index("k", k)
    c = g.coeff
    if 2 * ell < k:
        v = c(k - 2 * ell) - c(2 * ell + k)
    elif 2 * ell == k:
        v = 2.0 * c(0) - c(4 * ell)
    else:
        v = c(2 * ell - k) - c(2 * ell + k)
    return complex(np.conj(v))


def r_coefficient(g: CosineFilter, ell: int, k: int) -> complex:
    ell, k = _check_index("ell", ell), _check_index("k", k)
    c = g.coeff
    sign = 1.0 if (k - 1) % 2 == 0 else -1.0
    if 2 * ell - 1 < k:
        return complex(sign * (c(k - 2 * ell + 1) - c(k + 2 * ell - 1)))
    if 2 * ell - 1 == k:
        return complex(2.0 * c(0) - c(4 * ell - 2))
    return complex(sign * (c(2 * ell - 1 - k) - c(2 * ell - 1 + k)))


def qr_coefficients(g: CosineFilter, ell: int, k: int):
    """(q_l^(k), r_l^(k)) = (<phi_{1,k}, phi_{0,l}>, <phi_{1,k}, psi_{0,l}>) from the table."""
    return q_coefficient(g, ell, k), r_coefficient(g, ell, k)


def q_table(g: CosineFilter, n_rows: int, n_cols: int) -> np.ndarray:
    """Dense Q[l-1, k-1] = q_l^(k)."""
    return _pykernels.q_table(g.g, n_rows, n_cols)


def r_table(g: CosineFilter, n_rows: int, n_cols: int) -> np.ndarray:
    return _pykernels.r_table(g.g, n_rows, n_cols)


def output_length(K: int, N: int) -> int:
    """ceil((K + N) / 2): rows beyond it see no input coefficient."""
    return (K + N + 1) // 2


@dataclass
class CoefficientPyramid:
    """Approximation and detail coefficients over ``depth`` levels below ``j_top``.

    ``approx[i]`` and ``details[i]`` hold c^(j_top-1-i) and d^(j_top-1-i);
    ``lengths[i]`` is the input length K at step i (``lengths[0]`` is the
    length of c^(j_top)).
    """

    j_top: int
    depth: int
    lengths: list
    approx: list = field(default_factory=list)
    details: list = field(default_factory=list)

    def __post_init__(self):
        if self.depth < 0 or len(self.details) != self.depth or len(self.approx) != self.depth:
            raise PyramidError("pyramid needs one approximation and one detail array per level")
        if len(self.lengths) != self.depth:
            raise PyramidError("pyramid needs one input length per level")
        for a in list(self.approx) + list(self.details):
            if not np.all(np.isfinite(a)):
                raise PyramidError("pyramid coefficients must be finite")
        for i in range(self.depth - 1):
            if self.lengths[i + 1] != len(self.approx[i]):
                raise PyramidError("level lengths are inconsistent")

    @property
    def coarsest(self) -> np.ndarray:
        return self.approx[-1]

    def energy(self) -> float:
        return float(np.sum(np.abs(self.coarsest) ** 2) + sum(np.sum(np.abs(d) ** 2) for d in self.details))


def _require_orthonormal(g: CosineFilter):
    if not g.orthonormal:
        raise FilterError("decomposition needs an orthonormal filter")


def decompose(c_top, g: CosineFilter, depth: int = 1, j_top: int = 0) -> CoefficientPyramid:
    """Split c^(j_top) into ``depth`` levels of approximation and detail coefficients.

    Each level has ceil((K + N) / 2) entries, enough to hold every nonzero
    product.  Sums run over the stored coefficients only (zero extension).
    """
    _require_orthonormal(g)
    c = np.asarray(c_top, dtype=complex).ravel()
    if c.size == 0:
        raise PyramidError("empty coefficient vector")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    lengths, approx, details = [], [], []
    for _ in range(depth):
        n_out = output_length(c.size, g.N)
        a, d = _kernels.qr_decompose(g.g, c, n_out)
        lengths.append(c.size)
        approx.append(np.asarray(a))
        details.append(np.asarray(d))
        c = approx[-1]
    return CoefficientPyramid(j_top, depth, lengths, approx, details)


def reconstruct(pyramid: CoefficientPyramid, g: CosineFilter) -> np.ndarray:
    """Invert :func:`decompose` level by level, returning c^(j_top) of the recorded length."""
    _require_orthonormal(g)
    c = np.asarray(pyramid.coarsest, dtype=complex)
    for i in reversed(range(pyramid.depth)):
        d = np.asarray(pyramid.details[i], dtype=complex)
        if d.size != c.size:
            raise PyramidError("approximation and detail arrays differ in length")
        c = np.asarray(_kernels.qr_reconstruct(g.g, c, d, int(pyramid.lengths[i])))
    return c


def project(f, phi: ScalingFunction, j: int, K: int, max_width: float = 1.0 / 32) -> np.ndarray:
    """c_k^(j) = <f, phi_{j,k}>, k = 1..K, by quadrature on the transform side.

    ``f`` is the spectrum of the function (a spectral Profile or callable).
    """
    if not phi.orthonormal:
        raise FilterError("projection coefficients need an orthonormal scaling function")
    spectra = [basis_spectrum(phi, j, k) for k in range(1, K + 1)]
    if isinstance(f, Profile):
        lam, w = spectral_rule(*spectra, max_width=max_width * 2.0 ** max(j, 0))
        keep = lam <= f.upper
        lam, w = lam[keep], w[keep]
    else:
        lam, w = spectral_rule(*spectra, max_width=max_width * 2.0 ** max(j, 0))
    fv = np.asarray(f(lam), dtype=complex) * _OMEGA * lam ** 2 * w
    B = np.array([np.asarray(s(lam), dtype=complex) for s in spectra])
    return B.conj() @ fv


def classical_tail_check(g: CosineFilter, ell: int, k: int | None = None, which: str = "both") -> bool:
    """Whether the table rows far from the origin equal the classical taps exactly.

    For 2l > N: q_l^(2l+k) = conj(h_k); for 2l - 1 > N: r_l^(2l-1+k) = (-1)^k h_k,
    for k = -N..N, and both vanish for |k| > N.  ``k=None`` checks the
    whole band plus one index on either side.
    """
    ell = _check_index("ell", ell)
    N = g.N
    if which not in ("q", "r", "both"):
        raise ValueError("which must be 'q', 'r' or 'both'")
    if which in ("q", "both") and not 2 * ell > N:
        raise ValueError(f"the q reduction needs 2l > N ({2 * ell} <= {N})")
    if which in ("r", "both") and not 2 * ell - 1 > N:
        raise ValueError(f"the r reduction needs 2l - 1 > N ({2 * ell - 1} <= {N})")
    ks = range(-N - 1, N + 2) if k is None else [int(k)]
    ok = True
    for kk in ks:
        if which in ("q", "both") and 2 * ell + kk >= 1:
            ok &= q_coefficient(g, ell, 2 * ell + kk) == complex(np.conj(g.tap(kk)))
        if which in ("r", "both") and 2 * ell - 1 + kk >= 1:
            ok &= r_coefficient(g, ell, 2 * ell - 1 + kk) == complex((-1) ** (kk % 2) * g.tap(kk))
    return bool(ok)


def trig_integral(k: int, t: int, n: int, n_nodes: int = 64) -> float:
    """int_0^1 sin(k pi lam) sin(t pi lam) cos(n pi lam) dlam by Gauss-Legendre."""
    lam, w = panel_rule(panel_edges(0.0, 1.0, max_width=1.0 / 4), n_nodes // 4 if n_nodes >= 8 else 2)
    return float(np.sum(np.sin(k * np.pi * lam) * np.sin(t * np.pi * lam) * np.cos(n * np.pi * lam) * w))


def trig_integral_formula(k: int, t: int, n: int) -> float:
    """Closed form of :func:`trig_integral` for positive k, t and n >= 0."""
    if n > 0:
        return 0.25 * ((n == abs(t - k)) - (n == t + k))
    return 0.25 * (2 * (t == k) - (t + k == 0))
