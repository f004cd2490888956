"""Reference values computed independently of the package.

scipy.special supplies Bessel functions and zeros, scipy.integrate.quad the
integrals; nothing here calls into radialmra.
"""
import math

import numpy as np
from scipy import integrate, special

OMEGA_HALF = math.sqrt(2.0 / math.pi)


def j_alpha(alpha, z):
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-6
    zs = np.where(small, 1.0, z)
    v = math.gamma(alpha + 1) * (zs / 2.0) ** (-alpha) * special.jv(alpha, zs)
    # two series terms are exact to rounding below 1e-6
    return np.where(small, 1.0 - z * z / (4.0 * (alpha + 1.0)), v)


def haar(alpha, r):
    return np.asarray(r, dtype=float) ** (2 * alpha + 1) / (2 ** alpha * math.gamma(alpha + 1))


def bessel_zero(alpha, n):
    if float(alpha).is_integer():
        return float(special.jn_zeros(int(alpha), n)[-1])
    # bracket between consecutive McMahon-spaced guesses and bisect J_alpha
    f = lambda x: special.jv(alpha, x)
    xs = np.linspace(0.5, (n + alpha / 2 + 2) * math.pi, 20000)
    v = f(xs)
    roots = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], v[:-1], v[1:]):
        if fa == 0 or fa * fb < 0:
            from scipy.optimize import brentq
            roots.append(brentq(f, a, b, xtol=1e-15))
    return roots[n - 1]


def quad(f, a, b, points=None, limit=400):
    val, _ = integrate.quad(f, a, b, points=points, limit=limit, epsabs=1e-13, epsrel=1e-12)
    return val


def gaussian_norm_sq(alpha):
    """int exp(-r^2) d omega_alpha = Gamma(alpha + 1) / (2^(alpha+1) Gamma(alpha+1)) = 2^-(alpha+1)."""
    return 2.0 ** -(alpha + 1)


def shannon_g(n):
    if n == 0:
        return 1.0 / (2 * math.sqrt(2))
    return math.sqrt(2) * math.sin(n * math.pi / 2) / (n * math.pi) if n % 2 else 0.0


def shannon_phi_radial(x):
    x = np.asarray(x, dtype=float)
    return OMEGA_HALF * (np.sin(x) - x * np.cos(x)) / x ** 3


def shannon_psi_radial(x):
    x = np.asarray(x, dtype=float)
    return OMEGA_HALF * (np.sin(2 * x) - np.sin(x) - 2 * x * np.cos(2 * x) + x * np.cos(x)) / x ** 3


def shannon_phi_translate(k, x):
    x = np.asarray(x, dtype=float)
    a, b = x - k * math.pi, x + k * math.pi
    return (2 * math.pi) ** -0.25 / x * (np.sin(a) / a - np.sin(b) / b)


def fb_norm_half(k):
    return 2 ** 0.25 * math.pi ** 1.25 * k


def shannon_phi_hat_jk(j, k, lam):
    """2^(-3j/2) M_k sinc(k 2^-j lam) chi_[0,1)(2^-j lam), numpy's normalized sinc."""
    y = lam / 2.0 ** j
    return 2.0 ** (-1.5 * j) * fb_norm_half(k) * np.sinc(k * y) * (y < 1)


def shannon_psi_hat_jk(j, k, lam):
    y = lam / 2.0 ** j
    m = 2 * k - 1
    return 2.0 ** (-1.5 * j) * fb_norm_half(m) / 2 * np.sinc(m * y / 2) * ((y >= 1) & (y < 2))


def weighted_inner_half(F, G, a, b, points=None):
    """int_a^b F conj(G) sqrt(2/pi) lam^2 dlam for real callables."""
    return quad(lambda t: F(t) * G(t) * OMEGA_HALF * t * t, a, b, points=points)


def meyer_nu(x, p=7):
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    # regularized incomplete beta I_x(p+1, p+1)
    return special.betainc(p + 1, p + 1, x)


def meyer_phi_hat(lam, p=7):
    lam = np.abs(np.asarray(lam, dtype=float))
    return np.where(lam <= 2 / 3, 1.0,
                    np.where(lam < 4 / 3, np.cos(np.pi / 2 * meyer_nu(1.5 * lam - 1, p)), 0.0))


def hat_periodization(lam, n_max=64):
    """Brute-force lattice sum of |sinc(lam/2)^2|^2 (numpy sinc)."""
    n = np.arange(-n_max, n_max + 1)
    return np.sum(np.sinc((np.asarray(lam)[..., None] + 2 * n) / 2) ** 4, axis=-1)


def q_dense(g, n_rows, n_cols):
    """q_l^(k) straight from the piecewise table, one entry at a time."""
    def c(n):
        return g[n] if 0 <= n < len(g) else 0.0

    Q = np.zeros((n_rows, n_cols), dtype=complex)
    for l in range(1, n_rows + 1):
        for k in range(1, n_cols + 1):
            if 2 * l < k:
                v = c(k - 2 * l) - c(2 * l + k)
            elif 2 * l == k:
                v = 2 * c(0) - c(4 * l)
            else:
                v = c(2 * l - k) - c(2 * l + k)
            Q[l - 1, k - 1] = np.conj(v)
    return Q


def r_dense(g, n_rows, n_cols):
    def c(n):
        return g[n] if 0 <= n < len(g) else 0.0

    R = np.zeros((n_rows, n_cols), dtype=complex)
    for l in range(1, n_rows + 1):
        for k in range(1, n_cols + 1):
            s = (-1) ** (k - 1)
            if 2 * l - 1 < k:
                v = s * (c(k - 2 * l + 1) - c(k + 2 * l - 1))
            elif 2 * l - 1 == k:
                v = 2 * c(0) - c(4 * l - 2)
            else:
                v = s * (c(2 * l - 1 - k) - c(2 * l - 1 + k))
            R[l - 1, k - 1] = v
    return R
