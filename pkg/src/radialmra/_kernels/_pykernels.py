"""numpy implementations of the hot loops; used when the extension is absent."""
import numpy as np

_CHUNK = 1 << 22
_threads = 1


def set_threads(n):
    """Recorded only; the numpy kernels leave threading to BLAS."""
    global _threads
    _threads = max(int(n), 1)


def get_threads():
    return _threads


def sine_sum(lam, r, g):
    """out[j] = sum_i sin(lam[j] r[i]) g[i]."""
    lam = np.ascontiguousarray(lam, dtype=float)
    r = np.ascontiguousarray(r, dtype=float)
    g = np.asarray(g, dtype=complex)
    out = np.zeros(lam.shape[0], dtype=complex)
    step = max(1, _CHUNK // max(r.shape[0], 1))
    for s in range(0, lam.shape[0], step):
        out[s:s + step] = np.sin(np.outer(lam[s:s + step], r)) @ g
    return out


def _padded(g, n):
    out = np.zeros(n, dtype=complex)
    m = min(len(g), n)
    out[:m] = g[:m]
    return out


def _q_vals(gp, ell, k):
    first = np.where(2 * ell < k, k - 2 * ell, 2 * ell - k)
    val = gp[first] - gp[2 * ell + k]
    val = np.where(2 * ell == k, 2 * gp[0] - gp[4 * ell], val)
    return np.conj(val)


def _r_vals(gp, ell, k):
    sign = np.where((k - 1) % 2 == 0, 1.0, -1.0)
    val = sign * (gp[np.abs(k - 2 * ell + 1)] - gp[k + 2 * ell - 1])
    return np.where(2 * ell - 1 == k, 2 * gp[0] - gp[4 * ell - 2], val)


def q_table(g, n_rows, n_cols):
    """Dense q[l-1, k-1] for l = 1..n_rows, k = 1..n_cols."""
    ell = np.arange(1, n_rows + 1)[:, None]
    k = np.arange(1, n_cols + 1)[None, :]
    return _q_vals(_padded(np.asarray(g, dtype=complex), 4 * n_rows + 2 * n_cols + 2), ell, k)


def r_table(g, n_rows, n_cols):
    ell = np.arange(1, n_rows + 1)[:, None]
    k = np.arange(1, n_cols + 1)[None, :]
    return _r_vals(_padded(np.asarray(g, dtype=complex), 4 * n_rows + 2 * n_cols + 2), ell, k)


def _band(g, n_rows, K, offset):
    """Nonzero entries of row l sit at k = 2l - offset + m, |m| <= N."""
    N = len(g) - 1
    ell = np.arange(1, n_rows + 1)[:, None]
    k = 2 * ell - offset + np.arange(-N, N + 1)[None, :]
    valid = (k >= 1) & (k <= K)
    return ell, np.clip(k, 1, K), valid, _padded(np.asarray(g, dtype=complex), 4 * n_rows + 2 * K + 2)


def qr_decompose(g, c, n_out):
    c = np.asarray(c, dtype=complex)
    K = c.shape[0]
    ell, k, valid, gp = _band(g, n_out, K, 0)
    a = np.sum(np.where(valid, _q_vals(gp, ell, k) * c[k - 1], 0.0), axis=1)
    ell, k, valid, gp = _band(g, n_out, K, 1)
    d = np.sum(np.where(valid, _r_vals(gp, ell, k) * c[k - 1], 0.0), axis=1)
    return a, d


def _scatter(k, valid, w, K):
    idx = (k - 1)[valid]
    w = w[valid]
    return np.bincount(idx, w.real, K) + 1j * np.bincount(idx, w.imag, K)


def qr_reconstruct(g, a, d, K):
    a = np.asarray(a, dtype=complex)
    d = np.asarray(d, dtype=complex)
    ell, k, valid, gp = _band(g, a.shape[0], K, 0)
    out = _scatter(k, valid, np.conj(_q_vals(gp, ell, k)) * a[:, None], K)
    ell, k, valid, gp = _band(g, d.shape[0], K, 1)
    out += _scatter(k, valid, np.conj(_r_vals(gp, ell, k)) * d[:, None], K)
    return out
