# cython: language_level=3
"""Compiled versions of the loops in ``_pykernels``.

Each output entry is accumulated in a fixed order, so results do not depend
on the thread count.
"""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sin

cnp.import_array()

cdef int _threads = 1


def set_threads(int n):
    global _threads
    _threads = n if n > 0 else 1


def get_threads():
    return _threads


def sine_sum(lam, r, g):
    """out[j] = sum_i sin(lam[j] r[i]) g[i]."""
    cdef double[::1] lv = np.ascontiguousarray(lam, dtype=np.float64)
    cdef double[::1] rv = np.ascontiguousarray(r, dtype=np.float64)
    gc = np.ascontiguousarray(g, dtype=np.complex128)
    cdef double[::1] gre = np.ascontiguousarray(gc.real)
    cdef double[::1] gim = np.ascontiguousarray(gc.imag)
    cdef Py_ssize_t m = lv.shape[0], n = rv.shape[0], j, i
    out_re = np.zeros(m)
    out_im = np.zeros(m)
    cdef double[::1] ore = out_re, oim = out_im
    cdef double s, acc_re, acc_im, x
    for j in prange(m, nogil=True, num_threads=_threads, schedule="static"):
        acc_re = 0.0
        acc_im = 0.0
        x = lv[j]
        for i in range(n):
            s = sin(x * rv[i])
            acc_re = acc_re + s * gre[i]
            acc_im = acc_im + s * gim[i]
        ore[j] = acc_re
        oim[j] = acc_im
    return out_re + 1j * out_im


cdef inline double complex _g(const double complex[::1] g, Py_ssize_t n) noexcept nogil:
    if n < 0 or n >= g.shape[0]:
        return 0.0
    return g[n]


cdef inline double complex _q(const double complex[::1] g, Py_ssize_t l, Py_ssize_t k) noexcept nogil:
    cdef double complex v
    if 2 * l < k:
        v = _g(g, k - 2 * l) - _g(g, 2 * l + k)
    elif 2 * l == k:
        v = 2.0 * _g(g, 0) - _g(g, 4 * l)
    else:
        v = _g(g, 2 * l - k) - _g(g, 2 * l + k)
    return v.conjugate()


cdef inline double complex _r(const double complex[::1] g, Py_ssize_t l, Py_ssize_t k) noexcept nogil:
    cdef double sign = 1.0 if (k - 1) % 2 == 0 else -1.0
    if 2 * l - 1 < k:
        return sign * (_g(g, k - 2 * l + 1) - _g(g, k + 2 * l - 1))
    if 2 * l - 1 == k:
        return 2.0 * _g(g, 0) - _g(g, 4 * l - 2)
    return sign * (_g(g, 2 * l - 1 - k) - _g(g, 2 * l - 1 + k))


def qr_decompose(g, c, Py_ssize_t n_out):
    """Banded products a = Q c and d = R c (rows l = 1..n_out)."""
    cdef const double complex[::1] gv = np.ascontiguousarray(g, dtype=np.complex128)
    cdef const double complex[::1] cv = np.ascontiguousarray(c, dtype=np.complex128)
    cdef Py_ssize_t K = cv.shape[0], N = gv.shape[0] - 1, l, k, lo, hi
    a = np.zeros(n_out, dtype=np.complex128)
    d = np.zeros(n_out, dtype=np.complex128)
    cdef double complex[::1] av = a, dv = d
    cdef double complex acc
    for l in prange(1, n_out + 1, nogil=True, num_threads=_threads, schedule="static"):
        lo = 2 * l - N
        if lo < 1:
            lo = 1
        hi = 2 * l + N
        if hi > K:
            hi = K
        acc = 0.0
        for k in range(lo, hi + 1):
            acc = acc + _q(gv, l, k) * cv[k - 1]
        av[l - 1] = acc
        lo = 2 * l - 1 - N
        if lo < 1:
            lo = 1
        hi = 2 * l - 1 + N
        if hi > K:
            hi = K
        acc = 0.0
        for k in range(lo, hi + 1):
            acc = acc + _r(gv, l, k) * cv[k - 1]
        dv[l - 1] = acc
    return a, d


def qr_reconstruct(g, a, d, Py_ssize_t K):
    """c = Q^H a + R^H d, truncated to length K."""
    cdef const double complex[::1] gv = np.ascontiguousarray(g, dtype=np.complex128)
    cdef const double complex[::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const double complex[::1] dv = np.ascontiguousarray(d, dtype=np.complex128)
    cdef Py_ssize_t La = av.shape[0], Ld = dv.shape[0], N = gv.shape[0] - 1, l, k, lo, hi
    c = np.zeros(K, dtype=np.complex128)
    cdef double complex[::1] cv = c
    cdef double complex acc
    for k in prange(1, K + 1, nogil=True, num_threads=_threads, schedule="static"):
        acc = 0.0
        # q is nonzero only for |k - 2l| <= N, r only for |k - 2l + 1| <= N
        lo = (k - N + 1) // 2
        if lo < 1:
            lo = 1
        hi = (k + N) // 2
        if hi > La:
            hi = La
        for l in range(lo, hi + 1):
            acc = acc + _q(gv, l, k).conjugate() * av[l - 1]
        lo = (k - N + 1) // 2
        if lo < 1:
            lo = 1
        hi = (k + N + 1) // 2
        if hi > Ld:
            hi = Ld
        for l in range(lo, hi + 1):
            acc = acc + _r(gv, l, k).conjugate() * dv[l - 1]
        cv[k - 1] = acc
    return c
