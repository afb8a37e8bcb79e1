# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled twins of the reference kernels in ``_ref``."""

from libc.math cimport ceil, floor, ldexp

import numpy as np

BACKEND_NAME = "cython"


cdef inline double _interp1(const double* table, Py_ssize_t n, double origin,
                            double inv_step, bint step_mode, double x) noexcept nogil:
    cdef double u = (x - origin) * inv_step
    cdef double fi = floor(u)
    cdef Py_ssize_t i = <Py_ssize_t>fi
    cdef double frac
    if step_mode:
        if i < 0 or i >= n:
            return 0.0
        return table[i]
    if i < 0 or i >= n - 1:
        return 0.0
    frac = u - fi
    return table[i] * (1.0 - frac) + table[i + 1] * frac


def interp_table(table, double origin, double inv_step, bint step_mode, xs):
    cdef double[::1] t = np.ascontiguousarray(table, dtype=np.float64)
    cdef double[::1] x = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t m = x.shape[0], n = t.shape[0], j
    out_np = np.zeros(m)
    cdef double[::1] out = out_np
    with nogil:
        for j in range(m):
            out[j] = _interp1(&t[0], n, origin, inv_step, step_mode, x[j])
    return out_np.reshape(np.shape(xs))


def fit_coeffs(table, double origin, double inv_step, bint step_mode,
               long support_radius, samples, long level, long k_lo, long k_hi):
    cdef double[::1] t = np.ascontiguousarray(table, dtype=np.float64)
    cdef double[::1] x = np.ascontiguousarray(samples, dtype=np.float64).ravel()
    cdef Py_ssize_t n = x.shape[0], nt = t.shape[0]
    cdef Py_ssize_t width = k_hi - k_lo + 1
    out_np = np.zeros(width)
    cdef double[::1] acc = out_np
    cdef Py_ssize_t u, m, span = 2 * support_radius + 1
    cdef long k0, k
    cdef double y
    with nogil:
        for u in range(n):
            y = ldexp(x[u], <int>level)
            k0 = <long>ceil(y - support_radius)
            for m in range(span):
                k = k0 + m
                if k < k_lo or k > k_hi:
                    continue
                acc[k - k_lo] += _interp1(&t[0], nt, origin, inv_step,
                                          step_mode, y - k)
    out_np *= ldexp(1.0, <int>level) ** 0.5 / n
    return out_np


def eval_expansion(coeffs, long k_lo, long level, table, double origin,
                   double inv_step, bint step_mode, long support_radius, xs):
    cdef double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double[::1] t = np.ascontiguousarray(table, dtype=np.float64)
    cdef double[::1] x = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t nx = x.shape[0], nt = t.shape[0], width = c.shape[0]
    out_np = np.zeros(nx)
    cdef double[::1] out = out_np
    cdef Py_ssize_t j, m, span = 2 * support_radius + 1
    cdef long k0, k
    cdef double y, s
    with nogil:
        for j in range(nx):
            y = ldexp(x[j], <int>level)
            k0 = <long>ceil(y - support_radius)
            s = 0.0
            for m in range(span):
                k = k0 + m
                if k < k_lo or k >= k_lo + width:
                    continue
                s += c[k - k_lo] * _interp1(&t[0], nt, origin, inv_step,
                                            step_mode, y - k)
            out[j] = s
    out_np *= ldexp(1.0, <int>level) ** 0.5
    return out_np


def analysis_step(values, long start, taps, long tap_origin,
                  long out_lo, long out_hi):
    cdef double[::1] a = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[::1] h = np.ascontiguousarray(taps, dtype=np.float64)
    cdef Py_ssize_t na = a.shape[0], nt = h.shape[0]
    cdef Py_ssize_t nk = out_hi - out_lo + 1
    out_np = np.zeros(nk)
    cdef double[::1] out = out_np
    cdef Py_ssize_t kk, t
    cdef long idx
    cdef double s
    with nogil:
        for kk in range(nk):
            s = 0.0
            idx = 2 * (out_lo + kk) + tap_origin - start
            for t in range(nt):
                if 0 <= idx + t < na:
                    s += h[t] * a[idx + t]
            out[kk] = s
    return out_np


def synthesis_step(alpha, long a_lo, beta, long b_lo, h_taps, g_taps,
                   long tap_origin, long out_lo, long out_hi):
    cdef double[::1] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(beta, dtype=np.float64)
    cdef double[::1] h = np.ascontiguousarray(h_taps, dtype=np.float64)
    cdef double[::1] g = np.ascontiguousarray(g_taps, dtype=np.float64)
    cdef Py_ssize_t nm = out_hi - out_lo + 1
    out_np = np.zeros(nm)
    cdef double[::1] out = out_np
    with nogil:
        _scatter(&out[0], nm, out_lo, &a[0], a.shape[0], a_lo,
                 &h[0], h.shape[0], tap_origin)
        _scatter(&out[0], nm, out_lo, &b[0], b.shape[0], b_lo,
                 &g[0], g.shape[0], tap_origin)
    return out_np


cdef void _scatter(double* out, Py_ssize_t nm, long out_lo, const double* c,
                   Py_ssize_t nk, long c_lo, const double* taps,
                   Py_ssize_t nt, long tap_origin) noexcept nogil:
    cdef Py_ssize_t kk, t
    cdef long m
    for kk in range(nk):
        m = 2 * (c_lo + kk) + tap_origin - out_lo
        for t in range(nt):
            if 0 <= m + t < nm:
                out[m + t] += taps[t] * c[kk]
