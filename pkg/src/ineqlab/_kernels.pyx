# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. Semantics mirror ``_kernels_py`` exactly."""

import numpy as np

from libc.math cimport fabs, pow, sqrt, isinf


cdef double _lp(const double[::1] v, Py_ssize_t n, double p) noexcept nogil:
    cdef Py_ssize_t i
    cdef double m = 0.0, s = 0.0, a
    for i in range(n):
        a = fabs(v[i])
        if a > m:
            m = a
    if m == 0.0 or isinf(p):
        return m
    if p == 1.0:
        for i in range(n):
            s += fabs(v[i])
        return s
    if p == 2.0:
        for i in range(n):
            a = v[i] / m
            s += a * a
        return m * sqrt(s)
    for i in range(n):
        s += pow(fabs(v[i]) / m, p)
    return m * pow(s, 1.0 / p)


def lp_norm(const double[::1] v, double p):
    return _lp(v, v.shape[0], p)


def lp_norm_rows(const double[:, ::1] X, double p):
    cdef Py_ssize_t r, rows = X.shape[0]
    out = np.empty(rows)
    cdef double[::1] o = out
    for r in range(rows):
        o[r] = _lp(X[r], X.shape[1], p)
    return out


cdef double _dd(const double[::1] x, const double[::1] y, double[::1] c) noexcept nogil:
    cdef Py_ssize_t n = x.shape[0] - 1, i, j
    for i in range(n + 1):
        c[i] = y[i]
    for j in range(1, n + 1):
        i = n
        while i >= j:
            c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j])
            i -= 1
    return c[n]


def divided_difference(const double[::1] x, const double[::1] y):
    work = np.empty(x.shape[0])
    return _dd(x, y, work)


def divided_differences_batch(const double[:, ::1] X, const double[:, ::1] Y):
    cdef Py_ssize_t r, rows = X.shape[0]
    out = np.empty(rows)
    work = np.empty(X.shape[1])
    cdef double[::1] o = out
    cdef double[::1] w = work
    for r in range(rows):
        o[r] = _dd(X[r], Y[r], w)
    return out


def dd_magnitude_batch(const double[:, ::1] X, const double[:, ::1] Y):
    """Sum of |f(x_j)| / prod |x_j - x_k| per row (roundoff scale of a divided difference)."""
    cdef Py_ssize_t r, j, k, rows = X.shape[0], cols = X.shape[1]
    cdef double s, d
    out = np.empty(rows)
    cdef double[::1] o = out
    for r in range(rows):
        s = 0.0
        for j in range(cols):
            d = 1.0
            for k in range(cols):
                if k != j:
                    d *= fabs(X[r, j] - X[r, k])
            s += fabs(Y[r, j]) / d
        o[r] = s
    return out


def bernstein_eval(const double[::1] samples, const double[::1] t):
    cdef Py_ssize_t n = samples.shape[0] - 1, q, r, i
    cdef double tt, s
    out = np.empty(t.shape[0])
    work = np.empty(n + 1)
    cdef double[::1] o = out
    cdef double[::1] b = work
    for q in range(t.shape[0]):
        tt = t[q]
        s = 1.0 - tt
        for i in range(n + 1):
            b[i] = samples[i]
        for r in range(1, n + 1):
            for i in range(n - r + 1):
                b[i] = s * b[i] + tt * b[i + 1]
        o[q] = b[0]
    return out


def cnj_ratios(const double[:, ::1] U, const double[:, ::1] V, double p):
    cdef Py_ssize_t r, i, rows = U.shape[0], d = U.shape[1]
    cdef double nu, nv, ns, nd, den
    out = np.empty(rows)
    work_s = np.empty(d)
    work_d = np.empty(d)
    cdef double[::1] o = out
    cdef double[::1] ws = work_s
    cdef double[::1] wd = work_d
    for r in range(rows):
        for i in range(d):
            ws[i] = U[r, i] + V[r, i]
            wd[i] = U[r, i] - V[r, i]
        nu = _lp(U[r], d, p)
        nv = _lp(V[r], d, p)
        ns = _lp(ws, d, p)
        nd = _lp(wd, d, p)
        den = 2.0 * (nu * nu + nv * nv)
        if den == 0.0:
            o[r] = np.nan
        else:
            o[r] = (ns * ns + nd * nd) / den
    return out
