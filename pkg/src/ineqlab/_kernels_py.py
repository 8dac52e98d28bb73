"""Pure-numpy versions of the hot loops; same algorithms as the compiled module."""

import numpy as np


def _lp_rows(X, p):
    A = np.abs(X)
    m = A.max(axis=1) if A.shape[1] else np.zeros(A.shape[0])
    out = np.zeros(A.shape[0])
    nz = m > 0
    if np.isinf(p):
        return m
    if p == 1.0:
        return A.sum(axis=1)
    S = A[nz] / m[nz, None]
    if p == 2.0:
        out[nz] = m[nz] * np.sqrt(np.sum(S * S, axis=1))
    else:
        out[nz] = m[nz] * np.sum(S**p, axis=1) ** (1.0 / p)
    return out


def lp_norm(v, p):
    return float(_lp_rows(v[None, :], p)[0])


def lp_norm_rows(X, p):
    return _lp_rows(X, p)


def divided_differences_batch(X, Y):
    c = np.array(Y, dtype=float, copy=True)
    n = c.shape[1] - 1
    for j in range(1, n + 1):
        c[:, j:] = (c[:, j:] - c[:, j - 1 : -1]) / (X[:, j:] - X[:, : n + 1 - j])
    return c[:, n].copy()


def divided_difference(x, y):
    return float(divided_differences_batch(x[None, :], y[None, :])[0])


def dd_magnitude_batch(X, Y):
    diff = np.abs(X[:, :, None] - X[:, None, :])
    k = X.shape[1]
    diff[:, np.arange(k), np.arange(k)] = 1.0
    return np.sum(np.abs(Y) / np.prod(diff, axis=2), axis=1)


def bernstein_eval(samples, t):
    b = np.broadcast_to(samples, (t.shape[0], samples.shape[0])).copy()
    s = (1.0 - t)[:, None]
    tt = t[:, None]
    n = samples.shape[0] - 1
    for r in range(1, n + 1):
        b[:, : n - r + 1] = s * b[:, : n - r + 1] + tt * b[:, 1 : n - r + 2]
    return b[:, 0].copy()


def cnj_ratios(U, V, p):
    nu = _lp_rows(U, p)
    nv = _lp_rows(V, p)
    ns = _lp_rows(U + V, p)
    nd = _lp_rows(U - V, p)
    den = 2.0 * (nu * nu + nv * nv)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = (ns * ns + nd * nd) / den
    out[den == 0.0] = np.nan
    return out
