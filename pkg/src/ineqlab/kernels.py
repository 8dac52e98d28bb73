"""Backend selection for the numeric hot loops.

The compiled extension ``ineqlab._kernels`` is used when it was built;
otherwise the numpy implementation in ``ineqlab._kernels_py`` is used.
Set ``INEQLAB_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    _BACKENDS["cython"] = _compiled

if _compiled is not None and not os.environ.get("INEQLAB_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_impl = _BACKENDS[BACKEND]


def available_backends():
    return dict(_BACKENDS)


def _vec(v):
    return np.ascontiguousarray(v, dtype=np.float64).reshape(-1)


def _mat(X):
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("expected a 2-D array")
    return X


def lp_norm(v, p, impl=None):
    return (impl or _impl).lp_norm(_vec(v), float(p))


def lp_norm_rows(X, p, impl=None):
    return (impl or _impl).lp_norm_rows(_mat(X), float(p))


def divided_difference(x, y, impl=None):
    return (impl or _impl).divided_difference(_vec(x), _vec(y))


def divided_differences_batch(X, Y, impl=None):
    return (impl or _impl).divided_differences_batch(_mat(X), _mat(Y))


def dd_magnitude_batch(X, Y, impl=None):
    return (impl or _impl).dd_magnitude_batch(_mat(X), _mat(Y))


def bernstein_eval(samples, t, impl=None):
    return (impl or _impl).bernstein_eval(_vec(samples), _vec(t))


def cnj_ratios(U, V, p, impl=None):
    return (impl or _impl).cnj_ratios(_mat(U), _mat(V), float(p))
