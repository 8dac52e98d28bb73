import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from ineqlab import kernels

BACKENDS = kernels.available_backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
exponents = st.one_of(st.sampled_from([1.0, 2.0, np.inf]), st.floats(1.0, 8.0))


def test_backend_name():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_lp_norm_values():
    assert kernels.lp_norm([3.0, 4.0], 2) == pytest.approx(5.0)
    assert kernels.lp_norm([1.0, -2.0, 2.0], 1) == 5.0
    assert kernels.lp_norm([1.0, -7.0, 2.0], np.inf) == 7.0


def test_lp_norm_no_overflow():
    assert kernels.lp_norm([1e200, 1e200], 2) == pytest.approx(np.sqrt(2) * 1e200)


def test_bad_matrix_shape():
    with pytest.raises(ValueError):
        kernels.lp_norm_rows([1.0, 2.0], 2)


@needs_both
@settings(max_examples=200, deadline=None)
@given(hnp.arrays(np.float64, st.integers(1, 12), elements=finite), exponents)
def test_lp_norm_parity(v, p):
    a = kernels.lp_norm(v, p, impl=BACKENDS["cython"])
    b = kernels.lp_norm(v, p, impl=BACKENDS["python"])
    assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


@needs_both
@settings(max_examples=100, deadline=None)
@given(hnp.arrays(np.float64, hnp.array_shapes(min_dims=2, max_dims=2, max_side=8), elements=finite), exponents)
def test_lp_norm_rows_parity(X, p):
    a = kernels.lp_norm_rows(X, p, impl=BACKENDS["cython"])
    b = kernels.lp_norm_rows(X, p, impl=BACKENDS["python"])
    np.testing.assert_allclose(a, b, rtol=1e-12)


@needs_both
@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 100), min_size=1, max_size=7, unique=True), st.data())
def test_divided_difference_parity(nodes, data):
    x = np.sort(np.asarray(nodes))
    if x.size > 1 and np.min(np.diff(x)) < 1e-3:
        return
    y = np.asarray(data.draw(st.lists(finite, min_size=x.size, max_size=x.size)))
    a = kernels.divided_difference(x, y, impl=BACKENDS["cython"])
    b = kernels.divided_difference(x, y, impl=BACKENDS["python"])
    assert a == pytest.approx(b, rel=1e-10, abs=1e-10)


@needs_both
def test_batch_parity():
    rng = np.random.default_rng(3)
    X = np.sort(rng.uniform(0, 10, size=(50, 4)), axis=1)
    Y = np.sqrt(X)
    for name in ("divided_differences_batch", "dd_magnitude_batch"):
        a = getattr(kernels, name)(X, Y, impl=BACKENDS["cython"])
        b = getattr(kernels, name)(X, Y, impl=BACKENDS["python"])
        np.testing.assert_allclose(a, b, rtol=1e-12)


@needs_both
@settings(max_examples=100, deadline=None)
@given(hnp.arrays(np.float64, st.integers(2, 15), elements=finite))
def test_bernstein_parity(samples):
    t = np.linspace(0, 1, 17)
    a = kernels.bernstein_eval(samples, t, impl=BACKENDS["cython"])
    b = kernels.bernstein_eval(samples, t, impl=BACKENDS["python"])
    np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-9)


@needs_both
@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, np.inf])
def test_cnj_ratio_parity(p):
    rng = np.random.default_rng(11)
    U, V = rng.normal(size=(40, 5)), rng.normal(size=(40, 5))
    a = kernels.cnj_ratios(U, V, p, impl=BACKENDS["cython"])
    b = kernels.cnj_ratios(U, V, p, impl=BACKENDS["python"])
    np.testing.assert_allclose(a, b, rtol=1e-12)


def test_batch_matches_scalar():
    rng = np.random.default_rng(5)
    X = np.sort(rng.uniform(0, 5, size=(10, 3)), axis=1)
    Y = X**3
    batch = kernels.divided_differences_batch(X, Y)
    single = [kernels.divided_difference(X[i], Y[i]) for i in range(10)]
    np.testing.assert_allclose(batch, single, rtol=1e-12)
