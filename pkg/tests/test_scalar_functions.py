import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ineqlab import scalar_functions as sf
from ineqlab.errors import (
    AuditMismatch,
    DegenerateInterval,
    DomainExceeded,
    DuplicateNodes,
    SlopeTooSmall,
    UnknownFunction,
)

S0_MEMBERS = ["sqshift:1", "pow:1", "pow:1.5", "pow:2", "xlog1p", "logcosh"]
THREE_CONVEX = ["pow:0.5", "pow:2", "pow:3", "xfrac:1", "log1p", "sinh", "cosh"]


# -- divided differences ----------------------------------------------------


def test_dd_of_constant_is_zero():
    assert sf.divided_difference([0, 1], lambda x: 5.0 + 0 * x) == 0.0


def test_dd_of_square_is_leading_coefficient():
    assert sf.divided_difference([0, 1, 2], "pow:2") == pytest.approx(1.0, abs=1e-14)


def test_dd_monic_cubic():
    val = sf.divided_difference([0.3, 1.1, 2.7, 4.0], lambda x: np.asarray(x) ** 3)
    assert abs(val - 1.0) < 1e-10


def test_dd_single_node_is_value():
    assert sf.divided_difference([2.0], "pow:2") == 4.0


def test_duplicate_nodes_rejected():
    with pytest.raises(DuplicateNodes):
        sf.divided_difference([1.0, 1.0, 2.0], "sqrt")
    with pytest.raises(DuplicateNodes):
        sf.divided_difference([0.0, 1.0, 1.0 + 1e-12], "sqrt")


def test_dd_table_rows():
    tab = sf.divided_difference_table([0, 1, 2, 3], lambda x: np.asarray(x) ** 3)
    assert tab.order == 3
    assert tab.top() == pytest.approx(1.0)
    np.testing.assert_allclose(tab.table[1], [1, 7, 19])


node_sets = st.lists(st.floats(0, 50, allow_nan=False), min_size=2, max_size=6, unique=True).filter(
    lambda xs: np.min(np.diff(np.sort(xs))) > 1e-3 * max(1e-9, max(xs) - min(xs))
)


@settings(max_examples=200, deadline=None)
@given(node_sets, st.sampled_from(["sqrt", "log1p", "xlog1p", "pow:1.5", "logcosh", "exp_neg"]))
def test_recursion_matches_symmetric_sum(nodes, fid):
    a = sf.divided_difference(nodes, fid)
    b = sf.divided_difference_symmetric(nodes, fid)
    scale = max(abs(a), abs(b), 1e-300)
    # the symmetric sum loses digits when nodes cluster; compare on a conditioning-aware scale
    x = np.sort(nodes)
    ys = np.abs(sf.get(fid)(x))
    cond = sum(ys[j] / np.prod(np.abs(np.delete(x[j] - x, j))) for j in range(x.size))
    assert abs(a - b) <= 1e-9 * scale + 1e-12 * cond


@settings(max_examples=100, deadline=None)
@given(st.permutations([0.2, 1.3, 2.9, 4.4, 7.0]))
def test_dd_permutation_invariant(nodes):
    ref = sf.divided_difference([0.2, 1.3, 2.9, 4.4, 7.0], "xlog1p")
    assert sf.divided_difference(nodes, "xlog1p") == ref


# -- iterated differences ---------------------------------------------------


def test_iterated_difference_affine():
    assert sf.iterated_difference("pow:1", 0.0, 1.0, 2) == 0.0


def test_iterated_difference_cube():
    assert sf.iterated_difference("pow:3", 0.0, 1.0, 3) == pytest.approx(6.0)


def test_iterated_difference_exp_positive():
    assert sf.iterated_difference("exp", 0.0, 0.5, 3) > 0


def test_iterated_difference_domain():
    with pytest.raises(DomainExceeded):
        sf.iterated_difference("exp", 9.0, 1.0, 3)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 10), st.floats(0.01, 5), st.integers(1, 5),
       st.sampled_from(["sqrt", "log1p", "pow:1.5", "xlog1p"]))
def test_iterated_difference_identity(x, h, n, fid):
    lhs = sf.iterated_difference(fid, x, h, n)
    rhs = math.factorial(n) * h**n * sf.divided_difference(x + h * np.arange(n + 1), fid)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)


# -- catalogue and audits ---------------------------------------------------


def test_unknown_function():
    with pytest.raises(UnknownFunction):
        sf.get("nope")
    with pytest.raises(UnknownFunction):
        sf.get("pow:abc")


def test_parametric_defaults():
    assert sf.get("pow_shift").id == sf.get("pow_shift:1.5").id
    assert sf.get("pow_shift:2")(np.array([1.0]))[0] == pytest.approx(3.0)


@pytest.mark.parametrize("fid", [
    "sqrt", "log1p", "xlog1p", "logcosh", "exp_neg", "inv1p", "log1p_over_x", "neg_xlogx",
    "neg_xlog1p", "neg_logcosh", "exp", "expm1", "expm1_minus_x", "sinh", "cosh", "abs_half",
    "pow:0.5", "pow:1", "pow:1.5", "pow:2", "pow:3", "pow_shift:1.5", "sqshift:1", "sqshift:2",
    "xfrac:1", "one_minus_exp:1",
])
def test_declared_flags_pass_audit(fid):
    sf.verify_declared(fid)


def test_verify_declared_raises_on_lie():
    liar = sf.ScalarFunction("liar-square", lambda x: np.asarray(x) ** 2, sf.ShapeFlags.of("concave"))
    with pytest.raises(AuditMismatch):
        sf.verify_declared(liar)


def test_audit_x_to_1_5():
    m = sf.audit_shape("pow:1.5")
    assert m.names() == {"nonnegative", "nondecreasing", "convex", "three_concave", "vanishes_at_zero"}


def test_audit_square_is_both_three_convex_and_concave():
    m = sf.audit_shape("pow:2")
    assert m.three_convex and m.three_concave


def test_audit_log1p():
    m = sf.audit_shape("log1p")
    assert m.nondecreasing and m.concave and m.three_convex and not m.convex


def test_audit_constant_is_degenerate_everything():
    m = sf.audit_shape(lambda x: 0 * np.asarray(x) + 3.0)
    assert m.convex and m.concave and m.three_convex and m.three_concave


@pytest.mark.parametrize("fid", S0_MEMBERS)
def test_s0_members(fid):
    assert sf.is_in_S0(fid)


def test_not_in_s0():
    assert not sf.is_in_S0("exp_neg")
    assert not sf.is_in_S0("pow:3")


@pytest.mark.parametrize("fid", THREE_CONVEX)
def test_three_convex_members(fid):
    assert sf.audit_shape(fid).three_convex


def test_audit_grid_validation():
    with pytest.raises(ValueError):
        sf.AuditGrid(points=10)
    with pytest.raises(ValueError):
        sf.AuditGrid(quad_draws=10)


@pytest.mark.parametrize("fid", [f for f in ["pow:0.5", "pow:3", "log1p", "sinh", "cosh", "xfrac:1"]])
def test_equidistant_three_convex(fid):
    f = sf.get(fid)
    lo, hi = f.domain
    rng = np.random.default_rng(7)
    for _ in range(1000):
        h = rng.uniform(1e-3, (hi - lo) / 3 * 0.999)
        x0 = rng.uniform(lo, hi - 3 * h)
        v = f(x0 + h * np.arange(4))
        lhs = v[0] + 3 * v[2]
        rhs = 3 * v[1] + v[3]
        assert lhs <= rhs + 1e-8 + 1e-13 * np.max(np.abs(v))


# -- Bernstein --------------------------------------------------------------


def test_bernstein_reproduces_affine():
    B = sf.bernstein(lambda x: 2.5 * np.asarray(x) - 1.0, 7)
    t = np.linspace(0, 1, 101)
    assert np.max(np.abs(B(t) - (2.5 * t - 1.0))) <= 1e-12


def test_bernstein_endpoints_exact():
    B = sf.bernstein("exp", 9)
    assert B(0.0) == 1.0
    assert B(1.0) == math.e


def test_bernstein_abs_half():
    B = sf.bernstein("abs_half", 4)
    assert B(0.5) == pytest.approx(3 / 16, abs=1e-15)


def test_bernstein_degenerate_interval():
    with pytest.raises(DegenerateInterval):
        sf.bernstein("exp", 3, (1.0, 1.0))


def test_bernstein_error_shrinks():
    t = np.linspace(0, 1, 201)
    errs = [np.max(np.abs(sf.bernstein("sqrt", n)(t) - np.sqrt(t))) for n in (5, 20, 80)]
    assert errs[0] > errs[1] > errs[2]


@pytest.mark.parametrize("n", [5, 10, 20])
@pytest.mark.parametrize("fid", ["exp", "pow:3", "sinh", "log1p", "xlog1p"])
def test_bernstein_shape_preservation(fid, n):
    f = sf.get(fid)
    declared = sf.audit_shape(f, interval=(0.0, 1.0))
    B = sf.bernstein(f, n).as_function(f"bern{n}-{fid}")
    got = sf.audit_shape(B)
    for flag in ("nondecreasing", "convex", "concave", "three_convex", "three_concave"):
        if getattr(declared, flag):
            assert getattr(got, flag), flag


# -- composition rules ------------------------------------------------------


def test_compose_power_s0_half():
    g = sf.compose_power("pow:1.5", 0.5)
    assert {"nondecreasing", "concave"} <= g.declared.names()
    m = sf.audit_shape(g)
    assert m.concave and m.nondecreasing


def test_compose_power_boundary_identity():
    g = sf.compose_power("pow:2", 0.5)
    np.testing.assert_allclose(g(np.array([0.0, 2.0, 9.0])), [0.0, 2.0, 9.0])
    assert sf.audit_shape(g).concave


def test_compose_power_outside_range_leaves_flags():
    g = sf.compose_power("pow:2", 0.6)
    assert "concave" not in g.declared.names()
    m = sf.audit_shape(g)
    assert m.convex and not m.concave


def test_compose_power_convex_rule():
    # x**2 - x is not monotone, so build a convex 3-convex member with f'(0) <= 0
    f = sf.ScalarFunction("sq-minus-x", lambda x: np.asarray(x) ** 2 - np.asarray(x),
                          sf.ShapeFlags.of("convex", "three_convex"), derivative=lambda x: 2 * np.asarray(x) - 1)
    g = sf.compose_power(f, 0.5)
    assert "convex" in g.declared.names()
    assert sf.audit_shape(g).convex


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("fid", ["log1p", "sqrt", "xfrac:1", "one_minus_exp:1"])
def test_raise_to_power_keeps_flags(fid, alpha):
    h = sf.raise_to_power(fid, alpha)
    m = sf.audit_shape(h)
    assert m.three_convex and m.nondecreasing and m.concave


# -- completely monotone shifts ---------------------------------------------


def test_cm_shift_exp_neg():
    g = sf.completely_monotone_shift("exp_neg", 1.0, 1.0)
    assert sf.audit_shape(g).nondecreasing


def test_cm_shift_inv1p():
    g = sf.completely_monotone_shift("inv1p", 2.0, 1.0)
    m = sf.audit_shape(g)
    assert m.nondecreasing and m.convex and m.three_concave


def test_cm_shift_slope_too_small():
    with pytest.raises(SlopeTooSmall):
        sf.completely_monotone_shift("exp_neg", 1.0, 0.0)


def test_cm_shift_needs_cm_function():
    with pytest.raises(ValueError):
        sf.completely_monotone_shift("sqrt", 1.0, 1.0)
