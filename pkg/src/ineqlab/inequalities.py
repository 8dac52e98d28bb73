"""Checkers for the norm, functional and determinantal inequalities.

Every checker evaluates both sides on concrete operands and returns an
:class:`InequalityReport` whose margin is nonnegative (up to tolerance) when
the inequality holds. Hypotheses on the function argument are checked with
cached grid audits and recorded in ``hypothesis_audit``; a failed audit makes
the report inconclusive. Pass ``strict=True`` to raise ``HypothesisFailed``
instead. Structural preconditions (wrong space, p out of range, operands off
the positive cone) always raise.
"""

from __future__ import annotations

import math

import numpy as np

from . import spaces as sp
from .errors import (
    BadAlpha,
    BadP,
    DimensionMismatch,
    HypothesisFailed,
    NegativeDeterminant,
    NotInnerProduct,
    NotInPositiveCone,
)
from .report import InequalityReport, make_report
from .scalar_functions import DEFAULT_GRID, as_function, audit_shape, compose_power

DET_CLIP = 1e-10

# --------------------------------------------------------------------------
# hypothesis gates

_GATES: dict = {}


def _flag(f, name: str) -> tuple[str, bool]:
    key = (f.id, name, None)
    if key not in _GATES:
        _GATES[key] = bool(getattr(audit_shape(f, DEFAULT_GRID), name))
    return (f"{f.id} {name}", _GATES[key])


def _composed(f, alpha: float, name: str) -> tuple[str, bool]:
    """Audit f(x**alpha) for the shape flag ``name``."""
    key = (f.id, name, alpha)
    if key not in _GATES:
        g = compose_power(f, alpha)
        _GATES[key] = bool(getattr(audit_shape(g, DEFAULT_GRID), name))
    return (f"{f.id}(x^{alpha:g}) {name}", _GATES[key])


def _flags(f, *names) -> list:
    return [_flag(f, n) for n in names]


def _s0(f) -> list:
    return _flags(f, "nondecreasing", "convex", "three_concave", "vanishes_at_zero")


def _finish(report: InequalityReport, strict: bool) -> InequalityReport:
    if strict and report.inconclusive:
        bad = [c for c, ok in report.hypothesis_audit if not ok]
        raise HypothesisFailed(f"{report.check_id}: failed hypotheses {bad}")
    return report


def _space(space):
    return sp.parse_space(space) if isinstance(space, str) else space


def _operands(space, *ops):
    return [space.check(o) for o in ops]


def _finite_p(space) -> float:
    p = space.p
    if math.isinf(p) or not p > 1:
        raise BadP(f"need finite p > 1, got {p}")
    return p


def _euclidean(space):
    if not space.is_inner_product:
        raise NotInnerProduct(f"{space.spec} is not an inner product space")


def _n_gate(space, N) -> tuple[int, list]:
    need = space.n_constant()
    if N is None:
        return need, []
    return int(N), [(f"N >= N(X) = {need}", int(N) >= need)]


def _quad_terms(norm, f, y, z, q, r):
    """f-values of the six pairwise distances used by the quadruple family."""
    return {
        "yq": f(norm(y - q)), "zr": f(norm(z - r)),
        "yz": f(norm(y - z)), "rq": f(norm(r - q)),
        "zq": f(norm(z - q)), "yr": f(norm(y - r)),
    }


# --------------------------------------------------------------------------
# quadruple family


def quadruple_norm(space, w, x, y, z) -> InequalityReport:
    """|w-x| + |y-z| <= |w-y| + |x-z| + |w-z| + |x-y| in any normed space."""
    space = _space(space)
    w, x, y, z = _operands(space, w, x, y, z)
    n = space.norm
    lhs = n(w - x) + n(y - z)
    rhs = n(w - y) + n(x - z) + n(w - z) + n(x - y)
    return make_report("quadruple_norm", lhs, rhs, "<=",
                       inputs={"space": space.spec, "w": w, "x": x, "y": y, "z": z})


def schotz_inner(space, f, w, x, y, z, *, strict=False) -> InequalityReport:
    """Functional quadruple inequality in an inner product space, f in S_0."""
    space = _space(space)
    _euclidean(space)
    f = as_function(f)
    w, x, y, z = _operands(space, w, x, y, z)
    t = _quad_terms(space.norm, f.scalar, x, y, w, z)
    lhs = t["yq"] + t["zr"]
    rhs = t["yz"] + t["rq"] + t["zq"] + t["yr"]
    rep = make_report("schotz_inner", lhs, rhs, "<=", audit=_s0(f),
                      inputs={"space": space.spec, "f": f.id, "w": w, "x": x, "y": y, "z": z})
    return _finish(rep, strict)


def schotz_banach(space, f, y, z, q, r, N=None, *, strict=False) -> InequalityReport:
    """f(|y-q|) + f(|z-r|) <= N/2 [f(|y-z|) + f(|r-q|) + f(|z-q|) + f(|y-r|)]."""
    space = _space(space)
    f = as_function(f)
    y, z, q, r = _operands(space, y, z, q, r)
    N, gate = _n_gate(space, N)
    t = _quad_terms(space.norm, f.scalar, y, z, q, r)
    lhs = t["yq"] + t["zr"]
    rhs = N / 2 * (t["yz"] + t["rq"] + t["zq"] + t["yr"])
    rep = make_report("schotz_banach", lhs, rhs, "<=", audit=_s0(f) + gate,
                      details={"N": N},
                      inputs={"space": space.spec, "f": f.id, "y": y, "z": z, "q": q, "r": r})
    return _finish(rep, strict)


def functional_parallelogram(space, f, u, v, N=None, *, strict=False) -> InequalityReport:
    """f(|u|) + f(|v|) <= N f(|(u-v)/2|) + N f(|(u+v)/2|) for f in S_0."""
    space = _space(space)
    f = as_function(f)
    u, v = _operands(space, u, v)
    N, gate = _n_gate(space, N)
    n, g = space.norm, f.scalar
    lhs = g(n(u)) + g(n(v))
    rhs = N * g(n((u - v) / 2)) + N * g(n((u + v) / 2))
    rep = make_report("functional_parallelogram", lhs, rhs, "<=", audit=_s0(f) + gate,
                      details={"N": N}, inputs={"space": space.spec, "f": f.id, "u": u, "v": v})
    return _finish(rep, strict)


def four_point_functional(space, f, u, v, x, N=None, *, strict=False) -> InequalityReport:
    """f(|u|) + f(|v|) <= N/2 [f(|u+x|) + f(|v+x|) + f(|x|) + f(|u+v+x|)]."""
    space = _space(space)
    f = as_function(f)
    u, v, x = _operands(space, u, v, x)
    N, gate = _n_gate(space, N)
    n, g = space.norm, f.scalar
    lhs = g(n(u)) + g(n(v))
    rhs = N / 2 * (g(n(u + x)) + g(n(v + x)) + g(n(x)) + g(n(u + v + x)))
    rep = make_report("four_point_functional", lhs, rhs, "<=", audit=_s0(f) + gate,
                      details={"N": N},
                      inputs={"space": space.spec, "f": f.id, "u": u, "v": v, "x": x})
    return _finish(rep, strict)


def alfa_power(space, u, v, alpha: float, N=None) -> InequalityReport:
    """Two-sided power bound; the margin is the smaller of the two slacks."""
    if not 1 <= alpha <= 2:
        raise BadAlpha(f"alpha must lie in [1, 2], got {alpha}")
    space = _space(space)
    u, v = _operands(space, u, v)
    N, gate = _n_gate(space, N)
    n = space.norm
    low = n(u) ** alpha + n(v) ** alpha
    mid = N * (n((u - v) / 2) ** alpha + n((u + v) / 2) ** alpha)
    high = N * N * low
    left = make_report("alfa_power", low, mid, "<=")
    right = make_report("alfa_power", mid, high, "<=")
    worst = left if left.margin <= right.margin else right
    return make_report(
        "alfa_power", worst.lhs, worst.rhs, "<=", margin=min(left.margin, right.margin),
        tol=min(left.tolerance, right.tolerance), audit=gate,
        details={"N": N, "left_margin": left.margin, "right_margin": right.margin},
        inputs={"space": space.spec, "u": u, "v": v, "alpha": alpha},
    )


def gen_parallelogram(space, u, v) -> InequalityReport:
    """|u+v|^2 + |u-v|^2 <= 2 C_NJ (|u|^2 + |v|^2) with the analytic constant."""
    space = _space(space)
    u, v = _operands(space, u, v)
    n = space.norm
    c = space.cnj()
    lhs = n(u + v) ** 2 + n(u - v) ** 2
    rhs = 2 * c * (n(u) ** 2 + n(v) ** 2)
    return make_report("gen_parallelogram", lhs, rhs, "<=", details={"cnj": c},
                       inputs={"space": space.spec, "u": u, "v": v})


def clarkson_scalar(f, a: float, b: float, *, strict=False) -> InequalityReport:
    """f(|a|) + f(|b|) <= 2 f(|a-b|/2) + 2 f(|a+b|/2) for f in S_0."""
    f = as_function(f)
    g = f.scalar
    a, b = float(a), float(b)
    lhs = g(abs(a)) + g(abs(b))
    rhs = 2 * g(abs(a - b) / 2) + 2 * g(abs(a + b) / 2)
    rep = make_report("clarkson_scalar", lhs, rhs, "<=", audit=_s0(f),
                      inputs={"f": f.id, "a": a, "b": b})
    return _finish(rep, strict)


# --------------------------------------------------------------------------
# Hanner and Clarkson


def _schatten_gate(space, p, u, v) -> list:
    """Matrix operands need p <= 4/3 (p >= 4) or a PSD condition."""
    if not isinstance(space, sp.SchattenSpace):
        return []
    if p <= 2:
        if p <= 4 / 3:
            return [("schatten: p <= 4/3", True)]
        return [("schatten: u+v and u-v PSD", _is_psd(u + v) and _is_psd(u - v))]
    if p >= 4:
        return [("schatten: p >= 4", True)]
    return [("schatten: u and v PSD", _is_psd(u) and _is_psd(v))]


def _is_psd(M) -> bool:
    try:
        sp.check_psd(M)
        return True
    except Exception:
        return False


def hanner_classic(space, u, v) -> InequalityReport:
    """(|u|+|v|)^p + ||u|-|v||^p <= |u+v|^p + |u-v|^p for p <= 2, reversed for p >= 2."""
    space = _space(space)
    p = _finite_p(space)
    u, v = _operands(space, u, v)
    n = space.norm
    nu, nv = n(u), n(v)
    outer = (nu + nv) ** p + abs(nu - nv) ** p
    inner = n(u + v) ** p + n(u - v) ** p
    lhs, rhs, rel = (outer, inner, "<=") if p <= 2 else (outer, inner, ">=")
    return make_report("hanner_classic", lhs, rhs, rel, audit=_schatten_gate(space, p, u, v),
                       inputs={"space": space.spec, "u": u, "v": v})


def hanner_functional(space, f, u, v, *, strict=False) -> InequalityReport:
    """Hanner with f applied to each norm.

    p <= 2 needs f nondecreasing, convex, f(0) = 0 and f(x^(1/p)) concave.
    p >= 2 needs f nondecreasing, f(0) = 0 and f(x^(1/p)) convex.
    """
    space = _space(space)
    p = _finite_p(space)
    f = as_function(f)
    u, v = _operands(space, u, v)
    if p <= 2:
        audit = _flags(f, "nondecreasing", "convex", "vanishes_at_zero")
        audit.append(_composed(f, 1 / p, "concave"))
    else:
        audit = _flags(f, "nondecreasing", "vanishes_at_zero")
        audit.append(_composed(f, 1 / p, "convex"))
    audit += _schatten_gate(space, p, u, v)
    n, g = space.norm, f.scalar
    nu, nv = n(u), n(v)
    outer = g(nu + nv) + g(abs(nu - nv))
    inner = g(n(u + v)) + g(n(u - v))
    rep = make_report("hanner_functional", outer, inner, "<=" if p <= 2 else ">=",
                      audit=audit, inputs={"space": space.spec, "f": f.id, "u": u, "v": v})
    return _finish(rep, strict)


def easy_clarkson(space, u, v) -> InequalityReport:
    """2^(p-1) S <= |u-v|^p + |u+v|^p <= 2 S, S = |u|^p + |v|^p, swapped for p >= 2."""
    space = _space(space)
    p = _finite_p(space)
    u, v = _operands(space, u, v)
    n = space.norm
    s = n(u) ** p + n(v) ** p
    mid = n(u - v) ** p + n(u + v) ** p
    lo, hi = (2 ** (p - 1), 2.0) if p <= 2 else (2.0, 2 ** (p - 1))
    left = make_report("easy_clarkson", lo * s, mid, "<=")
    right = make_report("easy_clarkson", mid, hi * s, "<=")
    worst = left if left.margin <= right.margin else right
    return make_report(
        "easy_clarkson", worst.lhs, worst.rhs, "<=", margin=min(left.margin, right.margin),
        tol=min(left.tolerance, right.tolerance),
        details={"left_margin": left.margin, "right_margin": right.margin},
        inputs={"space": space.spec, "u": u, "v": v},
    )


def lp_quadruple(space, f, q, r, y, z, *, strict=False) -> InequalityReport:
    """Quadruple inequality in L^p; coefficient 1 for p <= 2 and C(p)/2 for p >= 2."""
    space = _space(space)
    p = _finite_p(space)
    f = as_function(f)
    q, r, y, z = _operands(space, q, r, y, z)
    audit = _flags(f, "nondecreasing", "convex", "vanishes_at_zero")
    audit.append(_composed(f, 1 / p, "concave"))
    coef = 1.0 if p <= 2 else sp.c_constant(p) / 2
    t = _quad_terms(space.norm, f.scalar, y, z, q, r)
    lhs = t["yq"] + t["zr"]
    rhs = coef * (t["yz"] + t["rq"] + t["zq"] + t["yr"])
    rep = make_report("lp_quadruple", lhs, rhs, "<=", audit=audit, details={"coefficient": coef},
                      inputs={"space": space.spec, "f": f.id, "q": q, "r": r, "y": y, "z": z})
    return _finish(rep, strict)


# --------------------------------------------------------------------------
# 2-uniform convexity


def two_unif_convexity_classic(space, x, y) -> InequalityReport:
    """|x|^2 + |y|^2 >= 2|(x+y)/2|^2 + 2(p-1)|(x-y)/2|^2 for p <= 2, reversed for p >= 2."""
    space = _space(space)
    p = _finite_p(space)
    x, y = _operands(space, x, y)
    n = space.norm
    outer = n(x) ** 2 + n(y) ** 2
    inner = 2 * n((x + y) / 2) ** 2 + 2 * (p - 1) * n((x - y) / 2) ** 2
    return make_report("two_unif_convexity_classic", outer, inner, ">=" if p <= 2 else "<=",
                       inputs={"space": space.spec, "x": x, "y": y})


def two_unif_convexity_functional(space, f, x, y, *, strict=False) -> InequalityReport:
    """Functional 2-uniform convexity.

    p <= 2: f(|x|) + f(|y|) >= 2 f(|(x+y)/2|) + floor(2(p-1)) f(|(x-y)/2|),
    for f nondecreasing with f(0) = 0 and f(sqrt x) convex.
    p >= 2: f(|x|) + f(|y|) <= 2 f(|(x+y)/2|) + 2 C~(p) f(|(x-y)/2|), f in S_0.
    """
    space = _space(space)
    p = _finite_p(space)
    f = as_function(f)
    x, y = _operands(space, x, y)
    n, g = space.norm, f.scalar
    outer = g(n(x)) + g(n(y))
    half_sum, half_diff = g(n((x + y) / 2)), g(n((x - y) / 2))
    details = {}
    if p <= 2:
        coef = sp.floor_two_p_minus_one(p)
        audit = _flags(f, "nondecreasing", "vanishes_at_zero")
        audit.append(_composed(f, 0.5, "convex"))
        details["degenerate_coefficient"] = coef == 0
        rel = ">="
    else:
        coef = 2 * sp.c_tilde(p)
        audit = _s0(f)
        rel = "<="
    details["coefficient"] = coef
    inner = 2 * half_sum + coef * half_diff
    rep = make_report("two_unif_convexity_functional", outer, inner, rel, audit=audit,
                      details=details, inputs={"space": space.spec, "f": f.id, "x": x, "y": y})
    return _finish(rep, strict)


def _ge2(space) -> float:
    p = _finite_p(space)
    if p < 2:
        raise BadP(f"need p >= 2, got {p}")
    return p


def two_unif_quadruple_p_ge_2(space, f, q, r, y, z, *, strict=False) -> InequalityReport:
    """f(|y-q|) + f(|z-r|) <= f(|z-q|) + f(|y-r|) + C~(p)[f(|y-z|) + f(|r-q|)]."""
    space = _space(space)
    p = _ge2(space)
    f = as_function(f)
    q, r, y, z = _operands(space, q, r, y, z)
    ct = sp.c_tilde(p)
    t = _quad_terms(space.norm, f.scalar, y, z, q, r)
    lhs = t["yq"] + t["zr"]
    rhs = t["zq"] + t["yr"] + ct * (t["yz"] + t["rq"])
    rep = make_report("two_unif_quadruple_p_ge_2", lhs, rhs, "<=", audit=_s0(f),
                      details={"c_tilde": ct},
                      inputs={"space": space.spec, "f": f.id, "q": q, "r": r, "y": y, "z": z})
    return _finish(rep, strict)


def two_unif_translated_p_ge_2(space, f, x, y, u, v=None, *, strict=False) -> InequalityReport:
    """f(|x|) + f(|y|) <= f(|v|) + f(|x+y+v|) + C~(p)[f(|x+u|) + f(|y+u|)].

    ``v`` defaults to ``u`` (single translation); pass it to use two
    independent translations.
    """
    space = _space(space)
    p = _ge2(space)
    f = as_function(f)
    shared = v is None
    if shared:
        v = u
    x, y, u, v = _operands(space, x, y, u, v)
    n, g = space.norm, f.scalar
    ct = sp.c_tilde(p)
    lhs = g(n(x)) + g(n(y))
    rhs = g(n(v)) + g(n(x + y + v)) + ct * (g(n(x + u)) + g(n(y + u)))
    rep = make_report("two_unif_translated_p_ge_2", lhs, rhs, "<=", audit=_s0(f),
                      details={"c_tilde": ct, "shared_translation": shared},
                      inputs={"space": space.spec, "f": f.id, "x": x, "y": y, "u": u, "v": v})
    return _finish(rep, strict)


# --------------------------------------------------------------------------
# determinantal checks


def _psd_triple(A, B, C):
    mats = [sp.check_psd(M) for M in (A, B, C)]
    if len({M.shape for M in mats}) != 1:
        raise DimensionMismatch(f"matrix shapes differ: {[M.shape for M in mats]}")
    return mats


def _det(M) -> float:
    # closed forms keep small integer matrices exact
    if M.shape == (1, 1):
        return float(M[0, 0])
    if M.shape == (2, 2):
        return float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    return float(np.linalg.det(M)) if M.size else 1.0


def zhang_det(A, B, C) -> InequalityReport:
    """det(A+B+C) + det C >= det(A+C) + det(B+C) for PSD A, B, C."""
    A, B, C = _psd_triple(A, B, C)
    lhs = _det(A + B + C) + _det(C)
    rhs = _det(A + C) + _det(B + C)
    return make_report("zhang_det", lhs, rhs, ">=", inputs={"A": A, "B": B, "C": C})


def _zhang_sides(g, A, B, C):
    d = {"A": _det(A), "B": _det(B), "C": _det(C), "AB": _det(A + B), "BC": _det(B + C),
         "AC": _det(A + C), "ABC": _det(A + B + C)}
    first = (g(d["ABC"]) + g(d["C"]), g(d["AC"]) + g(d["BC"]))
    second = ((g(d["A"]) + g(d["B"]) + g(d["C"])) / 3 + g(d["ABC"]),
              2 / 3 * (g(d["AB"]) + g(d["BC"]) + g(d["AC"])))
    return first, second


def zhang_functional(f, A, B, C, *, strict=False) -> InequalityReport:
    """Functional Zhang inequality and its symmetrized companion; margin is the smaller slack."""
    f = as_function(f)
    A, B, C = _psd_triple(A, B, C)
    first, second = _zhang_sides(f.scalar, A, B, C)
    r1 = make_report("zhang_functional", *first, ">=")
    r2 = make_report("zhang_functional", *second, ">=")
    worst = r1 if r1.margin <= r2.margin else r2
    rep = make_report(
        "zhang_functional", worst.lhs, worst.rhs, ">=", margin=min(r1.margin, r2.margin),
        tol=min(r1.tolerance, r2.tolerance), audit=_flags(f, "nondecreasing", "convex"),
        details={"margin_plain": r1.margin, "margin_symmetrized": r2.margin},
        inputs={"f": f.id, "A": A, "B": B, "C": C},
    )
    return _finish(rep, strict)


def _sqrt_det(M) -> float:
    d = _det(M)
    scale = max(1.0, float(np.max(np.abs(M))) ** M.shape[0]) if M.size else 1.0
    if d < 0:
        if d < -DET_CLIP * scale:
            raise NegativeDeterminant(f"determinant {d:.3e} of a PSD sum")
        d = 0.0
    return math.sqrt(d)


def _serre_terms(A, B, C):
    return {
        "A": _sqrt_det(A), "B": _sqrt_det(B), "C": _sqrt_det(C),
        "AB": _sqrt_det(A + B), "BC": _sqrt_det(B + C), "CA": _sqrt_det(C + A),
        "ABC": _sqrt_det(A + B + C),
    }


def _two_by_two(A) -> list:
    return [("matrices are 2x2", A.shape == (2, 2))]


def serre_det(A, B, C) -> InequalityReport:
    """Square-root determinant inequality; the square root matches 2x2 matrices."""
    A, B, C = _psd_triple(A, B, C)
    t = _serre_terms(A, B, C)
    lhs = t["A"] + t["B"] + t["C"] + t["ABC"]
    rhs = t["AB"] + t["BC"] + t["CA"]
    return make_report("serre_det", lhs, rhs, "<=", audit=_two_by_two(A),
                       inputs={"A": A, "B": B, "C": C})


def serre_functional(f, A, B, C, *, strict=False) -> InequalityReport:
    """f applied to the square-root determinants, f nonnegative nondecreasing concave."""
    f = as_function(f)
    A, B, C = _psd_triple(A, B, C)
    t = _serre_terms(A, B, C)
    g = f.scalar
    lhs = g(t["AB"]) + g(t["BC"]) + g(t["CA"])
    rhs = g(t["A"] + t["B"] + t["C"]) + g(t["ABC"])
    audit = _flags(f, "nonnegative", "nondecreasing", "concave") + _two_by_two(A)
    rep = make_report("serre_functional", lhs, rhs, ">=", audit=audit,
                      inputs={"f": f.id, "A": A, "B": B, "C": C})
    return _finish(rep, strict)


# --------------------------------------------------------------------------
# Euclidean triples


def _triple(x, y, z, cone: bool):
    x, y, z = (np.asarray(a, dtype=float) for a in (x, y, z))
    if not x.shape == y.shape == z.shape:
        raise DimensionMismatch(f"shapes differ: {x.shape}, {y.shape}, {z.shape}")
    if cone and min(x.min(initial=0), y.min(initial=0), z.min(initial=0)) < 0:
        raise NotInPositiveCone("all coordinates must be nonnegative")
    return x, y, z


def _norm2(v) -> float:
    return sp.lp_norm(v, 2.0)


def frechet_identity(x, y, z) -> InequalityReport:
    """Equality check; margin is minus the absolute discrepancy."""
    x, y, z = _triple(x, y, z, cone=False)
    n = _norm2
    lhs = n(x) ** 2 + n(y) ** 2 + n(z) ** 2 + n(x + y + z) ** 2
    rhs = n(x + y) ** 2 + n(y + z) ** 2 + n(z + x) ** 2
    return make_report("frechet_identity", lhs, rhs, "=", margin=-abs(lhs - rhs),
                       inputs={"x": x, "y": y, "z": z})


def hornich_hlawka(x, y, z, n_power: int = 0) -> InequalityReport:
    """Hornich-Hlawka with every norm raised to 1/2**n_power."""
    if int(n_power) != n_power or n_power < 0:
        raise ValueError("n_power must be a nonnegative integer")
    x, y, z = _triple(x, y, z, cone=False)
    beta = 0.5 ** int(n_power)
    n = lambda v: _norm2(v) ** beta  # noqa: E731
    lhs = n(x) + n(y) + n(z) + n(x + y + z)
    rhs = n(x + y) + n(y + z) + n(z + x)
    return make_report("hornich_hlawka", lhs, rhs, ">=", details={"beta": beta},
                       inputs={"x": x, "y": y, "z": z, "n_power": int(n_power)})


def _frechet_functional(f, x, y, z, cone, check_id, strict):
    f = as_function(f)
    x, y, z = _triple(x, y, z, cone)
    g = f.scalar
    n = _norm2
    lhs = g(n(x + y) ** 2) + g(n(y + z) ** 2) + g(n(z + x) ** 2)
    rhs = g(n(x) ** 2 + n(y) ** 2 + n(z) ** 2) + g(n(x + y + z) ** 2) + g(0.0)
    rep = make_report(check_id, lhs, rhs, ">=", audit=_flags(f, "nondecreasing", "concave"),
                      inputs={"f": f.id, "x": x, "y": y, "z": z})
    return _finish(rep, strict)


def frechet_functional(f, x, y, z, *, strict=False) -> InequalityReport:
    """Functional companion of the Frechet identity on the positive cone."""
    return _frechet_functional(f, x, y, z, True, "frechet_functional", strict)


def frechet_functional_signed(f, x, y, z) -> InequalityReport:
    """Same formula with the positive-cone restriction lifted (probe only)."""
    return _frechet_functional(f, x, y, z, False, "frechet_functional_signed", False)


def revhh_signed(x, y, z) -> InequalityReport:
    """Reverse Hornich-Hlawka (square-root case) on arbitrary vectors."""
    rep = _frechet_functional("sqrt", x, y, z, False, "revhh_signed", False)
    return rep


def _popoviciu(f, x, y, z, cone, check_id, strict):
    f = as_function(f)
    x, y, z = _triple(x, y, z, cone)
    g = f.scalar
    n = _norm2
    lhs = (g(n(x)) + g(n(y)) + g(n(z))) / 3 + g(n(x + y + z))
    rhs = 2 / 3 * (g(n(x + y)) + g(n(y + z)) + g(n(z + x)))
    audit = _flags(f, "nondecreasing", "vanishes_at_zero") + [_composed(f, 0.5, "convex")]
    rep = make_report(check_id, lhs, rhs, ">=", audit=audit,
                      inputs={"f": f.id, "x": x, "y": y, "z": z})
    return _finish(rep, strict)


def popoviciu_vec(f, x, y, z, *, strict=False) -> InequalityReport:
    """Popoviciu-type inequality for Euclidean norms on the positive cone."""
    return _popoviciu(f, x, y, z, True, "popoviciu_vec", strict)


def popoviciu_vec_signed(f, x, y, z) -> InequalityReport:
    return _popoviciu(f, x, y, z, False, "popoviciu_vec_signed", False)


def strong_superadditivity(x, y, z) -> InequalityReport:
    """|x+y+z|^2 + |z|^2 >= |x+z|^2 + |y+z|^2 on the positive cone."""
    x, y, z = _triple(x, y, z, cone=True)
    n = _norm2
    lhs = n(x + y + z) ** 2 + n(z) ** 2
    rhs = n(x + z) ** 2 + n(y + z) ** 2
    return make_report("strong_superadditivity", lhs, rhs, ">=", inputs={"x": x, "y": y, "z": z})


# --------------------------------------------------------------------------
# the strengthened (averaged) Zhang variant


def strengthened_zhang(f, A, B, C) -> InequalityReport:
    """Averaged variant: determinants of the means (A+B+C)/3 and pairwise means."""
    f = as_function(f)
    A, B, C = _psd_triple(A, B, C)
    g = f.scalar
    lhs = (g(_det(A)) + g(_det(B)) + g(_det(C))) / 3 + g(_det((A + B + C) / 3))
    rhs = 2 / 3 * (g(_det((A + B) / 2)) + g(_det((B + C) / 2)) + g(_det((A + C) / 2)))
    return make_report("strengthened_zhang", lhs, rhs, ">=",
                       audit=_flags(f, "nondecreasing", "convex"),
                       inputs={"f": f.id, "A": A, "B": B, "C": C})
