"""Seeded random probing, local refinement and the fixed falsifier.

Probe ``i`` draws its operands from ``np.random.default_rng([seed, i])`` so a
probe's operands do not depend on evaluation order or on how probes are split
between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import inequalities as ineq
from . import majorization as mj
from . import spaces as sp
from .errors import IneqLabError, UnknownCheck
from .report import InequalityReport, make_report, to_jsonable
from .scalar_functions import as_function

MIX = (0.4, 0.2, 0.2, 0.2)  # uniform, heavy, sparse, near-collinear


# --------------------------------------------------------------------------
# operand generators


def _kind(rng) -> str:
    return ("uniform", "heavy", "sparse", "collinear")[rng.choice(4, p=MIX)]


def gen_points(count: int):
    """``count`` operands of the space's shape from the mixed distribution."""

    def gen(rng, space, params):
        kind = _kind(rng)
        shape = space.shape
        if kind == "collinear":
            base = rng.uniform(-1.0, 1.0, shape)
            direction = rng.uniform(-1.0, 1.0, shape)
            ts = rng.uniform(-2.0, 2.0, count)
            return tuple(base + t * direction + 1e-3 * rng.uniform(-1.0, 1.0, shape) for t in ts)
        return tuple(sp.sample_coords(rng, shape, kind) for _ in range(count))

    return gen


def gen_cone(count: int):
    inner = gen_points(count)

    def gen(rng, space, params):
        return tuple(np.abs(v) for v in inner(rng, space, params))

    return gen


def gen_scalars(rng, space, params):
    kind = _kind(rng)
    if kind == "collinear":
        a = rng.uniform(-3.0, 3.0)
        return (a, -a + 1e-3 * rng.uniform(-1.0, 1.0))
    return tuple(3.0 * sp.sample_coords(rng, (2,), kind))


def gen_psd(rng, space, params):
    m = space.m if space.fixed else int(rng.integers(1, space.m + 1))
    mats = []
    for _ in range(3):
        kind = "lowrank" if rng.random() < 0.25 else "wishart"
        mats.append(rng.uniform(0.1, 3.0) * sp.random_psd(rng, m, kind))
    return tuple(mats)


def gen_hanner(rng, space, params):
    """Matrix operands satisfying the Schatten gates; vectors are unrestricted."""
    if not isinstance(space, sp.SchattenSpace):
        return gen_points(2)(rng, space, params)
    p, m = space.p, space.m
    if p <= 4 / 3 or p >= 4:
        return gen_points(2)(rng, space, params)
    P, Q = sp.random_psd(rng, m), sp.random_psd(rng, m)
    if rng.random() < 0.3:
        Q = sp.random_psd(rng, m, "lowrank")
    if p <= 2:
        return (P + Q, P - Q)
    return (P, Q)


def gen_truncated(kind: str):
    """Admissible (x, y): x is a random averaging of y padded with zeros."""

    def gen(rng, space, params):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(2, n + 1))
        if rng.random() < 0.2:
            y = rng.integers(0, 4, m).astype(float)
        else:
            y = rng.uniform(0.0, 2.0, m)
        x = np.concatenate([y, np.zeros(n - m)])
        for _ in range(int(rng.integers(0, 2 * n))):
            i, j = rng.choice(n, 2, replace=False)
            lam = rng.uniform()
            x[i], x[j] = lam * x[i] + (1 - lam) * x[j], (1 - lam) * x[i] + lam * x[j]
        x = x[rng.permutation(n)]
        if kind == "convex" and rng.random() < 0.5:
            x = x * rng.uniform(0.5, 1.0)
        if kind == "concave" and rng.random() < 0.5:
            bumped = x + rng.uniform(0.0, 0.3, n) * (rng.random(n) < 0.5)
            if mj.truncated_concave_applicable(bumped, y).holds:
                x = bumped
        return (x, y)

    return gen


# --------------------------------------------------------------------------
# admissibility projections used by refine


def _clip(ops):
    return tuple(np.maximum(o, 0.0) for o in ops)


def _psd(ops):
    return tuple(sp.psd_project((o + o.T) / 2) for o in ops)


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Check:
    id: str
    run: Callable  # (space, f, params, operands) -> InequalityReport
    gen: Callable  # (rng, space, params) -> operands
    space: str | None = None
    f: str | None = None
    params: dict = field(default_factory=dict)
    expectation: str = "holds"  # "holds", "false" or "open"
    project: Callable | None = None


REGISTRY: dict[str, Check] = {}


def register(check: Check) -> Check:
    REGISTRY[check.id] = check
    return check


def _reg(cid, run, gen, space=None, f=None, expectation="holds", project=None, **params):
    register(Check(cid, run, gen, space, f, params, expectation, project))


_reg("quadruple_norm", lambda s, f, k, o: ineq.quadruple_norm(s, *o), gen_points(4), "lp:1:5")
_reg("schotz_inner", lambda s, f, k, o: ineq.schotz_inner(s, f, *o), gen_points(4), "euclid:3", "xlog1p")
_reg("functional_parallelogram", lambda s, f, k, o: ineq.functional_parallelogram(s, f, *o),
     gen_points(2), "lp:1.5:4", "pow:1.5")
_reg("four_point_functional", lambda s, f, k, o: ineq.four_point_functional(s, f, *o),
     gen_points(3), "lp:1:3", "xlog1p")
_reg("schotz_banach", lambda s, f, k, o: ineq.schotz_banach(s, f, *o), gen_points(4), "lp:3:4", "pow:1.3")
_reg("alfa_power", lambda s, f, k, o: ineq.alfa_power(s, *o, k.get("alpha", 1.5)),
     gen_points(2), "lp:1.5:3", alpha=1.5)
_reg("clarkson_scalar", lambda s, f, k, o: ineq.clarkson_scalar(f, *o), gen_scalars, None, "pow:1.5")
_reg("hanner_classic", lambda s, f, k, o: ineq.hanner_classic(s, *o), gen_hanner, "lp:1.5:6")
_reg("hanner_functional", lambda s, f, k, o: ineq.hanner_functional(s, f, *o), gen_hanner,
     "lp:1.5:5", "pow:1.2")
_reg("easy_clarkson", lambda s, f, k, o: ineq.easy_clarkson(s, *o), gen_points(2), "lp:1.5:6")
_reg("lp_quadruple", lambda s, f, k, o: ineq.lp_quadruple(s, f, *o), gen_points(4), "lp:1.5:4", "pow:1.5")
_reg("two_unif_convexity_classic", lambda s, f, k, o: ineq.two_unif_convexity_classic(s, *o),
     gen_points(2), "lp:1.5:5")
_reg("two_unif_convexity_functional", lambda s, f, k, o: ineq.two_unif_convexity_functional(s, f, *o),
     gen_points(2), "lp:1.5:5", "pow:2")
_reg("two_unif_quadruple_p_ge_2", lambda s, f, k, o: ineq.two_unif_quadruple_p_ge_2(s, f, *o),
     gen_points(4), "lp:3:4", "pow:1")
_reg("two_unif_translated_p_ge_2",
     lambda s, f, k, o: ineq.two_unif_translated_p_ge_2(s, f, *o[:3], None if k.get("shared", True) else o[3]),
     gen_points(4), "lp:3:4", "pow:1", shared=True)
_reg("gen_parallelogram", lambda s, f, k, o: ineq.gen_parallelogram(s, *o), gen_points(2), "lp:1.5:8")
_reg("zhang_det", lambda s, f, k, o: ineq.zhang_det(*o), gen_psd, "psd:5", project=_psd)
_reg("zhang_functional", lambda s, f, k, o: ineq.zhang_functional(f, *o), gen_psd, "psd:4", "pow:2",
     project=_psd)
_reg("frechet_identity", lambda s, f, k, o: ineq.frechet_identity(*o), gen_points(3), "euclid:6")
_reg("hornich_hlawka", lambda s, f, k, o: ineq.hornich_hlawka(*o, k.get("n_power", 0)),
     gen_points(3), "euclid:3", n_power=0)
_reg("frechet_functional", lambda s, f, k, o: ineq.frechet_functional(f, *o), gen_cone(3), "euclid:3",
     "sqrt", project=_clip)
_reg("popoviciu_vec", lambda s, f, k, o: ineq.popoviciu_vec(f, *o), gen_cone(3), "euclid:3", "pow:2",
     project=_clip)
_reg("serre_det", lambda s, f, k, o: ineq.serre_det(*o), gen_psd, "psd:2!", project=_psd)
_reg("serre_functional", lambda s, f, k, o: ineq.serre_functional(f, *o), gen_psd, "psd:2!", "sqrt",
     project=_psd)
_reg("strong_superadditivity", lambda s, f, k, o: ineq.strong_superadditivity(*o), gen_cone(3),
     "euclid:4", project=_clip)
_reg("truncated_convex", lambda s, f, k, o: mj.truncated_convex_inequality(f, *o),
     gen_truncated("convex"), None, "pow:2", project=_clip)
_reg("truncated_concave", lambda s, f, k, o: mj.truncated_concave_inequality(f, *o),
     gen_truncated("concave"), None, "sqrt", project=_clip)
_reg("revhh_signed", lambda s, f, k, o: ineq.revhh_signed(*o), gen_points(3), "euclid:2",
     expectation="false")
_reg("frechet_functional_signed", lambda s, f, k, o: ineq.frechet_functional_signed(f, *o),
     gen_points(3), "euclid:2", "sqrt", expectation="open")
_reg("popoviciu_vec_signed", lambda s, f, k, o: ineq.popoviciu_vec_signed(f, *o), gen_points(3),
     "euclid:2", "pow:2", expectation="open")

ALIASES = {"hanner": "hanner_classic", "zhang": "zhang_det", "serre": "serre_det"}
OPEN_PROBLEMS = ("frechet_functional_signed", "popoviciu_vec_signed", "revhh_signed")


def get_check(check_id: str) -> Check:
    cid = ALIASES.get(check_id, check_id)
    if cid not in REGISTRY:
        raise UnknownCheck(f"unknown check {check_id!r}; known: {', '.join(sorted(REGISTRY))}")
    return REGISTRY[cid]


# --------------------------------------------------------------------------
# probing


@dataclass
class SearchResult:
    check_id: str
    probes: int
    worst_margin: float
    witness: dict | None
    seed: int
    refined: bool = False
    space: str | None = None
    f: str | None = None
    params: dict = field(default_factory=dict)
    inconclusive_count: int = 0
    violations: int = 0
    worst_report: InequalityReport | None = None

    @property
    def holds_all(self) -> bool:
        return self.inconclusive_count == 0 and self.violations == 0

    def to_dict(self) -> dict:
        return to_jsonable({
            "check_id": self.check_id,
            "probes": self.probes,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
            "seed": self.seed,
            "refined": self.refined,
            "space": self.space,
            "f": self.f,
            "params": self.params,
            "inconclusive_count": self.inconclusive_count,
            "violations": self.violations,
            "holds_all": self.holds_all,
            "worst_report": self.worst_report.to_dict() if self.worst_report else None,
        })


def _resolve(check: Check, space, f):
    space = space if space is not None else check.space
    if isinstance(space, str):
        space = sp.parse_space(space)
    fid = f if f is not None else check.f
    fn = as_function(fid) if fid is not None else None
    return space, fn


def _witness(ops) -> dict:
    return {f"operand_{i}": np.asarray(o) for i, o in enumerate(ops)}


def _ops_from_witness(w: dict):
    return tuple(w[f"operand_{i}"] for i in range(len(w)))


def evaluate(check_id: str, operands, space=None, f=None, params=None) -> InequalityReport:
    """Run a registered checker on explicit operands."""
    check = get_check(check_id)
    sp_, fn = _resolve(check, space, f)
    kw = {**check.params, **(params or {})}
    return check.run(sp_, fn, kw, tuple(operands))


def probe(check_id: str, space=None, f=None, trials: int = 10_000, seed: int = 0,
          params=None) -> SearchResult:
    """Evaluate a checker on ``trials`` seeded random admissible operand sets."""
    check = get_check(check_id)
    if trials < 0:
        raise ValueError("trials must be >= 0")
    sp_, fn = _resolve(check, space, f)
    return _run_probe(check, sp_, fn, {**check.params, **(params or {})}, trials, seed)


def _run_probe(check, sp_, fn, kw, trials, seed) -> SearchResult:
    worst, worst_ops, worst_rep = math.inf, None, None
    worst_any = (math.inf, None, None)
    inconclusive = violations = 0
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        ops = check.gen(rng, sp_, kw)
        rep = check.run(sp_, fn, kw, ops)
        if rep.inconclusive:
            inconclusive += 1
            if rep.margin < worst_any[0]:
                worst_any = (rep.margin, ops, rep)
            continue
        if rep.violated:
            violations += 1
        if rep.margin < worst:
            worst, worst_ops, worst_rep = rep.margin, ops, rep
    if worst_ops is None and worst_any[1] is not None:
        worst, worst_ops, worst_rep = worst_any
    return SearchResult(
        check.id, trials, worst, _witness(worst_ops) if worst_ops is not None else None, seed,
        space=getattr(sp_, "spec", None), f=fn.id if fn else None, params=kw,
        inconclusive_count=inconclusive, violations=violations, worst_report=worst_rep,
    )


def refine(result: SearchResult, budget: int = 2000, *, step0: float = 0.1, shrink: float = 0.5,
           min_step: float = 1e-6) -> SearchResult:
    """Pattern search on the witness coordinates, lowering the margin.

    Moves that raise, leave the admissible set or make the hypothesis audit
    fail are rejected. The returned margin is never above the input's.
    """
    if result.witness is None or budget <= 0:
        return result
    check = get_check(result.check_id)
    sp_, fn = _resolve(check, result.space, result.f)
    kw = dict(result.params)
    ops = [np.asarray(o, dtype=float) for o in _ops_from_witness(result.witness)]
    shapes = [o.shape for o in ops]
    sizes = [o.size for o in ops]

    def unflat(vec):
        parts, at = [], 0
        for shape, size in zip(shapes, sizes):
            parts.append(vec[at:at + size].reshape(shape))
            at += size
        out = tuple(parts)
        return check.project(out) if check.project else out

    def score(cand):
        try:
            rep = check.run(sp_, fn, kw, cand)
        except (IneqLabError, ValueError, np.linalg.LinAlgError, FloatingPointError):
            return None
        if rep.inconclusive or not np.isfinite(rep.margin):
            return None
        return rep

    x = np.concatenate([o.reshape(-1) for o in ops])
    best_ops = tuple(ops)
    best_rep = score(best_ops)
    if best_rep is None:
        return result
    best = best_rep.margin
    scale = max(1.0, float(np.max(np.abs(x)))) if x.size else 1.0
    step = step0 * scale
    evals = 0
    while step >= min_step and evals < budget:
        improved = False
        for i in range(x.size):
            for s in (step, -step):
                if evals >= budget:
                    break
                cand = x.copy()
                cand[i] += s
                cand_ops = unflat(cand)
                evals += 1
                rep = score(cand_ops)
                if rep is not None and rep.margin < best:
                    x = np.concatenate([o.reshape(-1) for o in cand_ops])
                    best, best_ops, best_rep = rep.margin, cand_ops, rep
                    improved = True
                    break
            if evals >= budget:
                break
        if not improved:
            step *= shrink
    if best >= result.worst_margin:
        return result
    return SearchResult(
        result.check_id, result.probes, best, _witness(best_ops), result.seed, True,
        result.space, result.f, kw, result.inconclusive_count,
        result.violations + (1 if best_rep.violated and not result.violations else 0), best_rep,
    )


def probe_open_problem(which: str, trials: int = 100_000, seed: int = 0, cone: bool = False,
                       dim: int = 2, f=None) -> SearchResult:
    """Run a positive-cone formula on signed operands (or on the cone as a control).

    The result is evidence only; no expected outcome is attached.
    """
    if which not in OPEN_PROBLEMS:
        raise UnknownCheck(f"{which!r} is not an open-problem probe; choose from {OPEN_PROBLEMS}")
    check = get_check(which)
    if cone:
        check = Check(which, check.run, gen_cone(3), check.space, check.f, check.params,
                      "holds", _clip)
    space = sp.euclid(dim)
    sp_, fn = _resolve(check, space, f)
    if trials == 0:
        return SearchResult(which, 0, math.inf, None, seed, space=space.spec,
                            f=fn.id if fn else None)
    return _run_probe(check, sp_, fn, dict(check.params), trials, seed)


# --------------------------------------------------------------------------
# the fixed falsifier

ZHANG_A = ((1, 0), (0, 1))
ZHANG_B = ((1, 0), (0, 2))
ZHANG_C = ((1, 1), (1, 2))


def _fdet(M) -> Fraction:
    (a, b), (c, d) = M
    return Fraction(a) * Fraction(d) - Fraction(b) * Fraction(c)


def _fadd(*Ms):
    return tuple(tuple(sum(Fraction(M[i][j]) for M in Ms) for j in range(2)) for i in range(2))


def _fscale(M, s):
    return tuple(tuple(Fraction(v) * s for v in row) for row in M)


def zhang_falsifier_exact(f=lambda t: t * t) -> dict:
    """Exact rational sides of the averaged and the plain inequality."""
    A, B, C = ZHANG_A, ZHANG_B, ZHANG_C
    third, half = Fraction(1, 3), Fraction(1, 2)
    lhs = (f(_fdet(A)) + f(_fdet(B)) + f(_fdet(C))) * third + f(_fdet(_fscale(_fadd(A, B, C), third)))
    rhs = Fraction(2, 3) * (f(_fdet(_fscale(_fadd(A, B), half))) + f(_fdet(_fscale(_fadd(B, C), half)))
                            + f(_fdet(_fscale(_fadd(A, C), half))))
    plain = f(_fdet(_fadd(A, B, C))) + f(_fdet(C)) - f(_fdet(_fadd(A, C))) - f(_fdet(_fadd(B, C)))
    return {"lhs": lhs, "rhs": rhs, "margin": lhs - rhs, "plain_margin": plain}


def falsify_strengthened_zhang() -> InequalityReport:
    """The averaged determinant inequality fails for f(x) = x**2 on three fixed 2x2 matrices."""
    ex = zhang_falsifier_exact()
    A, B, C = (np.array(M, dtype=float) for M in (ZHANG_A, ZHANG_B, ZHANG_C))
    numeric = ineq.strengthened_zhang("pow:2", A, B, C)
    rep = make_report(
        "strengthened_zhang", float(ex["lhs"]), float(ex["rhs"]), ">=",
        margin=float(ex["margin"]), audit=numeric.hypothesis_audit,
        inputs={"f": "pow:2", "A": A, "B": B, "C": C},
        details={
            "expected_false": True,
            "exact_lhs": str(ex["lhs"]),
            "exact_rhs": str(ex["rhs"]),
            "exact_margin": str(ex["margin"]),
            "float_margin": numeric.margin,
            "plain_margin": float(ex["plain_margin"]),
        },
    )
    return rep


def zhang_falsifier_reports() -> tuple[InequalityReport, InequalityReport]:
    """(averaged variant, which fails; plain functional inequality, which holds)."""
    A, B, C = (np.array(M, dtype=float) for M in (ZHANG_A, ZHANG_B, ZHANG_C))
    plain = ineq.zhang_functional("pow:2", A, B, C)
    return falsify_strengthened_zhang(), plain
