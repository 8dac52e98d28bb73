"""The full verification battery: one row per (check, space, function) setting."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import search
from .report import to_jsonable

DEFAULT_TRIALS = 10_000


@dataclass(frozen=True)
class Row:
    check_id: str
    space: str | None = None
    f: str | None = None
    params: tuple = ()

    @property
    def label(self) -> str:
        bits = [b for b in (self.space, self.f) if b]
        bits += [f"{k}={v}" for k, v in self.params]
        return f"{self.check_id}[{','.join(bits)}]" if bits else self.check_id


ROWS = (
    Row("quadruple_norm", "lp:1:5"),
    Row("quadruple_norm", "schatten:1:3"),
    Row("schotz_inner", "euclid:3", "xlog1p"),
    Row("schotz_inner", "euclid:2", "pow:1.5"),
    Row("functional_parallelogram", "lp:1.5:4", "pow:1.5"),
    Row("functional_parallelogram", "euclid:4", "pow:1"),
    Row("four_point_functional", "lp:1:3", "xlog1p"),
    Row("schotz_banach", "lp:3:4", "pow:1.3"),
    Row("schotz_banach", "schatten:1.5:2", "logcosh"),
    Row("alfa_power", "lp:1.5:3", None, (("alpha", 1.5),)),
    Row("alfa_power", "lp:inf:4", None, (("alpha", 2.0),)),
    Row("clarkson_scalar", None, "pow:1.5"),
    Row("clarkson_scalar", None, "sqshift:1"),
    Row("hanner_classic", "lp:1.5:6"),
    Row("hanner_classic", "lp:3:6"),
    Row("hanner_classic", "schatten:1.2:3"),
    Row("hanner_classic", "schatten:1.5:3"),
    Row("hanner_classic", "schatten:3:3"),
    Row("hanner_classic", "schatten:4:3"),
    Row("hanner_functional", "lp:1.5:5", "pow:1.2"),
    Row("hanner_functional", "lp:3:5", "pow:4"),
    Row("hanner_functional", "schatten:1.5:3", "pow:1.2"),
    Row("easy_clarkson", "lp:1.2:6"),
    Row("easy_clarkson", "lp:1.5:6"),
    Row("easy_clarkson", "lp:3:6"),
    Row("easy_clarkson", "lp:4:6"),
    Row("easy_clarkson", "schatten:1.2:3"),
    Row("easy_clarkson", "schatten:1.5:3"),
    Row("easy_clarkson", "schatten:3:3"),
    Row("easy_clarkson", "schatten:4:3"),
    Row("lp_quadruple", "lp:1.5:4", "pow:1.5"),
    Row("lp_quadruple", "lp:3:4", "pow:2"),
    Row("two_unif_convexity_classic", "lp:1.5:5"),
    Row("two_unif_convexity_classic", "schatten:1.5:3"),
    Row("two_unif_convexity_classic", "lp:3:5"),
    Row("two_unif_convexity_functional", "lp:1.5:5", "pow:2"),
    Row("two_unif_convexity_functional", "lp:1.2:5", "pow:2"),
    Row("two_unif_convexity_functional", "lp:3:4", "pow:1.5"),
    Row("two_unif_quadruple_p_ge_2", "lp:3:4", "pow:1"),
    Row("two_unif_quadruple_p_ge_2", "lp:4:4", "xlog1p"),
    Row("gen_parallelogram", "lp:1:8"),
    Row("gen_parallelogram", "lp:1.5:8"),
    Row("gen_parallelogram", "lp:2:8"),
    Row("gen_parallelogram", "lp:3:8"),
    Row("gen_parallelogram", "lp:inf:8"),
    Row("zhang_det", "psd:5"),
    Row("zhang_functional", "psd:4", "pow:2"),
    Row("zhang_functional", "psd:4", "expm1"),
    Row("frechet_identity", "euclid:6"),
    Row("hornich_hlawka", "euclid:3", None, (("n_power", 0),)),
    Row("hornich_hlawka", "euclid:3", None, (("n_power", 1),)),
    Row("hornich_hlawka", "euclid:3", None, (("n_power", 2),)),
    Row("frechet_functional", "euclid:3", "sqrt"),
    Row("frechet_functional", "euclid:3", "log1p"),
    Row("popoviciu_vec", "euclid:3", "pow:2"),
    Row("serre_det", "psd:2!"),
    Row("serre_functional", "psd:2!", "sqrt"),
    Row("strong_superadditivity", "euclid:4"),
    Row("truncated_convex", None, "pow:2"),
    Row("truncated_convex", None, "expm1"),
    Row("truncated_concave", None, "sqrt"),
    Row("truncated_concave", None, "log1p"),
    Row("revhh_signed", "euclid:2"),
    Row("frechet_functional_signed", "euclid:2", "log1p"),
    Row("popoviciu_vec_signed", "euclid:2", "pow:2"),
)


def run_row(row: Row, trials: int, seed: int, reference: bool) -> dict:
    check = search.get_check(row.check_id)
    start = time.perf_counter()
    res = search.probe(row.check_id, row.space, row.f, trials, seed, dict(row.params))
    elapsed = (time.perf_counter() - start) * 1000.0
    expectation = check.expectation
    if expectation == "holds":
        status = "ok" if res.holds_all else "UNEXPECTED"
    elif expectation == "false":
        status = "expected_false" if res.violations else "UNEXPECTED"
    else:
        status = "evidence"
    return to_jsonable({
        "check_id": row.check_id,
        "label": row.label,
        "space": res.space,
        "f": res.f,
        "params": dict(row.params),
        "trials": trials,
        "min_margin": res.worst_margin,
        "holds_all": res.holds_all,
        "inconclusive_count": res.inconclusive_count,
        "violations": res.violations,
        "expectation": expectation,
        "status": status,
        "worst_witness": res.witness,
        "runtime_ms": None if reference else round(elapsed, 3),
    })


def falsifier_row() -> dict:
    strengthened, plain = search.zhang_falsifier_reports()
    ok = strengthened.violated and plain.holds
    return to_jsonable({
        "check_id": "strengthened_zhang",
        "label": "strengthened_zhang[fixed]",
        "space": None,
        "f": "pow:2",
        "params": {},
        "trials": 1,
        "min_margin": strengthened.margin,
        "holds_all": strengthened.holds,
        "inconclusive_count": int(strengthened.inconclusive),
        "violations": int(strengthened.violated),
        "expectation": "false",
        "status": "expected_false" if ok else "UNEXPECTED",
        "worst_witness": strengthened.inputs,
        "plain_margin": plain.margin,
        "runtime_ms": None,
    })


def _row_job(args):
    return run_row(*args)


def run_suite(trials: int = DEFAULT_TRIALS, seed: int = 42, reference: bool = False,
              workers: int | None = None, rows=None) -> dict:
    """Run every row; rows are merged in table order whatever the worker count."""
    jobs = [(row, trials, seed, reference) for row in (ROWS if rows is None else rows)]
    if reference or workers == 1 or len(jobs) < 2:
        results = [_row_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_row_job, jobs))
    results.append(falsifier_row())
    unexpected = [r["label"] for r in results if r["status"] == "UNEXPECTED"]
    return {"seed": seed, "trials": trials, "reference": reference, "rows": results,
            "unexpected": unexpected, "ok": not unexpected}


def format_table(summary: dict) -> str:
    head = f"{'row':60s} {'trials':>7s} {'min_margin':>12s} {'inc':>4s} {'viol':>5s}  status"
    lines = [head, "-" * len(head)]
    for r in summary["rows"]:
        lines.append(f"{r['label']:60s} {r['trials']:7d} {r['min_margin']:12.4e} "
                     f"{r['inconclusive_count']:4d} {r['violations']:5d}  {r['status']}")
    return "\n".join(lines)
