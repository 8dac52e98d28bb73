"""Command-line front end.

Exit codes: 0 when every executed check holds (or fails where failure is
expected), 1 on an unexpected violation, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import majorization as mj
from . import scalar_functions as sf
from . import search
from . import spaces as sp
from . import suite
from .errors import IneqLabError
from .report import default_tolerance, to_jsonable

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    parts = text.replace(",", " ").split()
    try:
        return [float(t) for t in parts]
    except ValueError:
        raise UsageError(f"cannot parse numbers from {text!r}") from None


def _params(items) -> dict:
    out = {}
    for item in items or []:
        for piece in item.split(","):
            if not piece:
                continue
            key, sep, val = piece.partition("=")
            if not sep:
                raise UsageError(f"--params expects key=value, got {piece!r}")
            try:
                num = float(val)
                out[key] = int(num) if num.is_integer() and "." not in val else num
            except ValueError:
                out[key] = {"true": True, "false": False}.get(val.lower(), val)
    return out


def _emit(obj, out_path=None, stream=None):
    text = json.dumps(to_jsonable(obj), sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    print(text, file=stream or sys.stdout)


def _retol(report, tol):
    if tol is not None:
        report.tolerance = default_tolerance(report.lhs, report.rhs, tol)
    return report


# --------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    check = search.get_check(args.check_id)
    space = sp.parse_space(args.space) if args.space else None
    if args.f:
        sf.get(args.f)  # unknown ids are a usage error
    res_space, fn = search._resolve(check, space, args.f)
    kw = {**check.params, **_params(args.params)}
    bad = 0
    lines = []
    for i in range(args.trials):
        rng = np.random.default_rng([args.seed, i])
        ops = check.gen(rng, res_space, kw)
        rep = _retol(check.run(res_space, fn, kw, ops), args.tol)
        rep.seed = args.seed
        d = rep.to_dict()
        d["probe"] = i
        d["expectation"] = check.expectation
        lines.append(json.dumps(d, sort_keys=True))
        if check.expectation == "holds" and (rep.violated or rep.inconclusive):
            bad += 1
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 1 if bad else 0


def cmd_suite(args) -> int:
    if not args.all:
        raise UsageError("suite run needs --all")
    summary = suite.run_suite(args.trials, args.seed, args.reference,
                              1 if args.reference else args.workers)
    text = json.dumps(summary, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.table:
        print(suite.format_table(summary), file=sys.stderr)
    print(text)
    return 0 if summary["ok"] else 1


def cmd_constants(args) -> int:
    p = args.p
    out = {"p": p, "cnj_analytic": sp.cnj_analytic(p)}
    out["N"] = sp.n_constant(out["cnj_analytic"])
    out["C"] = sp.c_constant(p)
    out["C_tilde"] = sp.c_tilde(p) if p >= 2 else None
    out["floor_two_p_minus_one"] = sp.floor_two_p_minus_one(p) if 1 < p <= 2 else None
    if args.sampled:
        kind = sp.SchattenSpace if args.schatten else sp.LpSpace
        space = kind(p, args.dim)
        value, u, v = sp.cnj_search(space, args.trials, args.seed)
        out.update({"cnj_sampled": value, "space": space.spec, "trials": args.trials,
                    "seed": args.seed, "witness": {"u": u, "v": v}})
    _emit(out, args.out)
    return 0


_KINDS = {
    "hlp": mj.hlp_majorizes,
    "weak": mj.weak_majorizes,
    "tconvex": mj.truncated_convex_applicable,
    "tconcave": mj.truncated_concave_applicable,
}


def cmd_majorize(args) -> int:
    verdict = _KINDS[args.kind](_floats(args.x), _floats(args.y))
    out = verdict.to_dict()
    if args.f:
        if args.kind == "tconvex" and verdict.holds:
            out["report"] = mj.truncated_convex_inequality(args.f, _floats(args.x), _floats(args.y)).to_dict()
        elif args.kind == "tconcave" and verdict.holds:
            out["report"] = mj.truncated_concave_inequality(args.f, _floats(args.x), _floats(args.y)).to_dict()
    _emit(out, args.out)
    return 0


def cmd_function_audit(args) -> int:
    f = sf.get(args.fid)
    grid = sf.AuditGrid(points=args.grid_points, quad_draws=args.quad_draws, tol=args.tol,
                        seed=args.seed)
    measured = sf.audit_shape(f, grid)
    mismatched = [n for n in f.declared.names() if not getattr(measured, n)]
    out = {
        "id": f.id,
        "domain": list(f.domain),
        "declared": f.declared.to_dict(),
        "measured": measured.to_dict(),
        "in_S0": sf.is_in_S0(f, grid),
        "mismatched": mismatched,
    }
    _emit(out, args.out)
    return 1 if mismatched else 0


def cmd_search(args) -> int:
    if args.check_id == "zhang-falsifier":
        strengthened, plain = search.zhang_falsifier_reports()
        out = {"strengthened": strengthened.to_dict(), "plain": plain.to_dict(),
               "expected": {"strengthened": "false", "plain": "holds"}}
        _emit(out, args.out)
        return 0 if (strengthened.violated and plain.holds) else 1
    check = search.get_check(args.check_id)
    if args.cone:
        if check.id not in search.OPEN_PROBLEMS:
            raise UsageError("--cone applies only to the signed probes")
        dim = sp.parse_space(args.space).dim if args.space else 2
        res = search.probe_open_problem(check.id, args.trials, args.seed, cone=True, dim=dim, f=args.f)
    else:
        res = search.probe(check.id, args.space, args.f, args.trials, args.seed, _params(args.params))
    if args.refine:
        res = search.refine(res, args.refine)
    _emit(res.to_dict(), args.out)
    if check.expectation == "holds" and not args.cone and not res.holds_all:
        return 1
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", help="also write the JSON output to this path")

    ap = argparse.ArgumentParser(prog="ineqlab", description="Numerical checks of functional inequalities.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate one checker on seeded operands")
    p.add_argument("check_id")
    p.add_argument("--space")
    p.add_argument("--f")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--tol", type=float, help="relative tolerance (default 1e-9)")
    p.add_argument("--params", action="append", help="key=value[,key=value]")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", parents=[common], help="run the verification battery")
    p.add_argument("action", choices=["run"])
    p.add_argument("--all", action="store_true")
    p.add_argument("--trials", type=int, default=suite.DEFAULT_TRIALS)
    p.add_argument("--reference", action="store_true", help="single process, no timings")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--table", action="store_true", help="print an aligned table to stderr")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("constants", parents=[common], help="geometric constants for a given p")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--sampled", action="store_true")
    p.add_argument("--schatten", action="store_true")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--trials", type=int, default=10_000)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("majorize", parents=[common], help="majorization verdict with its ledger")
    p.add_argument("--kind", choices=sorted(_KINDS), required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--f", help="also evaluate the truncated inequality for this function")
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser("function-audit", parents=[common], help="grid audit of a catalog function")
    p.add_argument("fid")
    p.add_argument("--grid-points", type=int, default=sf.DEFAULT_GRID.points)
    p.add_argument("--quad-draws", type=int, default=sf.DEFAULT_GRID.quad_draws)
    p.add_argument("--tol", type=float, default=sf.DEFAULT_GRID.tol)
    p.set_defaults(func=cmd_function_audit, seed=0)

    p = sub.add_parser("search", parents=[common], help="seeded probe with optional refinement")
    p.add_argument("check_id", help="registered check id or 'zhang-falsifier'")
    p.add_argument("--space")
    p.add_argument("--f")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--refine", type=int, default=0, metavar="BUDGET")
    p.add_argument("--params", action="append")
    p.add_argument("--cone", action="store_true", help="cone-restricted control run for signed probes")
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 0:
        ap.error("--trials must be nonnegative")
    try:
        return args.func(args)
    except (UsageError, IneqLabError, ValueError) as exc:
        print(f"ineqlab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
