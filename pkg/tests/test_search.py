import math
from fractions import Fraction

import numpy as np
import pytest

from ineqlab import search
from ineqlab.errors import UnknownCheck


def test_probe_is_deterministic():
    a = search.probe("hanner_classic", "lp:1.5:4", trials=200, seed=7)
    b = search.probe("hanner_classic", "lp:1.5:4", trials=200, seed=7)
    assert a.to_dict() == b.to_dict()
    c = search.probe("hanner_classic", "lp:1.5:4", trials=200, seed=8)
    assert c.to_dict()["witness"] != a.to_dict()["witness"]


def test_probe_prefix_stable():
    # probe i only depends on (seed, i), so a longer run contains the shorter one
    short = search.probe("quadruple_norm", "lp:1:3", trials=50, seed=3)
    long = search.probe("quadruple_norm", "lp:1:3", trials=100, seed=3)
    assert long.worst_margin <= short.worst_margin


@pytest.mark.parametrize("cid,space,f", [
    ("hanner_classic", "lp:3:4", None),
    ("schotz_banach", "lp:3:3", "pow:1.3"),
    ("zhang_functional", "psd:3", "pow:2"),
    ("truncated_convex", None, "pow:2"),
])
def test_witness_reevaluates(cid, space, f):
    res = search.probe(cid, space, f, trials=100, seed=1)
    ops = [res.witness[f"operand_{i}"] for i in range(len(res.witness))]
    rep = search.evaluate(cid, ops, space, f)
    assert abs(rep.margin - res.worst_margin) <= 1e-12


def test_refine_never_worse():
    res = search.probe("revhh_signed", trials=300, seed=0)
    out = search.refine(res, 300)
    assert out.worst_margin <= res.worst_margin
    assert out.refined or out is res


def test_refine_lowers_signed_margin():
    res = search.probe("revhh_signed", trials=300, seed=0)
    out = search.refine(res, 500)
    assert out.worst_margin < res.worst_margin
    rep = search.evaluate("revhh_signed", [out.witness[f"operand_{i}"] for i in range(3)])
    assert rep.margin == pytest.approx(out.worst_margin, abs=1e-12)


def test_refine_respects_cone_projection():
    res = search.probe("strong_superadditivity", "euclid:3", trials=50, seed=0)
    out = search.refine(res, 200)
    assert out.worst_margin <= res.worst_margin
    assert out.worst_margin >= -1e-9
    for v in out.witness.values():
        assert np.all(np.asarray(v) >= 0)


def test_refine_zero_budget():
    res = search.probe("quadruple_norm", "lp:1:3", trials=10, seed=0)
    assert search.refine(res, 0) is res


def test_zero_trials():
    res = search.probe_open_problem("revhh_signed", trials=0)
    assert res.probes == 0 and res.worst_margin == math.inf and res.witness is None
    assert search.probe("quadruple_norm", "lp:1:3", trials=0).witness is None


def test_negative_trials():
    with pytest.raises(ValueError):
        search.probe("quadruple_norm", "lp:1:3", trials=-1)


def test_open_problem_cone_control():
    for which in search.OPEN_PROBLEMS:
        res = search.probe_open_problem(which, trials=500, seed=2, cone=True)
        assert res.worst_margin >= -1e-9, which


def test_open_problem_signed_finds_revhh_violation():
    res = search.probe_open_problem("revhh_signed", trials=2000, seed=0)
    assert res.worst_margin <= -0.1


def test_open_problem_rejects_theorems():
    with pytest.raises(UnknownCheck):
        search.probe_open_problem("hanner_classic")


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        search.get_check("nonexistent")


def test_aliases():
    assert search.get_check("hanner").id == "hanner_classic"
    assert search.get_check("zhang").id == "zhang_det"
    assert search.get_check("serre").id == "serre_det"


def test_falsifier_exact():
    ex = search.zhang_falsifier_exact()
    assert ex["lhs"] == 2 + Fraction(14, 9) ** 2 == Fraction(358, 81)
    assert ex["rhs"] == Fraction(55, 12)
    assert ex["margin"] == Fraction(-53, 324)
    assert ex["plain_margin"] == 123


def test_falsifier_report():
    rep = search.falsify_strengthened_zhang()
    assert not rep.holds and rep.violated
    assert abs(rep.margin - (-53 / 324)) <= 1e-9
    assert abs(rep.details["float_margin"] - rep.margin) <= 1e-12
    strengthened, plain = search.zhang_falsifier_reports()
    assert plain.holds and plain.details["margin_plain"] == 123.0


def test_search_result_json():
    d = search.probe("gen_parallelogram", "lp:1:2", trials=5, seed=0).to_dict()
    assert {"check_id", "probes", "worst_margin", "witness", "seed", "refined"} <= set(d)


def test_every_registered_check_runs():
    for cid, check in search.REGISTRY.items():
        res = search.probe(cid, trials=3, seed=0)
        assert res.probes == 3, cid
