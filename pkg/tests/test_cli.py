import json
import subprocess
import sys

import pytest

from ineqlab.cli import main

REPORT_KEYS = {"check_id", "lhs", "rhs", "relation", "margin", "tolerance", "holds",
               "inconclusive", "hypothesis_audit", "details", "inputs", "seed"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_emits_one_line_per_trial(capsys):
    code, out, _ = run(capsys, "check", "hanner", "--space", "lp:1.5:4", "--trials", "3", "--seed", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    for i, line in enumerate(lines):
        d = json.loads(line)
        assert REPORT_KEYS <= set(d)
        assert d["probe"] == i and d["seed"] == 5 and d["holds"]


def test_check_with_function_and_params(capsys):
    code, out, _ = run(capsys, "check", "alfa_power", "--space", "lp:1.5:3", "--params", "alpha=1.5")
    assert code == 0
    assert json.loads(out)["inputs"]["alpha"] == 1.5
    code, out, _ = run(capsys, "check", "schotz_banach", "--space", "lp:3:4", "--f", "pow:1.3")
    assert code == 0 and json.loads(out)["inputs"]["f"] == "pow:1.3"


def test_check_tolerance_flag(capsys):
    _, out, _ = run(capsys, "check", "quadruple_norm", "--space", "lp:1:3", "--tol", "1e-3")
    d = json.loads(out)
    assert d["tolerance"] == pytest.approx(1e-3 * (1 + max(abs(d["lhs"]), abs(d["rhs"]))))


@pytest.mark.parametrize("argv", [
    ["check", "hanner", "--space", "lp:0.5:4"],
    ["check", "no_such_check"],
    ["check", "schotz_banach", "--f", "no_such_fn"],
    ["check", "hanner", "--params", "novalue"],
    ["majorize", "--kind", "hlp", "--x", "1,2", "--y", "1,2,3"],
    ["majorize", "--kind", "hlp", "--x", "a,b", "--y", "1,2"],
    ["constants", "--p", "0.5"],
    ["search", "hanner_classic", "--cone"],
    ["suite", "run"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", "hanner", "--trials", "-1"])
    assert exc.value.code == 2


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--p", "1.5")
    d = json.loads(out)
    assert code == 0
    assert d["cnj_analytic"] == pytest.approx(2 ** (1 / 3))
    assert d["N"] == 4 and d["C"] == 2.0 and d["C_tilde"] is None and d["floor_two_p_minus_one"] == 1


def test_constants_sampled(capsys):
    code, out, _ = run(capsys, "constants", "--p", "2", "--sampled", "--dim", "3", "--trials", "200")
    d = json.loads(out)
    assert code == 0 and d["cnj_sampled"] <= 1 + 1e-12 and d["space"] == "lp:2:3"


def test_majorize(capsys):
    code, out, _ = run(capsys, "majorize", "--kind", "hlp", "--x", "3,2,1", "--y", "3,3,0")
    assert code == 0 and json.loads(out)["holds"]
    code, out, _ = run(capsys, "majorize", "--kind", "tconcave", "--x", "1,1,1,1", "--y", "2,2", "--f", "sqrt")
    assert json.loads(out)["report"]["holds"]


def test_function_audit(capsys):
    code, out, _ = run(capsys, "function-audit", "pow:1.5")
    d = json.loads(out)
    assert code == 0 and d["in_S0"] and d["mismatched"] == []


def test_search_falsifier(capsys, tmp_path):
    path = tmp_path / "z.json"
    code, out, _ = run(capsys, "search", "zhang-falsifier", "--out", str(path))
    d = json.loads(out)
    assert code == 0
    assert d["strengthened"]["margin"] == pytest.approx(-53 / 324, abs=1e-9)
    assert d["plain"]["details"]["margin_plain"] == 123.0
    assert json.loads(path.read_text()) == d


def test_search_refine(capsys):
    code, out, _ = run(capsys, "search", "revhh_signed", "--trials", "200", "--refine", "200")
    d = json.loads(out)
    assert code == 0 and d["refined"] and d["worst_margin"] < -0.1


def test_search_cone_control(capsys):
    code, out, _ = run(capsys, "search", "popoviciu_vec_signed", "--cone", "--trials", "200")
    assert code == 0 and json.loads(out)["worst_margin"] >= -1e-9


def test_suite_small(capsys, monkeypatch):
    from ineqlab import suite

    monkeypatch.setattr(suite, "ROWS", suite.ROWS[:3])
    code, out, err = run(capsys, "suite", "run", "--all", "--trials", "20", "--reference", "--table")
    d = json.loads(out)
    assert code == 0 and d["ok"]
    assert [r["label"] for r in d["rows"]][:3] == [r.label for r in suite.ROWS[:3]]
    assert all(r["runtime_ms"] is None for r in d["rows"])
    assert "min_margin" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ineqlab", "constants", "--p", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["N"] == 2
