import json
import subprocess
import sys

import pytest

from rootzeta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe(capsys):
    code, out, _ = run(capsys, "describe", "B", "2")
    assert code == 0
    assert "2m1+m2" in out and "lambda2 = (1/2, 1/2)" in out


def test_describe_records(capsys):
    code, out, _ = run(capsys, "describe", "A", "3", "--format", "records")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "A", "2", "2", "2", "2")
    assert code == 0
    assert out.startswith("zeta(2, 2, 2; A2) = 0.339")


def test_eval_value(capsys):
    import math

    code, out, _ = run(capsys, "eval", "A", "2", "2", "2", "2", "--format", "records")
    assert code == 0
    rec = json.loads(out)
    assert rec["value"] == pytest.approx(math.pi**6 / 2835, rel=1e-12)


def test_eval_divergent_is_usage_error(capsys):
    code, _, err = run(capsys, "eval", "A", "2", "1", "0", "1")
    assert code == 2
    assert "convergence" in err


def test_eval_accuracy_exit_code(capsys):
    code, _, _ = run(capsys, "eval", "A", "2", "1", "1", "1", "--target-err", "1e-30", "--ladder", "100,200,400")
    assert code == 3


def test_verify_records_and_grid(capsys):
    code, out, _ = run(capsys, "verify", "hwz", "--k", "1", "--l", "1", "--m", "2,3", "--format", "records")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["params"]["m"] for r in recs] == [2, 3]
    assert all(r["pass"] is True for r in recs)
    assert list(recs[0]) == ["relation_id", "params", "lhs_value", "lhs_err", "rhs_value", "rhs_err", "residual", "pass"]


def test_verify_human_summary(capsys):
    code, out, _ = run(capsys, "verify", "c2-spec-111", "--s", "1")
    assert code == 0
    assert "1 comparisons: 1 pass, 0 fail, 0 undecided" in out


def test_verify_failure_exit(capsys, monkeypatch):
    import importlib

    reg = importlib.import_module("rootzeta.relations.registry")

    monkeypatch.setattr(reg, "FLOOR_DOUBLE", 0.0)
    monkeypatch.setattr(reg, "TOL_FACTOR", 0.0)
    code, out, _ = run(capsys, "verify", "hwz", "--k", "1", "--l", "1", "--m", "2")
    assert code == 1
    assert out.startswith("FAIL")


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 2
    assert "unknown relation" in err


def test_verify_all_mixed_with_ids(capsys):
    code, _, _ = run(capsys, "verify", "all", "hwz")
    assert code == 2


def test_bernoulli_p(capsys):
    code, out, _ = run(capsys, "bernoulli-p", "A", "3", "--I", "1,3", "--k", "1,1,1,1", "--lambda", "1,1")
    assert code == 0
    assert "7/2 · (2πi)^-4 + 1/12 · (2πi)^-2" in out


def test_bernoulli_p_bad_k(capsys):
    code, _, _ = run(capsys, "bernoulli-p", "A", "3", "--I", "1,3", "--k", "1,1", "--lambda", "1,1")
    assert code == 2


@pytest.mark.parametrize("kind,rank,lam", [("A", "3", "1,2"), ("B", "3", "2,1"), ("D", "4", "1,2,1")])
def test_genfun_check(capsys, kind, rank, lam):
    code, out, _ = run(capsys, "genfun-check", kind, rank, "--lambda", lam, "--radius", "0.01")
    assert code == 0
    assert "PASS" in out


def test_genfun_check_fails_on_large_t(capsys):
    code, out, _ = run(capsys, "genfun-check", "B", "4", "--lambda", "1,2,3", "--radius", "0.3", "--tol", "1e-12")
    assert code == 1
    assert "FAIL" in out


def test_usage_errors(capsys):
    assert run(capsys, "eval", "Q", "2", "1", "1", "1")[0] == 2
    assert run(capsys, "describe", "D", "2")[0] == 2
    assert run(capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rootzeta", "describe", "A", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "m1" in proc.stdout
