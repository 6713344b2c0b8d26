import json
import subprocess
import sys

import pytest

from ksduality.cli import main

SUBCOMMANDS = ["gamma", "map", "verify-algebra", "spectrum", "duality", "solve", "qes", "overlaps", "reduce"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_help(capsys, cmd):
    code, out, _ = run(capsys, cmd, "--help")
    assert code == 0 and "usage" in out


def test_gamma(capsys):
    code, doc = run_json(capsys, "gamma", "--n", "4", "--verify")
    assert code == 0 and doc["passed"] and doc["config"]["n"] == 4


def test_usage_errors(capsys):
    assert run(capsys, "gamma", "--n", "3")[0] == 2
    assert run(capsys, "gamma", "--n", "2", "--bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "duality", "--format", "csv")[0] == 2
    assert run(capsys, "qes")[0] == 2


def test_map_random_points(capsys):
    code, doc = run_json(capsys, "map", "--n", "2", "--random", "5", "--chart", "parabolic")
    assert code == 0 and doc["passed"]


def test_duality_pass_and_fail(capsys):
    assert run_json(capsys, "duality", "--n", "2", "--c1", "2", "--zmax", "5")[0] == 0
    code, doc = run_json(capsys, "duality", "--n", "2", "--zmax", "5", "--omega-kepler", "1.01")
    assert code == 1 and not doc["passed"] and doc["failures"]


def test_verify_algebra_table(capsys):
    code, out, _ = run(capsys, "verify-algebra", "--modes", "2", "--format", "table")
    assert code == 0 and out.strip().endswith("overall: PASS")


def test_verify_algebra_product_and_reduction(capsys):
    assert run_json(capsys, "verify-algebra", "--family", "product", "--lam1=3/4")[0] == 0
    assert run_json(capsys, "verify-algebra", "--family", "reduction", "--n", "3", "--ell1", "1")[0] == 0


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "2", "--zmax", "2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("# config:") and lines[1].endswith("value")
    assert len(lines) > 2


def test_solve_problems(capsys):
    for argv in (["--problem", "oscillator", "--k", "2"], ["--problem", "kepler", "--k", "2"],
                 ["--problem", "parabolic-pair", "--lam1", "1"]):
        code, doc = run_json(capsys, "solve", *argv)
        assert code == 0 and doc["passed"], argv


def test_qes_family_and_negative_rational(capsys):
    code, doc = run_json(capsys, "qes", "--family", "super2", "--N", "2", "--c=-1/2", "--fd")
    assert code == 0 and all(r["exact_zero"] for r in doc["result"]["residuals"])


def test_qes_model_and_anisotropic(capsys):
    assert run_json(capsys, "qes", "--model", "2", "--n", "3", "--u", "1,1,1", "--v", "1,1,2", "--fd")[0] == 0
    assert run(capsys, "qes", "--model", "2")[0] == 2
    assert run_json(capsys, "qes", "--anisotropic")[0] == 0


def test_overlaps_validate(capsys):
    code, doc = run_json(capsys, "overlaps", "--N", "5", "--lam1", "0.5", "--lam2", "1.5", "--validate")
    assert code == 0 and doc["result"]["validation"]["passing"] == ["2l1+2l2+p-1"]


def test_overlaps_csv(capsys):
    code, out, _ = run(capsys, "overlaps", "--N", "2", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 5


def test_reduce(capsys):
    assert run_json(capsys, "reduce", "--n", "4", "--ell2", "3", "--c1", "1")[0] == 0


def test_deterministic_output(capsys):
    a = run(capsys, "verify-algebra", "--modes", "8", "--samples", "10", "--family", "higgs")
    b = run(capsys, "verify-algebra", "--modes", "8", "--samples", "10", "--family", "higgs")
    assert a == b and a[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ksduality.cli", "gamma", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]
