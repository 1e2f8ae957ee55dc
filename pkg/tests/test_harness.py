import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from mattokit.cli import main
from mattokit.harness import (
    CATALOGUE,
    CHECKS,
    SWEEP_COLUMNS,
    Scenario,
    ScenarioError,
    demo_scalar,
    load_scenario,
    parse_scenario,
    run_scenario,
    select_checks,
    substream,
    sweep,
)

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"


def strip_runtimes(text):
    body = json.loads(text)
    for c in body["checks"]:
        c.pop("runtime_ms")
    return body


# scenario files

def test_parse_flat_and_sectioned():
    a = parse_scenario("seed = 4\nd = 3\ndegrees = 2, 1\n")
    b = parse_scenario("[scenario]\nseed = 4\nd = 3\ndegrees = 2, 1  # comment\n")
    assert a == b
    assert a.degrees == (2, 1) and a.N == "auto"


def test_parse_lambda_samples_and_checks():
    s = parse_scenario("lambda_samples = 0.1+0.2j, -0.3j\nchecks = window, ops.hankel_vanishing\nN = 14\n")
    assert s.lambda_samples == (0.1 + 0.2j, -0.3j)
    assert s.checks == ("window", "ops.hankel_vanishing")
    assert s.N == 14


@pytest.mark.parametrize("text", [
    "colour = red\n",
    "[other]\nseed = 1\n",
    "d = two\n",
    "d = 0\n",
    "degrees = 1\n",
    "lambda_samples = 0.9\n",
    "strategy = nope\n",
    "zero_radius = 1.5\n",
])
def test_bad_scenarios_raise(text):
    with pytest.raises(ScenarioError):
        parse_scenario(text)


def test_shipped_scenarios_load():
    for p in SCENARIOS.glob("*.ini"):
        assert isinstance(load_scenario(p), Scenario)


def test_missing_file():
    with pytest.raises(ScenarioError):
        load_scenario(SCENARIOS / "missing.ini")


# rng and catalogue

def test_substreams_are_independent_of_order():
    a = substream(7, "window.reproducing").standard_normal(4)
    substream(7, "conj.j_tilde").standard_normal(10)
    b = substream(7, "window.reproducing").standard_normal(4)
    c = substream(7, "conj.j_tilde").standard_normal(4)
    np.testing.assert_array_equal(a, b)
    assert not np.allclose(a, c)


def test_catalogue_ids_and_anchors():
    ids = [c.id for c in CATALOGUE]
    assert len(ids) == len(set(ids)) == len(CHECKS)
    assert all(c.anchor.strip() for c in CATALOGUE)
    assert {c.kind for c in CATALOGUE} == {"upper", "lower"}


def test_select_checks():
    assert [c.id for c in select_checks(["ops.hankel_vanishing"])] == ["ops.hankel_vanishing"]
    assert all(c.id.startswith("window.") for c in select_checks(["window"]))
    assert len(select_checks(["all"])) == len(CATALOGUE)
    with pytest.raises(KeyError):
        select_checks(["window.nope"])


# runs

def test_default_run_passes():
    r = run_scenario(load_scenario(SCENARIOS / "default.ini"))
    assert r.ok, r.to_text()
    assert r.scenario["D"] <= 250
    assert r.to_text().splitlines()[-1] == f"summary: {len(r.records)} passed, 0 failed (seed 1)"


def test_json_is_deterministic_modulo_runtimes():
    s = Scenario(seed=5, d=2, checks=("window", "conj"))
    a, b = run_scenario(s).to_json(), run_scenario(s).to_json()
    assert strip_runtimes(a) == strip_runtimes(b)
    rec = json.loads(a)["checks"][0]
    assert {"check", "anchor", "defect", "tol", "pass"} <= set(rec)


def test_zero_tolerance_fails_upper_checks():
    r = run_scenario(Scenario(checks=("window.proj_model", "ops.eq412_counterexample"), tol=0.0))
    assert not r.record("window.proj_model").passed
    # lower bounds keep their own threshold
    assert r.record("ops.eq412_counterexample").passed


def test_fixed_window_too_small_fails_not_crashes():
    r = run_scenario(Scenario(N=3, checks=("window.proj_model",)))
    rec = r.record("window.proj_model")
    assert not rec.passed and rec.error


@pytest.mark.parametrize("strategy", ["scalar-times-identity", "simultaneously-diagonal"])
@pytest.mark.parametrize("d", [1, 3])
def test_other_strategies_pass(strategy, d):
    r = run_scenario(Scenario(seed=3, d=d, strategy=strategy, degrees=(2, 1)))
    assert r.ok, r.to_text()


# sweeps

def test_symbol_scale_sweep():
    rows = sweep(Scenario(), "symbol-scale", [0.1, 0.5, 1.0, 2.0, 5.0])
    assert len(rows) == 5
    for row in rows:
        assert set(row) == set(SWEEP_COLUMNS)
        assert row["lhs_minus_rhs"] <= 1e-9
        assert row["collapse_defect"] <= 1e-9
        assert row["eq412_symmetric"] <= 1e-10


def test_zero_radius_sweep_stays_small():
    rows = sweep(Scenario(d=2, strategy="simultaneously-diagonal", degrees=(1, 1)),
                 "factor-zero-radius", [0.0, 0.2])
    assert all(r["lhs_minus_rhs"] < 1e-8 for r in rows)


def test_unknown_sweep_param():
    with pytest.raises(ScenarioError):
        sweep(Scenario(), "window", [1])


# scalar demo

@pytest.mark.parametrize("n", [1, 3, 6])
def test_demo_scalar(n):
    r = demo_scalar(n, out=False)
    assert r.ok
    assert r.record("scalar.nilpotent_shift").defect <= 1e-12
    assert r.record("scalar.c_theta_flip").defect <= 1e-12


def test_demo_prints_basis_action():
    buf = io.StringIO()
    demo_scalar(3, out=buf)
    text = buf.getvalue()
    for k in range(3):
        assert f"e_{k} -> e_{2 - k}" in text


# command line

def test_cli_verify_text(capsys):
    assert main(["verify", "--seed", "2", "--dim", "1", "--checks", "window"]) == 0
    assert "summary:" in capsys.readouterr().out


def test_cli_verify_json_to_file(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--scenario", str(SCENARIOS / "scalar.ini"), "--report", "json", "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["summary"]["fail"] == 0


def test_cli_failure_exit(capsys):
    assert main(["verify", "--tol", "0", "--checks", "window.proj_model"]) == 1


def test_cli_usage_errors(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("seed = 1\ncolour = red\n")
    assert main(["verify", "--scenario", str(bad)]) == 2
    assert "colour" in capsys.readouterr().err
    assert main(["verify", "--checks", "nope"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--window", "big"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--param", "colour", "--grid", "1"])
    assert exc.value.code == 2


def test_cli_sweep_csv(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--param", "symbol-scale", "--grid", "0.5,1,2", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 3
    assert list(rows[0]) == list(SWEEP_COLUMNS)
    assert all(float(r["collapse_defect"]) <= 1e-9 for r in rows)


def test_cli_demo(capsys):
    assert main(["demo", "--scalar-degree", "4"]) == 0
    assert "e_0 -> e_3" in capsys.readouterr().out


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "mattokit", "verify", "--checks", "laurent"],
                       capture_output=True, text=True)
    assert p.returncode == 0, p.stderr
    assert p.stdout.strip().splitlines()[-1].startswith("summary:")
