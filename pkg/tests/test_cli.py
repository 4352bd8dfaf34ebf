import csv
import io
import json
import subprocess
import sys

import pytest

from racelead import cli
from racelead.errors import VerificationError


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["formula", "lead", "--n", "3"], "5/16"),
        (["bijection", "updown", "--path", "UUDUDDDDUUDUUUDD"], "UUDUDDUUDUUUUUDD"),
        (["enumerate", "ballot", "--set", "9,3,1"], 15),
        (["formula", "walk-end", "--n", "4", "--t", "0"], "1/3"),
        (["formula", "motzkin", "--L", "2"], "5/8"),
        (["formula", "tied-lead", "--m", "4"], "1/4"),
        (["enumerate", "majorization", "--n", "3"], "5/8"),
        (["enumerate", "alternation", "--n", "2"], "1/8"),
        (["enumerate", "spitzer", "--set=-2,3,-1"], 2),
        (["enumerate", "collisions", "--set", "5,3,1", "--target", "1/2"], ["4/1", "3/1", "2/1", "1/1"]),
        (["enumerate", "generic", "--set", "1,3,9"], True),
        (["bijection", "motzkin", "--path", "UUUUDDDUDU"], "UHDH"),
        (["bijection", "encode", "--set", "3,1,2"], "00110"),
        (["bijection", "bitpair", "--path", "01,10"], "UD"),
    ],
)
def test_examples(capsys, argv, expected):
    code, report = run_json(capsys, *argv)
    assert code == 0 and report["status"] == "ok"
    assert report["result"] == expected


def test_json_field_order_and_fractions(capsys):
    _, out = run(capsys, "formula", "lead", "--n", "3")
    report = json.loads(out)
    assert list(report) == ["command", "params", "result", "status", "elapsed_ms"]
    assert report["params"] == {"target": "lead", "n": 3}
    assert report["elapsed_ms"] is None


def test_simulate_report_fields(capsys):
    code, report = run_json(capsys, "simulate", "lead", "--n", "2", "--trials", "20000", "--seed", "5")
    assert code == 0
    assert list(report) == ["command", "params", "result", "status", "seed", "trials", "ci_low", "ci_high", "ties", "elapsed_ms"]
    assert report["seed"] == 5 and report["trials"] == 20000
    assert report["ci_low"] <= report["result"] <= report["ci_high"]


def test_identical_invocations_are_byte_identical(capsys):
    argv = ["simulate", "alternation", "--n", "2", "--dist", "exp", "--trials", "50000", "--seed", "9"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv, "--workers", "3")
    assert a == b


def test_timing_is_opt_in(capsys):
    _, report = run_json(capsys, "formula", "lead", "--n", "3", "--timing")
    assert isinstance(report["elapsed_ms"], float)


def test_csv_output(capsys):
    code, out = run(capsys, "formula", "ballot", "--a", "2", "--b", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2
    assert rows[0] == ["command", "params", "result", "status", "elapsed_ms"]
    assert rows[1][2] == "2/3"


def test_text_output_respects_no_color(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out = run(capsys, "formula", "srw", "--n", "4", "--format", "text")
    assert code == 0 and "result: 3/8" in out and "\033[" not in out


def test_pow3_simulation_warns_about_ties(capsys):
    code, report = run_json(capsys, "simulate", "alternation", "--n", "2", "--dist", "pow3", "--trials", "5000")
    assert code == 0 and report["status"] == "warning" and report["ties"] > 0


def test_ownership_counts(capsys):
    code, report = run_json(capsys, "simulate", "ownership", "--n", "1", "--dist", "exp", "--trials", "4000")
    assert code == 0 and set(report["result"]) == {"XX", "XY", "YX", "YY"}
    assert sum(report["result"].values()) == 4000


def test_experiment_alternation(capsys):
    code, report = run_json(capsys, "experiment", "alternation", "--n", "2", "--trials", "20000")
    assert code == 0
    first, second = report["result"]
    assert first["formula"] == "1/4" and first["exact_exponential"] == "1/2"
    assert second["rank_oracle"] == "1/8"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["formula"],
        ["formula", "nonsense", "--n", "2"],
        ["formula", "lead"],
        ["formula", "lead", "--n", "x"],
        ["simulate", "lead", "--n", "2", "--dist", "cauchy"],
        ["simulate", "lead", "--n", "2", "--trials", "0"],
        ["simulate", "lead", "--n", "2", "--seed", "-3"],
        ["simulate", "lead", "--n", "2", "--dist-params", "a,b"],
        ["bijection", "bitpair", "--path", "0101"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = cli.main(argv)
        raise SystemExit(code)
    assert info.value.code == 1
    capsys.readouterr()


@pytest.mark.parametrize(
    "argv",
    [
        ["formula", "lead", "--n", "0"],
        ["formula", "tied-lead", "--m", "1"],
        ["enumerate", "ballot", "--set", "1,2"],
        ["enumerate", "ballot", "--set", ",".join(str(3**k) for k in range(11))],
        ["enumerate", "majorization", "--n", "13"],
        ["enumerate", "alternation", "--n", "5"],
        ["enumerate", "alternation", "--n", "3", "--max-n", "2"],
        ["bijection", "updown", "--path", "UUU"],
        ["bijection", "updown", "--path", "UXD"],
        ["simulate", "multiplicative", "--n", "2", "--dist", "normal"],
        ["simulate", "lead", "--n", "2", "--dist", "exp", "--dist-params", "-1"],
        ["verify", "--budget", "0"],
    ],
)
def test_precondition_errors_exit_2(capsys, argv):
    code, report = run_json(capsys, *argv)
    assert code == 2
    assert report["status"] == "error" and report["error"]


def test_verification_error_exits_3(capsys, monkeypatch):
    def broken(_):
        raise VerificationError("two rotations qualify")

    monkeypatch.setattr(cli.exact, "spitzer_rotation", broken)
    code, report = run_json(capsys, "enumerate", "spitzer", "--set", "1,-1")
    assert code == 3 and report["status"] == "error"


def test_failed_check_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(
        cli, "run_checks", lambda *a: [{"name": "x", "scope": "formulas", "passed": False, "observed": 1, "expected": 2}]
    )
    code, report = run_json(capsys, "verify", "--scope", "formulas")
    assert code == 3 and report["status"] == "error"


def test_verify_formulas_passes(capsys):
    code, report = run_json(capsys, "verify", "--scope", "formulas", "--budget", "30")
    assert code == 0
    assert all(r["passed"] for r in report["result"])


def test_verify_respects_budget(capsys):
    code, report = run_json(capsys, "verify", "--scope", "invariance", "--budget", "0.001")
    assert code == 0
    assert all(r.get("skipped") for r in report["result"])


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "racelead.cli", "formula", "lead", "--n", "2"], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["result"] == "3/8"
