import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from extstirling import cli, stirling
from extstirling.bell import bell_ext_eval, bell_number
from extstirling.numeric import parse_scalar


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_table_s2_csv():
    code, text = run("table", "s2", "--n-max", "3", "--format", "csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "n,k,value"
    assert "3,2,3" in lines


def test_table_bell():
    code, text = run("table", "bell", "--n-max", "4")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["value"] for r in rows] == ["1", "1", "2", "5", "15"]


def test_table_s2r_row3():
    code, text = run("table", "s2r", "--r", "1", "--n-max", "3")
    rows = [r for r in csv.DictReader(io.StringIO(text)) if r["n"] == "3"]
    assert [r["value"] for r in rows] == ["0", "1", "6", "8"]


@pytest.mark.parametrize("r", ["-3/7", "5", "1/2"])
def test_table_csv_roundtrip(r):
    code, text = run("table", "s2r", "--r", r, "--n-max", "9")
    assert code == 0
    rq = parse_scalar(r)
    for row in csv.DictReader(io.StringIO(text)):
        assert parse_scalar(row["value"]) == stirling.s2r(int(row["n"]), int(row["k"]), rq)


def test_table_json_roundtrip():
    code, text = run("table", "bell_ext", "--r", "-1/2", "--lambda", "2/3", "--n-max", "8", "--format", "json")
    doc = json.loads(text)
    assert doc["kind"] == "bell_ext" and doc["r"] == "-1/2" and doc["lambda"] == "2/3"
    for e in doc["entries"]:
        assert parse_scalar(e["value"]) == bell_ext_eval(e["n"], Fraction(-1, 2), Fraction(2, 3))


def test_table_bell_json():
    doc = json.loads(run("table", "bell", "--n-max", "6", "--format", "json")[1])
    assert [parse_scalar(e["value"]) for e in doc["entries"]] == [bell_number(n) for n in range(7)]


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "s2r", "--n-max", "3"),
        ("table", "s2r", "--n-max", "3", "--r", "1/0"),
        ("table", "s2r", "--n-max", "3", "--r", "abc"),
        ("table", "s2", "--n-max", "-1"),
        ("table", "nope", "--n-max", "2"),
        ("verify", "thm3", "--n-max", "31"),
        ("verify", "thm9"),
        ("poisson-check", "--n-max", "2"),
        ("poisson-check", "--n-max", "9", "--lambda", "1"),
        ("poisson-check", "--lambda", "11"),
        ("poisson-check", "--lambda", "x"),
        (),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_verify_thm3_negative_rational():
    code, text = run("verify", "thm3", "--n-max", "15", "--r", "-3/7")
    doc = json.loads(text)
    assert code == 0
    assert doc["pass"] and doc["failures"] == [] and doc["checked"] == 136
    assert doc["grid"]["r"] == ["-3/7"]


def test_verify_defining_relation():
    code, text = run("verify", "defining_relation", "--n-max", "20")
    assert code == 0 and json.loads(text)["checked"] == 21


def test_verify_eq27_small():
    code, text = run("verify", "eq27", "--n-max", "2", "--r", "1", "--format", "csv")
    assert code == 0
    assert text.splitlines()[1] == "eq27,10,0,true"


def test_value_lists_comma_and_repeat():
    code, text = run("verify", "eq34", "--n-max", "5", "--r", "1,-1", "--r", "1/2", "--lambda", "-1/2")
    doc = json.loads(text)
    assert doc["grid"]["r"] == ["1", "-1", "1/2"] and doc["grid"]["lambda"] == ["-1/2"]
    assert doc["checked"] == 3 * 6


@pytest.mark.parametrize("identity", cli.IDENTITIES)
def test_every_identity_passes_default_grid(identity):
    code, text = run("verify", identity, "--n-max", "8")
    doc = json.loads(text)
    assert code == 0 and doc["pass"] and doc["checked"] > 0


def test_verify_failure_exit_1(monkeypatch, capsys):
    real = stirling._scaled_rows

    def corrupted(n_max, r, classical=None):
        rows = real(n_max, r, classical)
        rows[3][1] += 1
        return rows

    monkeypatch.setattr(stirling, "_scaled_rows", corrupted)
    code, text = run("verify", "thm3", "--n-max", "5", "--r", "2")
    doc = json.loads(text)
    assert code == 1 and not doc["pass"]
    assert ["3", "1", "2"] not in doc["failures"]  # tuples keep int indices
    assert [3, 1, "2"] in doc["failures"]
    assert len(doc["failures"]) <= cli.MAX_REPORTED_FAILURES
    assert "FAIL thm3" in capsys.readouterr().err


def test_poisson_check_mean():
    code, text = run("poisson-check", "--n-max", "1", "--lambda", "1", "--r", "0", "--samples", "1000000", "--seed", "42")
    doc = json.loads(text)
    assert code == 0 and doc["pass"]
    assert doc["reports"][1]["exact"] == 1.0


def test_poisson_check_trivial():
    code, text = run("poisson-check", "--n-max", "0", "--lambda", "3", "--samples", "10000")
    doc = json.loads(text)
    assert code == 0 and len(doc["reports"]) == 1 and doc["reports"][0]["mean"] == 1.0


def test_poisson_check_negative_shift_and_csv():
    code, text = run("poisson-check", "--n-max", "2", "--lambda", "2", "--r", "-1/2", "--samples", "20000", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and rows[0]["r"] == "-0.5" and len(rows) == 3


def test_poisson_check_statistical_failure_exit_1():
    # a threshold of zero cannot be met by a noisy estimate
    code, text = run("poisson-check", "--n-max", "2", "--lambda", "2", "--samples", "10000", "--threshold", "0")
    assert code == 1 and not json.loads(text)["pass"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "extstirling", "verify", "thm5", "--n-max", "6", "--r", "-3/7", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].endswith(",0,true")
