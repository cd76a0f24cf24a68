import json

import pytest

from slodowy.cli import main
from slodowy.report import render_latex


@pytest.fixture(scope="module")
def a2_report(tmp_path_factory):
    path = tmp_path_factory.mktemp("reports") / "a2.json"
    assert main(["compute", "A", "2", "--out", str(path), "--gauge-trials", "20"]) == 0
    return path


def test_compute_writes_report(a2_report):
    rep = json.loads(a2_report.read_text())
    assert rep["schema_version"] == 1
    assert rep["charge"] == "1/3"
    assert rep["prepotential"] == "1/54*t1^4 + 1/6*t1*t2^2"
    assert all(rep["checks"].values())
    assert "timings" not in rep


def test_report_is_deterministic(a2_report, tmp_path):
    again = tmp_path / "again.json"
    assert main(["compute", "A", "2", "--out", str(again), "--gauge-trials", "20"]) == 0
    assert again.read_bytes() == a2_report.read_bytes()


def test_timings_flag(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert main(["compute", "A", "1", "--out", str(out), "--timings", "--gauge-trials", "3"]) == 0
    assert set(json.loads(out.read_text())["timings"]) >= {"liealg", "dsred", "frobenius"}


def test_compute_a1_prints_prepotential(capsys):
    assert main(["compute", "A", "1", "--gauge-trials", "5"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["prepotential"] == "1/12*t1^3"


def test_compute_latex_and_relabel(capsys):
    assert main(["compute", "A", "2", "--latex", "--relabel-unity-first", "--gauge-trials", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == r"F = \frac{1}{54} t_2^4 + \frac{1}{6} t_1^2 t_2"


def test_unsupported_type_exits_2(capsys):
    assert main(["compute", "E", "9"]) == 2
    assert "E9" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["compute", "A"], ["compute", "A", "x"], ["bogus"],
                                  ["compute", "A", "2", "--jobs", "0"],
                                  ["compute", "A", "2", "--backend", "other"]])
def test_usage_errors_exit_2(argv):
    assert main(argv) == 2


def test_verify_round_trip(a2_report, capsys):
    assert main(["verify", str(a2_report)]) == 0
    out = capsys.readouterr().out
    assert "PASS det_identity" in out and "FAIL" not in out


def test_verify_tampered_g1_names_det_identity(a2_report, tmp_path, capsys):
    rep = json.loads(a2_report.read_text())
    rep["leading_terms"]["g1"][0][1] = "5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(rep))
    assert main(["verify", str(bad), "--skip-gauge"]) == 1
    assert "invariant failed: det_identity" in capsys.readouterr().err


def test_verify_tampered_prepotential(a2_report, tmp_path):
    rep = json.loads(a2_report.read_text())
    rep["prepotential"] = "1/54*t1^4 + 1/5*t1*t2^2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(rep))
    assert main(["verify", str(bad), "--skip-gauge"]) == 1


def test_verify_tampered_z_fails_gauge_check(a2_report, tmp_path, capsys):
    rep = json.loads(a2_report.read_text())
    rep["z"][1] = rep["z"][1] + " + 1*q[2,1,0]"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(rep))
    assert main(["verify", str(bad)]) == 1
    assert "gauge_invariance" in capsys.readouterr().err


def test_verify_missing_file_exits_2(tmp_path):
    assert main(["verify", str(tmp_path / "nope.json")]) == 2


@pytest.mark.parametrize("content", ["not json", "[1, 2]", '{"schema_version": 1}', '{"schema_version": 7}'])
def test_malformed_report_exits_2(tmp_path, content):
    bad = tmp_path / "bad.json"
    bad.write_text(content)
    assert main(["verify", str(bad)]) == 2
    assert main(["latex", str(bad)]) == 2


def test_latex_command(a2_report, capsys):
    assert main(["latex", str(a2_report)]) == 0
    first = capsys.readouterr().out.splitlines()[0]
    assert first == r"F = \frac{1}{54} t_1^4 + \frac{1}{6} t_1 t_2^2"


def test_latex_of_empty_polynomial():
    rep = {"exponents": [1], "prepotential": "0", "flat": {"eta": [["2"]], "g2": [["0"]]}}
    assert render_latex(rep).splitlines()[0] == "F = 0"
