"""Command-line front end, file outputs, and exit codes."""

import json

import pytest

from omega_proximity.cli import main


def run(argv, tmp_path):
    return main([*argv, "--out", str(tmp_path)])


def test_census_writes_csv_and_metadata(tmp_path, capsys):
    assert run(["census", "--x", "100", "--f", "omega"], tmp_path) == 0
    out = capsys.readouterr().out
    assert "mode_k=2 mode_count=56" in out
    csv = (tmp_path / "census_omega_x100.csv").read_text()
    assert csv.splitlines() == ["k,count", "0,1", "1,35", "2,56", "3,8"]
    meta = json.loads((tmp_path / "census_omega_x100.meta.json").read_text())
    assert meta["total"] == 100
    assert meta["csv"] == "census_omega_x100.csv"
    assert len(meta["config_hash"]) == 16


def test_census_restricted_totals(tmp_path):
    assert run(["census", "--x", "1000", "--f", "bigomega", "--restrict"], tmp_path) == 0
    meta = json.loads((tmp_path / "census_bigomega_x1000_coprime.meta.json").read_text())
    assert meta["restricted"] is True
    assert meta["set"]["members"] == [3, 5, 11, 17, 29]


def test_construct_writes_set_and_g(tmp_path, capsys):
    assert run(["construct", "--x", "10000", "--set", "paper", "--delta", "0.5"], tmp_path) == 0
    sdoc = json.loads((tmp_path / "set.json").read_text())
    assert sdoc["members"] == [2, 3, 7, 11, 13]
    assert sdoc["classes"] == [None, 3, 3, 3, 1]
    gdoc = json.loads((tmp_path / "g.json").read_text())
    assert gdoc["x"] == 10000
    assert gdoc["table"][0]["prime"] == 2
    assert gdoc["table"][0]["value"] == 1  # neutral under big_omega
    assert "config_hash" in gdoc


def test_count_and_certificate_agree_with_frozen_values(tmp_path, capsys):
    assert run(["count", "--x", "10000"], tmp_path) == 0
    assert "E = 2728" in capsys.readouterr().out
    cdoc = json.loads((tmp_path / "count_bigomega_x10000.json").read_text())
    assert cdoc["E"] == 2728

    assert run(["certificate", "--x", "10000"], tmp_path) == 0
    assert "L = 1301 (witnesses checked: 1301)" in capsys.readouterr().out
    ldoc = json.loads((tmp_path / "certificate_bigomega_x10000.json").read_text())
    assert ldoc["L"] == 1301
    assert ldoc["witnesses_checked"] == 1301


def test_count_accepts_g_file(tmp_path, capsys):
    assert run(["construct", "--x", "10000"], tmp_path) == 0
    capsys.readouterr()
    g_path = str(tmp_path / "g.json")
    assert run(["count", "--x", "10000", "--g", g_path], tmp_path) == 0
    assert "E = 2728" in capsys.readouterr().out


def test_report_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir(), b.mkdir()
    args = ["report", "--grid", "100,1000", "--eps", "0.1"]
    assert run(args, a) == 0
    assert run(args, b) == 0
    assert (a / "report.csv").read_bytes() == (b / "report.csv").read_bytes()
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    lines = (a / "report.csv").read_text().splitlines()
    assert lines[0] == "x,f,E,L,loglogx,eps,ratio_E,ratio_L"
    assert len(lines) == 3


def test_report_empty_grid(tmp_path):
    assert run(["report", "--grid", ""], tmp_path) == 0
    assert (tmp_path / "report.csv").read_text() == "x,f,E,L,loglogx,eps,ratio_E,ratio_L\n"


def test_phi_output(tmp_path, capsys):
    assert run(["phi", "--x", "100", "--f", "omega"], tmp_path) == 0
    doc = json.loads((tmp_path / "phi_omega_x100.json").read_text())
    assert doc["x"] == 100
    assert doc["max_level_count"] == 56
    assert doc["phi"] == doc["B"] / doc["A"]


def test_verify_passes(tmp_path, capsys):
    assert run(["verify", "--x", "2000"], tmp_path) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out
    assert "8/8 checks passed" in out


def test_verify_validates_g_file(tmp_path, capsys):
    assert run(["construct", "--x", "2000"], tmp_path) == 0
    capsys.readouterr()
    g_path = tmp_path / "g.json"
    assert run(["verify", "--x", "2000", "--g", str(g_path)], tmp_path) == 0
    assert "9/9 checks passed" in capsys.readouterr().out

    doc = json.loads(g_path.read_text())
    doc["table"][0]["value"] += 1
    bad = tmp_path / "g_bad.json"
    bad.write_text(json.dumps(doc))
    assert run(["verify", "--x", "2000", "--g", str(bad)], tmp_path) == 1
    out = capsys.readouterr().out
    assert "[FAIL] g-file-integrity: table differs from rebuild" in out
    assert "8/9 checks passed" in out


def test_verify_rejects_unreadable_g(tmp_path, capsys):
    junk = tmp_path / "junk.json"
    junk.write_text("{broken")
    assert run(["verify", "--x", "2000", "--g", str(junk)], tmp_path) == 1


def test_usage_errors_exit_2(tmp_path, capsys):
    assert run(["census", "--x", "0"], tmp_path) == 2
    assert run(["count", "--x", "100", "--g", str(tmp_path / "missing.json")], tmp_path) == 2
    assert run(["construct", "--x", "100", "--count", "0"], tmp_path) == 2
    with pytest.raises(SystemExit) as exc:
        run(["census", "--x", "10", "--f", "theta"], tmp_path)
    assert exc.value.code == 2


def test_capacity_exit_3(tmp_path, monkeypatch):
    monkeypatch.setenv("OMEGA_PROXIMITY_BUDGET", "1")
    assert run(["census", "--x", "2000000"], tmp_path) == 3


def test_malformed_budget_exit_2(tmp_path, monkeypatch):
    monkeypatch.setenv("OMEGA_PROXIMITY_BUDGET", "lots")
    assert run(["census", "--x", "100"], tmp_path) == 2
