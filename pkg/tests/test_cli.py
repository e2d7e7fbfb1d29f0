from __future__ import annotations

import json
import subprocess
import sys

import pytest

from umbilic.cli import main
from umbilic.errors import ConfigError
from umbilic.pipeline import ROW_FIELDS, SCHEMA, RunConfig, run
from umbilic.report import read_csv, to_csv, to_json


def _run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_example(capsys):
    code, out, _ = _run_cli(["analyze", "--spacetime", "minkowski", "--surface", "graph-noncommuting",
                             "--grid", "4x4", "--mode", "classify"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == SCHEMA
    assert {r["status"] for r in rep["rows"]} == {"None"}
    assert [t["status"] for t in rep["tabulated"]] == ["None"] * 3


def test_full_mode_exit_zero_and_checks(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = _run_cli(["analyze", "--spacetime", "schwarzschild:M=1", "--surface", "rsphere:r=3",
                                "--grid", "3x3", "--out", str(out)], capsys)
    assert code == 0 and stdout == ""
    rep = json.loads(out.read_text())
    assert rep["summary"]["checks"]["gauss"]["passed"]
    assert rep["summary"]["checks"]["corollary1"]["evaluated"] == 0


def test_failing_expectation_exits_one(capsys):
    # a very coarse classification tolerance makes the non-commuting graph look umbilical
    code, out, _ = _run_cli(["analyze", "--spacetime", "minkowski", "--surface", "graph-noncommuting",
                             "--grid", "2x2", "--mode", "classify", "--tol-cls", "1.0"], capsys)
    assert code == 1
    assert json.loads(out)["summary"]["expectation_failures"]


@pytest.mark.parametrize("args", [
    ["analyze", "--spacetime", "schwarzschild", "--surface", "rsphere:r=1.5", "--grid", "2x2"],
    ["analyze", "--spacetime", "kerr", "--surface", "sphere"],
    ["analyze", "--spacetime", "minkowski", "--surface", "sphere:r=abc"],
    ["analyze", "--spacetime", "minkowski", "--surface", "sphere", "--grid", "1x1"],
    ["analyze", "--spacetime", "minkowski", "--surface", "sphere", "--grid", "four"],
    ["analyze", "--spacetime", "minkowski", "--surface", "sphere", "--mode", "fast"],
    ["analyze", "--spacetime", "minkowski", "--surface", "sphere", "--tol-cls", "-1"],
    ["analyze", "--spacetime", "minkowski"],
    [],
])
def test_error_exit_codes(args, capsys):
    code, _, err = _run_cli(args, capsys)
    assert code == 2
    assert err


def test_list_catalog(capsys):
    code, out, _ = _run_cli(["analyze", "--list-catalog"], capsys)
    assert code == 0
    assert "schwarzschild:M=1.0" in out and "  wobbly:r=5.0,eps=0.3,delta=0.4" in out


def test_csv_output_matches_json(capsys):
    args = ["analyze", "--spacetime", "flrw", "--surface", "eta-torus", "--grid", "3x2"]
    _, js, _ = _run_cli(args, capsys)
    _, cs, _ = _run_cli(args + ["--format", "csv"], capsys)
    rows = json.loads(js)["rows"]
    parsed = read_csv(cs)
    assert list(parsed[0]) == list(ROW_FIELDS)
    for a, b in zip(rows, parsed):
        for key in ROW_FIELDS:
            want = a[key] if a[key] != "" else None
            assert b[key] == want, key


def test_json_round_trip_is_exact():
    rep = run(RunConfig("de-sitter", "graph-noncommuting", (2, 3), "full", seed=5))
    text = to_json(rep)
    back = json.loads(text)
    assert back["rows"][0]["u"] == rep["rows"][0]["u"]
    assert back["rows"][-1]["ds"] == rep["rows"][-1]["ds"]
    assert to_csv(rep).count("\n") == 1 + len(rep["rows"])


def test_seed_changes_only_the_boosts():
    a = run(RunConfig("minkowski", "torus", (2, 2), "full", seed=1))
    b = run(RunConfig("minkowski", "torus", (2, 2), "full", seed=2))
    assert [r["boost_beta"] for r in a["rows"]] != [r["boost_beta"] for r in b["rows"]]
    assert [r["gHH"] for r in a["rows"]] == [r["gHH"] for r in b["rows"]]


def test_thread_count_does_not_change_output(monkeypatch):
    cfg = RunConfig("static-product", "torus", (3, 3), "full", seed=3)
    monkeypatch.setenv("UMBILIC_SCAN_THREADS", "1")
    one = to_json(run(cfg))
    monkeypatch.setenv("UMBILIC_SCAN_THREADS", "4")
    assert to_json(run(cfg)) == one
    monkeypatch.setenv("UMBILIC_SCAN_THREADS", "many")
    with pytest.raises(ConfigError):
        run(cfg)


def test_module_entry_point_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "umbilic", "analyze", "--spacetime", "minkowski",
           "--surface", "tilted-sphere", "--grid", "3x3", "--seed", "9"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"{")


def test_gauge_option_leaves_invariants(capsys):
    base = ["analyze", "--spacetime", "minkowski", "--surface", "torus", "--grid", "2x2", "--mode", "classify"]
    _, a, _ = _run_cli(base, capsys)
    _, b, _ = _run_cli(base + ["--gauge", "1.5"], capsys)
    ra, rb = json.loads(a)["rows"], json.loads(b)["rows"]
    for x, y in zip(ra, rb):
        assert y["beta"] == 1.5
        assert y["gHH"] == pytest.approx(x["gHH"], abs=1e-12)
        assert y["status"] == x["status"] and y["ortho_umbilical"] == x["ortho_umbilical"]
