import json
import subprocess
import sys
from pathlib import Path

import pytest

from boxcong.cli import main

BIN = [sys.executable, "-m", "boxcong.cli"]


def run_cli(*args):
    proc = subprocess.run(
        BIN + list(args), capture_output=True, text=True, timeout=300
    )
    return proc


def test_residues_subcommand():
    proc = run_cli("residues", "--p", "5", "--m", "2")
    assert proc.returncode == 0
    assert json.loads(proc.stdout.strip()) == [0, 1, 7, 18, 24]


def test_weisman_fleck_subcommand():
    proc = run_cli("weisman-fleck", "--n", "4", "--r", "0", "--p", "2", "--s", "1")
    assert proc.returncode == 0
    rep = json.loads(proc.stdout.strip())
    assert rep["claim"] == "weisman-fleck"
    assert rep["predicted_valuation"] == 3
    assert rep["achieved_valuation"] == 3
    assert rep["verified"] is True
    assert set(rep) == {
        "claim", "parameters", "predicted_valuation", "achieved_valuation",
        "infinite", "verified", "witness",
    }


def test_wilson_subcommand():
    proc = run_cli("wilson", "--p", "2", "--s", "1", "--m", "1",
                   "--table", "1,0")
    assert proc.returncode == 0
    rep = json.loads(proc.stdout.strip())
    assert rep["verified"] is True
    assert rep["parameters"]["g_coeffs"] == [1, -1]


def test_verify_axkatz_subcommand(tmp_path):
    spec = {
        "p": 2,
        "polys": ["x1+x2"],
        "levels": [1],
        "weights": ["1"],
        "box": "default",
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(spec))
    proc = run_cli("verify-axkatz", "--spec", str(path))
    assert proc.returncode == 0
    rep = json.loads(proc.stdout.strip())
    assert rep["parameters"]["V_size"] == 2
    assert rep["predicted_valuation"] == 1
    assert rep["verified"] is True


def test_verify_axkatz_unit_box_list(tmp_path):
    spec = [
        {
            "p": 3,
            "polys": ["x1+x2+x3"],
            "box": {"unit_level": 1},
        },
        {
            "p": 2,
            "polys": ["x1+x2", "x1"],
            "levels": [1, 1],
            "weights": ["x", "1"],
            "n_vars": 4,
            "box": "default",
        },
    ]
    path = tmp_path / "insts.json"
    path.write_text(json.dumps(spec))
    proc = run_cli("verify-axkatz", "--spec", str(path))
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert first["parameters"]["V_size"] == 9
    assert first["predicted_valuation"] == 2


def test_malformed_spec_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"p": 2, "polys": ["x1 +"]}))
    proc = run_cli("verify-axkatz", "--spec", str(path))
    assert proc.returncode == 2
    assert "boxcong:" in proc.stderr

    path2 = tmp_path / "nonjson.json"
    path2.write_text("{not json")
    assert run_cli("verify-axkatz", "--spec", str(path2)).returncode == 2


def test_cap_exceeded_exit_3(tmp_path):
    spec = {"p": 2, "polys": ["x1+x2+x3+x4+x5"], "box": "default"}
    path = tmp_path / "big.json"
    path.write_text(json.dumps(spec))
    proc = run_cli("--box-cap", "8", "verify-axkatz", "--spec", str(path))
    assert proc.returncode == 3
    assert "cap exceeded" in proc.stderr


def test_altsum_subcommand(tmp_path):
    seq = [{"coords": [1], "mult": 2}, {"coords": [0], "mult": 1}]
    path = tmp_path / "seq.json"
    path.write_text(json.dumps(seq))
    proc = run_cli("altsum", "--group", "p=2;orders=2", "--seq", str(path),
                   "--m", "1")
    assert proc.returncode == 0
    rep = json.loads(proc.stdout.strip())
    assert rep["claim"] == "altsum"
    assert rep["parameters"]["sum"] == 4
    assert rep["verified"] is True

    proc = run_cli("altsum", "--group", "p=2;orders=2", "--seq", str(path),
                   "--m", "0", "--alpha", "1", "--t", "1")
    assert proc.returncode == 0
    rep = json.loads(proc.stdout.strip())
    assert rep["claim"] == "altsum-class"
    assert rep["parameters"]["sum"] == 2


def test_davenport_subcommand():
    proc = run_cli("davenport", "--group", "p=2;orders=2,2")
    assert proc.returncode == 0
    rep = json.loads(proc.stdout.strip())
    assert rep["invariant"] == "davenport"
    assert rep["value"] == 3
    assert rep["verified"] is True


def test_egz_and_skq_subcommands():
    proc = run_cli("egz", "--group", "p=3;orders=3")
    rep = json.loads(proc.stdout.strip())
    assert rep["value"] == 5 and rep["verified"] is True

    proc = run_cli("egz", "--group", "p=2;orders=2,2", "--X", "2")
    rep = json.loads(proc.stdout.strip())
    assert rep["value"] == 5

    proc = run_cli("skq", "--group", "p=3;orders=3,3", "--k", "2")
    rep = json.loads(proc.stdout.strip())
    assert rep["value"] == 10 and rep["predicted"] == 10
    assert rep["verified"] is True


def test_bounds_subcommand():
    proc = run_cli("bounds", "--group", "p=3;orders=3,3", "--X", "1,2", "--m", "0")
    assert proc.returncode == 0
    rep = json.loads(proc.stdout.strip())
    assert rep["d"] == 2 and rep["r"] == 2
    assert rep["applicable"] is True
    assert rep["bound"] == 7
    assert rep["small_d_all_k_from"] == 2


def test_formats():
    proc = run_cli("--format", "csv", "davenport", "--group", "p=2;orders=2")
    lines = proc.stdout.strip().splitlines()
    assert lines[0].startswith("invariant,group,")
    assert lines[1].startswith("davenport,")

    proc = run_cli("--format", "text", "weisman-fleck", "--n", "6", "--r", "0",
                   "--p", "3", "--s", "1")
    assert "[ok]" in proc.stdout


def test_report_stream_determinism():
    args = ["--seed", "7", "davenport", "--group", "p=3;orders=3,3"]
    out1 = run_cli(*args).stdout
    out2 = run_cli(*args).stdout
    assert out1 == out2


def test_main_callable_directly(capsys):
    rc = main(["residues", "--p", "3", "--m", "2"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out.strip()) == [0, 1, 8]


def test_suite_selftest_corrupt_nonzero_exit():
    proc = run_cli("suite", "algebra", "--selftest-corrupt")
    assert proc.returncode == 1
    lines = [json.loads(l) for l in proc.stdout.strip().splitlines()]
    assert any(not r["verified"] for r in lines)


def test_out_directory_with_figures(tmp_path):
    out = tmp_path / "reports"
    proc = run_cli("--out", str(out), "davenport", "--group", "p=2;orders=2,2")
    assert proc.returncode == 0
    assert (out / "reports.jsonl").exists()
    assert (out / "reports.csv").exists()
    assert (out / "invariants.png").exists()
    line = (out / "reports.jsonl").read_text().strip()
    assert json.loads(line)["value"] == 3
