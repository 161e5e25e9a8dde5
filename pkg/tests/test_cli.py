"""Command-line behavior: emission formats, suites, exit codes."""

import json
import subprocess
import sys

import pytest

from qosp.cli import main
from qosp.gmatrix import from_json_dict
from qosp.matrices import contract_r, named_matrix


def run_cli(args, capsys):
    rc = main(args)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_emit_json_round_trip(capsys):
    for name in ("kr", "transformed", "sjr", "fj", "fs"):
        rc, out, _ = run_cli(["emit", "--matrix", name], capsys)
        assert rc == 0
        assert from_json_dict(json.loads(out)) == named_matrix(name)


def test_emit_with_binding(capsys):
    rc, out, _ = run_cli(
        ["emit", "--matrix", "sjr", "--format", "json", "--set", "xi=1"], capsys
    )
    assert rc == 0
    entries = {(e[0], e[1]): e[2] for e in json.loads(out)["entries"]}
    assert entries[(1, 9)] == "1/2"


def test_emit_kr_at_s_one_is_identity(capsys):
    rc, out, _ = run_cli(["emit", "--matrix", "kr", "--set", "s=1"], capsys)
    assert rc == 0
    entries = json.loads(out)["entries"]
    assert all(e[0] == e[1] and e[2] == "1" for e in entries)
    assert len(entries) == 9


def test_emit_csv_and_latex(capsys):
    rc, out, _ = run_cli(["emit", "--matrix", "sjr", "--format", "csv"], capsys)
    assert rc == 0
    assert len(out.strip().splitlines()) == 9
    rc, out, _ = run_cli(["emit", "--matrix", "fs", "--format", "latex"], capsys)
    assert rc == 0
    assert out.startswith(r"\left(\begin{array}{ccccccccc}")
    assert r"\xi" in out


def test_emit_rep(capsys):
    rc, out, _ = run_cli(["emit", "--rep", "1"], capsys)
    assert rc == 0
    payload = json.loads(out)
    assert payload["dim"] == 5
    assert sorted(payload["matrices"]) == [
        "E", "H", "V", "W", "h", "sigma", "v_minus", "v_plus",
    ]
    sigma = from_json_dict(payload["matrices"]["sigma"])
    from qosp.reps import irrep

    assert sigma == irrep(1).sigma


def test_emit_usage_errors(capsys):
    rc, _, err = run_cli(["emit"], capsys)
    assert rc == 2
    rc, _, err = run_cli(["emit", "--matrix", "kr", "--set", "xi=0.5"], capsys)
    assert rc == 2
    rc, _, err = run_cli(["emit", "--matrix", "kr", "--set", "zeta=1"], capsys)
    assert rc == 2


def test_unknown_flag_rejected(capsys):
    rc = main(["verify", "--bogus"])
    capsys.readouterr()
    assert rc == 2


def test_verify_suites_exit_zero(capsys):
    for suite in ("ybe", "triangular", "factorization", "hopf", "intertwine"):
        rc, out, _ = run_cli(["verify", "--suite", suite], capsys)
        assert rc == 0, suite
        assert "FAIL" not in out


def test_verify_json_shape(capsys):
    rc, out, _ = run_cli(["verify", "--suite", "triangular", "--json"], capsys)
    assert rc == 0
    payload = json.loads(out)
    assert payload[0]["suite"] == "triangularity"
    assert all({"name", "pass", "residual_summary"} <= set(c) for c in payload[0]["checks"])


def test_verify_deterministic(capsys):
    rc1, out1, _ = run_cli(["verify", "--suite", "frt", "--spins", "1/2"], capsys)
    rc2, out2, _ = run_cli(["verify", "--suite", "frt", "--spins", "1/2"], capsys)
    assert (rc1, out1) == (rc2, out2)


def test_solve_phi_output(tmp_path, capsys):
    out_file = tmp_path / "phi.json"
    rc = main(["solve-phi", "--order", "2", "--pairs", "1:1/2,1:1", "--out", str(out_file)])
    capsys.readouterr()
    assert rc == 0
    payload = json.loads(out_file.read_text())
    assert payload["order"] == 2
    assert payload["bilinear"]["0,0"] == "1"
    assert payload["bilinear"]["1,1"] == "1/6"  # 1/4 from f1 x f1, -1/12 correction
    assert payload["report"]["checks"]


def test_solve_phi_bad_pairs(capsys):
    rc, _, err = run_cli(["solve-phi", "--pairs", "nonsense"], capsys)
    assert rc == 2


def test_verify_exit_one_on_failure(tmp_path, monkeypatch, capsys):
    """A corrupted golden fixture must drive the all-suite to exit 1."""
    import json as _json

    import qosp.matrices as mats

    for name in mats.FIXTURE_NAMES:
        mats.write_fixture(name, mats.named_matrix(name), directory=str(tmp_path))
    bad = _json.loads((tmp_path / "sjr.json").read_text())
    bad["entries"][0][2] = "7"
    (tmp_path / "sjr.json").write_text(_json.dumps(bad))
    monkeypatch.setenv("QOSP_FIXTURES", str(tmp_path))
    rc, out, _ = run_cli(["verify", "--suite", "all"], capsys)
    assert rc == 1
    assert "FAIL" in out


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "qosp.cli", "verify", "--suite", "triangular"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
