"""Command-line interface: subcommands, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from helixpq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- gen / validate -----------------------------------------------------------

def test_gen_validate_round_trip(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, _, _ = run(capsys, "gen", "--family", "pgl2", "--q", "9",
                     "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "validate", "--table", str(path))
    assert code == 0
    assert "result: ok" in out


def test_gen_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "gen", "--family", "psl2", "--q", "27", "--out", str(a))
    run(capsys, "gen", "--family", "psl2", "--q", "27", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_validate_flags_corrupt_table(tmp_path, capsys):
    path = tmp_path / "t.json"
    run(capsys, "gen", "--family", "psl2", "--q", "5", "--out", str(path))
    data = json.loads(path.read_text())
    data["characters"][1]["values"]["1a"] = 999
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", "--table", str(path))
    assert code == 1
    assert "INVALID" in out


# --- solve ----------------------------------------------------------------------

def test_solve_involutions_text(capsys):
    code, out, _ = run(capsys, "solve", "--table", "embedded:psp4_7_partial",
                       "--chars", "phi", "--order", "2")
    assert code == 0
    assert "count: 3" in out
    assert "status: finite" in out


def test_solve_json_matches_text_count(capsys):
    code, out, _ = run(capsys, "solve", "--table", "embedded:psp4_7_partial",
                       "--chars", "chi,phi", "--order", "10",
                       "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["count"] == 0 and blob["status"] == "finite"
    assert blob["characters"] == ["chi", "phi"]


def test_solve_output_is_deterministic(capsys):
    args = ("solve", "--table", "gen:psl2:16", "--order", "6",
            "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_solve_degree_selector(capsys):
    code, out, _ = run(capsys, "solve", "--table", "embedded:psl2_3f_eta",
                       "--chars", "deg=13", "--order", "6")
    assert code == 0
    assert "characters: eta, eta_prime" in out


def test_solve_aggregated(capsys):
    code, out, _ = run(capsys, "solve", "--table", "gen:psl2:32",
                       "--chars", "st", "--order", "62",
                       "--s-constant", "31")
    assert code == 0
    assert "count: 0" in out
    assert "collapse[31]" in out


def test_solve_cap_exit_2(capsys):
    code, out, _ = run(capsys, "solve", "--table", "gen:psl2:32",
                       "--order", "6", "--cap", "1")
    assert code == 2
    assert "status: capped" in out


def test_cap_env_var(capsys, monkeypatch):
    monkeypatch.setenv("HELIX_PQ_CAP", "1")
    code, out, _ = run(capsys, "solve", "--table", "gen:psl2:32",
                       "--order", "6")
    assert code == 2


def test_solve_error_cases(capsys):
    code, _, err = run(capsys, "solve", "--table", "embedded:nope",
                       "--order", "2")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "solve", "--table", "gen:psl2:243",
                       "--chars", "chi121", "--order", "33")
    assert code == 1 and "no character named" in err
    code, _, err = run(capsys, "solve", "--table", "gen:psl2:6",
                       "--order", "2")
    assert code == 1
    code, _, err = run(capsys, "solve", "--table", "embedded:psp4_7_partial",
                       "--order", "10", "--s-constant", "3")
    assert code == 1 and "does not divide" in err


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--order", "2"])  # no --table
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


# --- verify ----------------------------------------------------------------------

@pytest.fixture()
def chain_file(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "--table", "embedded:psp4_7_partial",
                       "--chars", "phi", "--order", "2", "--format", "json")
    assert code == 0
    chain = json.loads(out)["chains"][0]
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(chain))
    return path


def test_verify_accepts_solver_output(chain_file, capsys):
    code, out, _ = run(capsys, "verify", "--table", "embedded:psp4_7_partial",
                       "--chars", "phi", "--chain", str(chain_file),
                       "--order", "2")
    assert code == 0
    assert "satisfied" in out


def test_verify_rejects_corrupt_chain(chain_file, tmp_path, capsys):
    chain = json.loads(chain_file.read_text())
    chain["entries"]["2"] = {"2a": 30, "2b": -29}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(chain))
    code, out, _ = run(capsys, "verify", "--table", "embedded:psp4_7_partial",
                       "--chain", str(bad))
    assert code == 1
    assert "VIOLATED" in out


def test_verify_order_cross_check(chain_file, capsys):
    code, _, err = run(capsys, "verify", "--table", "embedded:psp4_7_partial",
                       "--chain", str(chain_file), "--order", "10")
    assert code == 1
    assert "does not match" in err


def test_verify_accepts_whole_solver_file(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "--table", "embedded:psl2_2f_rows",
                       "--chars", "all", "--order", "6", "--format", "json")
    assert code == 0
    path = tmp_path / "solutions.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", "--table", "embedded:psl2_2f_rows",
                       "--chain", str(path), "--order", "6")
    assert code == 0
    assert out.count("satisfied") == 3


def test_verify_rejects_empty_chain_list(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"chains": []}))
    code, _, err = run(capsys, "verify", "--table", "embedded:psl2_2f_rows",
                       "--chain", str(path))
    assert code == 1
    assert "empty chain list" in err


# --- pq --------------------------------------------------------------------------

def test_pq_sufficient_group(capsys):
    code, out, _ = run(capsys, "pq", "--table", "gen:psl2:5")
    assert code == 0
    assert "HeLP_sufficient" in out


def test_pq_json_and_pair_filter(capsys):
    code, out, _ = run(capsys, "pq", "--table", "gen:psl2:16",
                       "--pairs", "2,3", "--format", "json")
    assert code == 0  # finitely many candidate chains is a decided outcome
    blob = json.loads(out)
    assert blob["verdict"] == "HeLP_insufficient"
    assert len(blob["pairs"]) == 1
    assert blob["pairs"][0]["outcome"] == "undecided"


def test_pq_capped_exit_2(capsys):
    code, out, _ = run(capsys, "pq", "--table", "gen:psl2:16",
                       "--pairs", "2,3", "--cap", "1")
    assert code == 2


def test_pq_edge_pair_rejected(capsys):
    code, _, err = run(capsys, "pq", "--table", "gen:psl2:16",
                       "--pairs", "3,5")
    assert code == 1
    assert "not missing" in err


# --- installed entry point ---------------------------------------------------------

def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "helixpq.cli", "validate",
         "--table", "embedded:pgl2_243_rows"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "result: ok" in proc.stdout
