import json
import subprocess
import sys

import pytest

from ncgb.cli import main, run_command

PLANE = "field Q\nletters x1:(1,0), x2:(0,1)\nrelations:\nx2*x1 - 3*x1*x2\n"


@pytest.fixture
def plane_file(tmp_path):
    f = tmp_path / "plane.txt"
    f.write_text(PLANE)
    return str(f)


def test_hilbert_collapse(plane_file):
    status, text = run_command(["hilbert", plane_file, "--cap", "6", "--collapse"])
    assert status == 0 and json.loads(text) == [1, 2, 3, 4, 5, 6, 7]


def test_gb_family_a():
    status, text = run_command(["gb", "--family", "A", "--param", "p=2", "--max-total-degree", "11"])
    out = json.loads(text)
    assert status == 0 and len(out["basis"]) == 4
    assert [b["minimal"] for b in out["basis"]] == [True, True, True, False]
    assert out["basis"][0]["leading_word"] == "x2*x1^2"
    assert out["unresolved_compositions"] == 0


def test_verify_family_exit_codes():
    status, text = run_command(["verify-family", "A", "--param", "p=2"])
    assert status == 0 and json.loads(text)["passed"]
    status, text = run_command(["verify-family", "A", "--param", "p=0"])
    assert status == 2 and text is None


def test_usage_errors(capsys):
    assert run_command(["bogus"])[0] == 2
    assert run_command(["hilbert"])[0] == 2
    status, _ = run_command(["gb", "--family", "A", "--param", "p"])
    assert status == 2
    assert "name=value" in capsys.readouterr().err


def test_normal_command(plane_file):
    status, text = run_command(["normal", plane_file, "--element", "x1"])
    out = json.loads(text)
    assert status == 0 and out["normal"] and out["regular"]
    assert out["left"]["x2"] == "1/3*x2"
    status, _ = run_command(["normal", "--family", "A", "--param", "p=2", "--element", "x1*x2"])
    assert status == 1


def test_chains_and_lyndon():
    out = json.loads(run_command(["chains", "--family", "A", "--param", "p=2"])[1])
    assert out["global_dimension"] == 5 and out["bound_holds"]
    assert out["reduced_levels"][5] == [[4, 7]]
    out = json.loads(run_command(["lyndon", "--family", "G", "--param", "p=1", "--param", "j=1"])[1])
    assert len(out["words"]) == 5 and out["series_matches"] and out["finite"]


def test_search_summary():
    out = json.loads(run_command(["search", "--type", "44455"])[1])
    assert out["complete_leaves"] == [{
        "shape": "relations (3,1),(2,2),(1,3),(3,2),(2,3) top (5, 5)",
        "obstructions": ["x2*x1^3", "x2^2*x1^2", "x2^3*x1", "x2*x1*x2*x1^2", "x2^2*x1*x2*x1"],
    }]


def test_environment_cap(monkeypatch, plane_file):
    monkeypatch.setenv("NCGB_CAP", "3")
    assert json.loads(run_command(["hilbert", plane_file, "--collapse"])[1]) == [1, 2, 3, 4]
    monkeypatch.setenv("NCGB_CAP", "x")
    assert run_command(["hilbert", plane_file])[0] == 2


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(PLANE))
    assert main(["hilbert", "-", "--cap", "2", "--collapse"]) == 0
    assert json.loads(capsys.readouterr().out) == [1, 2, 3]


def test_output_is_byte_identical_across_processes(plane_file):
    cmd = [sys.executable, "-m", "ncgb", "verify-family", "C", "--param", "p=5/2", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["passed"]
    cmd = [sys.executable, "-m", "ncgb", "gb", plane_file]
    assert subprocess.run(cmd, capture_output=True).stdout == subprocess.run(cmd, capture_output=True).stdout
