import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from residua.cli import run

DATA = Path(__file__).parent / "data"


def call(*args):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in args], out, err)
    return code, out.getvalue(), err.getvalue()


def test_wem_member():
    code, out, _ = call("logic", "wem", "~p0 | ~~p0")
    assert code == 0 and "MEMBER" in out.splitlines()


def test_wem_nonmember_certificate(tmp_path):
    cert = tmp_path / "c.lat"
    code, out, _ = call("logic", "wem", "p0 | ~p0", "--cert-out", cert)
    assert code == 1 and "NONMEMBER" in out
    assert "assignment: p0=1" in out
    code, out, _ = call("logic", "eval", "p0 | ~p0", "--lattice", cert, "--assign", "p0=1")
    assert code == 0 and "is-top: no" in out


def test_lmb_example():
    code, out, _ = call("class", "lmb", DATA / "example.cls", "--depth", "3")
    assert code == 0 and out.splitlines()[0] == "1 0 0"


def test_empty_class_exit_code(tmp_path):
    f = tmp_path / "empty.cls"
    f.write_text("depth 4\nclauses:\np0\n~p0\n")
    assert call("class", "lmb", f, "--depth", "2")[0] == 1
    assert call("class", "nonempty", f, "--depth", "2")[0] == 1


def test_unknown_exit_code():
    assert call("logic", "wem", "p0 | ~p0", "--max-size", "2")[0] == 3


def test_errors_exit_two():
    code, _, err = call("logic", "eval", "p0 ->", "--lattice", DATA / "chain3.lat", "--assign", "p0=1")
    assert code == 2 and "position" in err
    assert call("lattice", "check", DATA / "missing.lat")[0] == 2
    assert call("nonsense")[0] == 2


def test_json_output():
    code, out, _ = call("--json", "logic", "ipc", "p0 -> p0")
    data = json.loads(out)
    assert code == 0 and data["result"] == "PROVED"


def test_ipc_with_hypothesis():
    assert call("logic", "ipc", "p0 | p1", "--hyp", "p0")[0] == 0


def test_env_override(monkeypatch):
    monkeypatch.setenv("RESIDUA_MAX_SIZE", "2")
    assert call("logic", "wem", "p0 | ~p0")[0] == 3


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "residua.cli", "logic", "wem", "~p0 | ~~p0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "MEMBER" in proc.stdout


@pytest.mark.parametrize("args", [
    ["free", "op", "join", DATA / "chain2.pos", "{a}", "{b}"],
    ["lattice", "sub", DATA / "diamond.lat", "--elems", "a,b"],
    ["class", "isolated", DATA / "example.cls", "--depth", "2"],
    ["class", "profile", DATA / "table.cls", "--depth", "4"],
])
def test_other_commands_succeed(args):
    assert call(*args)[0] == 0
