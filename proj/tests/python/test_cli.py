"""CLI behavior that is easiest to pin from the outside."""

import os
import subprocess

import pytest

CLI = os.environ.get("MWQ_CLI_BIN")
HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "..", "data")

pytestmark = pytest.mark.skipif(CLI is None, reason="MWQ_CLI_BIN not set")


def invoke(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True,
                          env={**os.environ, "MWQ_COLOR": "never"})


def test_answer_is_deterministic():
    args = ("answer", "--kb", os.path.join(DATA, "chemo", "kb.mwq"),
            "--data", os.path.join(DATA, "chemo", "data.csv"),
            "--query", os.path.join(DATA, "chemo", "query_phi.mwq"))
    first = invoke(*args)
    second = invoke(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.startswith('{"answers":')


def test_exit_codes():
    bad = invoke("answer", "--kb", "/nonexistent", "--query", "/nonexistent")
    assert bad.returncode == 1

    usage = invoke("answer")
    assert usage.returncode == 1

    kb = os.path.join(HERE, "..", "cli", "inconsistent.mwq")
    inconsistent = invoke("check", "--kb", kb)
    assert inconsistent.returncode == 2
    assert "error:" in inconsistent.stderr

    # oracle refusal: cyclic TBox with an explicit too-small depth
    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        cyc = os.path.join(tmp, "cyc.mwq")
        with open(cyc, "w") as f:
            f.write("A SUB some r . B\nB SUB some r . A\nA(a)\n")
        q = os.path.join(tmp, "q.mwq")
        with open(q, "w") as f:
            f.write("q(x) := {A(x), r(x,y), B(y)}\n")
        refusal = invoke("answer", "--kb", cyc, "--query", q,
                         "--engine", "oracle", "--oracle-depth", "1")
        assert refusal.returncode == 3
