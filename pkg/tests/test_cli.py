import io
import json
import subprocess
import sys

import pytest

from alcove import affine, selftest
from alcove.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def records(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return [json.loads(line) for line in out.splitlines()]


RHO = ["--n", "2", "--e", "2", "--p", "211", "--s", "id", "--mu", "80,0"]


def test_adm_example():
    recs = records("adm", "--n", "2", "--f", "1", "--e", "1", "--p", "101", "--lambda", "eta0")
    assert len(recs) == 3
    assert all(r["p_used"] is False for r in recs)


def test_corridor_example():
    recs = records("corridor", "--n", "3", "--f", "1", "--e", "3", "--p", "5", "--w", "id", "--alpha", "1")
    assert len(recs) == 7


def test_geometry_examples():
    (rec,) = records("geometry", "--n", "2", "--p", "5", "--shape", "endpoint(id)")
    assert rec["smooth"] is True and rec["components"] == 1
    (rec,) = records("geometry", "--n", "2", "--f", "2", "--e", "2", "--p", "5", "--shape", "t[1,1;1,1]")
    assert rec["components"] == 4


def test_tsv_output():
    code, out, _ = run("adm", "--n", "2", "--p", "5", "--lambda", "eta0", "--output", "tsv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4
    assert len({len(line.split("\t")) for line in lines}) == 1


@pytest.mark.parametrize(
    "cmd",
    [
        ["jh", "--n", "2", "--p", "211", "--s", "id", "--mu", "80,0"],
        ["wq"] + RHO,
        ["extremal"] + RHO,
        ["chain"] + RHO + ["--w", "id", "--alpha", "1"],
        ["reflect"] + RHO + ["--w", "id", "--alpha", "1", "--k", "1"],
        ["theta"] + RHO + ["--w", "id"],
        ["tame-check"] + RHO,
        ["schein"] + RHO,
        ["chars", "--n", "2", "--p", "7", "--s", "2,1", "--mu", "3,0"],
        ["wqtau"] + RHO + ["--shape", "endpoint(id)"],
        ["canform", "--n", "2", "--e", "2", "--p", "5", "--elt", "endpoint(2,1)"],
        ["classify", "--n", "3", "--e", "2", "--p", "5", "--elt", "e*eta0"],
        ["order", "--n", "2", "--p", "5", "--a", "t[1,0]·w(2,1)", "--b", "t[1,0]"],
        ["order", "--n", "2", "--p", "5", "--a", "id", "--b", "t[1,-1]", "--kind", "up"],
        ["eliminate"] + RHO + ["--lambda", "79,0"],
    ],
)
def test_commands_succeed(cmd):
    assert records(*cmd)


def test_chain_rows_verified():
    recs = records("chain", *RHO, "--w", "id", "--alpha", "1")
    rows = [r for r in recs if "m" in r]
    assert len(rows) == 5 and all(r["verified"] for r in rows)


def test_chars_example():
    recs = records("chars", "--n", "2", "--p", "7", "--s", "2,1", "--mu", "3,0")
    assert len(recs) == 2 and all(r["valid"] for r in recs)
    assert sorted(recs[0]["exponents"]) == [4, 28] and recs[0]["modulus"] == 48


def test_canform_example():
    (rec,) = records("canform", "--n", "2", "--e", "2", "--p", "5", "--elt", "endpoint(2,1)")
    assert rec["round_trip"] is True
    assert rec["w1"] == "t[1,0]·w(2,1)"


def test_order_example():
    (rec,) = records("order", "--n", "2", "--p", "5", "--a", "t[1,0]·w(2,1)", "--b", "t[1,0]")
    assert rec["le"] is True


def test_exit_codes(monkeypatch):
    assert run("adm", "--n", "2", "--lambda", "eta0")[0] == 1
    assert run("adm", "--n", "2", "--p", "5", "--lambda", "bogus")[0] == 1
    assert run("nope")[0] == 1
    assert run("adm", "--n", "2", "--p", "4", "--lambda", "eta0")[0] == 2
    code, _, err = run("jh", "--n", "2", "--p", "211", "--s", "id", "--mu", "1,0", "--strict")
    assert code == 2 and "precondition" in err
    code, _, err = run("jh", "--n", "2", "--p", "211", "--s", "id", "--mu", "1,0")
    assert code == 0 and err.startswith("warning:")


def test_cap_exit_code():
    env = {"ALCOVE_CAP": "2", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run(
        [sys.executable, "-m", "alcove", "adm", "--n", "3", "--p", "5", "--lambda", "3*eta0"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 3


def test_output_is_byte_stable():
    argv = ["extremal", "--n", "3", "--p", "211", "--s", "2,3,1", "--mu", "60,30,0"]
    assert run(*argv)[1] == run(*argv)[1]


def test_selftest_passes_and_is_deterministic():
    a = records("selftest", "--seed", "3")
    assert a[-1]["summary"] and a[-1]["passed"] == a[-1]["total"] == len(selftest.CHECKS)
    assert records("selftest", "--seed", "3") == a


def test_selftest_catches_a_broken_order(monkeypatch):
    real = affine.bruhat_le

    def broken(a, b):
        return real(a, b) or a.length() < b.length()

    monkeypatch.setattr(affine, "bruhat_le", broken)
    (rec,) = selftest.run(0, only={"bruhat_vs_subword"})
    assert rec["pass"] is False and "counterexample" in rec
