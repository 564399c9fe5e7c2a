import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hk4verify.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def verify_all_json():
    return run("verify", "all", "--json")


def test_verify_all_passes_and_is_large(verify_all_json):
    code, text = verify_all_json
    lines = [json.loads(ln) for ln in text.splitlines()]
    assert code == 0
    assert lines[0]["type"] == "meta" and lines[-1]["type"] == "summary"
    checks = [r for r in lines if r["type"] == "check"]
    assert len(checks) >= 40
    assert all(r["status"] == "pass" for r in checks)
    assert {"check-id", "anchor", "expected", "computed", "status"} <= checks[0].keys()
    ids = [r["check-id"] for r in checks]
    assert len(set(ids)) == len(ids)


def test_verify_sym2_ids():
    code, text = run("verify", "sym2", "--json")
    ids = {json.loads(ln).get("check-id") for ln in text.splitlines()}
    assert code == 0
    assert {"qdualint-575", "smalldisc-704"} <= ids


def test_verify_deterministic():
    a = run("verify", "charclass")
    b = run("verify", "charclass")
    assert a == b and a[0] == 0


def test_bad_scope_is_usage_error():
    assert run("verify", "bogus")[0] == 2
    assert run()[0] == 2


def test_lattice_command():
    code, text = run("lattice", "3U + 2E8(-1) + <-2>", "--json")
    rec = json.loads(text)
    assert code == 0
    assert rec["rank"] == 23 and abs(rec["det"]) == 2 and rec["signature"] == [3, 20, 0]
    assert run("lattice", "E7")[0] == 2


def test_adapt_prints_F_and_G():
    code, text = run("cubic", "adapt", str(DATA / "adapted_node.poly"), "--point", "0,0,0,0,0,1")
    assert code == 0
    assert "F: X0*X1" in text and "G: X2^3" in text


def test_adapt_precondition_failure():
    code, _ = run("cubic", "adapt", str(DATA / "adapted_node.poly"), "--point", "1,1,0,0,0,0")
    assert code == 1


def test_duval_models():
    code, text = run("cubic", "duval-check", str(DATA / "triple_cusp.poly"))
    assert code == 0 and "verdict: rejected" in text
    code, text = run("cubic", "duval-check", str(DATA / "cusp.poly"))
    assert "verdict: accepted" in text
    code, text = run("cubic", "duval-check", str(DATA / "equaloc.poly"), "--json")
    assert json.loads(text)["verdict"] == "accepted"


def test_two_node_quartic():
    code, text = run("cubic", "two-node-quartic", str(DATA / "two_node.poly"), "--json")
    rec = json.loads(text)
    assert code == 0 and rec["deg_P"] == 4 and rec["det_M_equals_f_P"] == "true"


def test_yg_fit_hash_stable():
    a = run("cubic", "yg-fit", str(DATA / "net_generic.txt"), "--json")
    b = run("cubic", "yg-fit", str(DATA / "net_generic.txt"), "--json")
    assert a == b and a[0] == 0
    rec = json.loads(a[1])
    assert len(rec["sha256"]) == 64 and rec["cone_vertices"] == "()"
    c = json.loads(run("cubic", "yg-fit", str(DATA / "net_basepoint.txt"), "--json")[1])
    assert c["sha256"] != rec["sha256"] and c["cone_vertices"] != "()"


def test_missing_and_malformed_files(tmp_path):
    assert run("cubic", "adapt", str(tmp_path / "nope.poly"))[0] == 2
    bad = tmp_path / "bad.poly"
    bad.write_text("X0 * * X1\n")
    assert run("cubic", "duval-check", str(bad))[0] == 2


def test_console_entry_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "hk4verify", "verify", "lattice"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("checks passed")
