import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from deficiency_one.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_json_eight_vertex():
    code, out, _ = run("analyze", f"{DATA}/d8.graph", "--format", "json", "--samples", "10")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {
        "instance", "classification", "exists_conditions", "forall_conditions",
        "witness_kappa", "falsifier_kappa", "oracle",
    }
    assert doc["classification"]["verdict"] == "AlwaysNonempty"
    conds = {(tuple(c["vertices"]), c["relation"]) for c in doc["forall_conditions"]}
    assert ((7, 8), "<0") in conds
    assert len(conds) == 7
    assert doc["oracle"]["consistent"]


def test_text_and_json_carry_the_same_conditions():
    _, js, _ = run("analyze", f"{DATA}/net1.net", "--format", "json", "--samples", "0")
    _, text, _ = run("analyze", f"{DATA}/net1.net", "--format", "text", "--samples", "0")
    doc = json.loads(js)
    for c in doc["exists_conditions"] + doc["forall_conditions"]:
        body = ",".join(map(str, c["vertices"]))
        rel = "<" if c["relation"] == "<0" else "<="
        assert f"h({{{body}}}) {rel} 0   value {c['value']}" in text


@pytest.mark.parametrize(
    "name, code",
    [("d8.graph", 0), ("net2.net", 0), ("net1.net", 1)],
)
def test_classify_exit_codes(name, code):
    assert run("classify", f"{DATA}/{name}")[0] == code


def test_classify_always_empty(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("vertices 8\narcs 2->1 3->2 3->4 4->3 5->2 5->6 6->2 6->5 7->4 7->6 7->8 8->7\nh 2 -2 0 0 0 0 0 0\n")
    code, out, _ = run("classify", str(p))
    assert (code, out.strip()) == (2, "AlwaysEmpty")


def test_error_exit_codes(tmp_path):
    empty = tmp_path / "empty"
    empty.write_text("")
    assert run("classify", str(empty))[0] == 65
    assert run("classify", str(tmp_path / "missing"))[0] == 66
    assert run("frobnicate")[0] == 64
    assert run("branchings", f"{DATA}/fig1.graph")[0] == 64


def test_branchings_dump():
    code, out, _ = run("branchings", f"{DATA}/fig1.graph", "--roots", "1,4", "--via", "2:4")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert len(lines) == 3
    code, out, _ = run("branchings", f"{DATA}/fig1.graph", "--roots", "1,4", "--cyclic")
    assert out.strip().endswith("# 6 arc sets")


def test_witness_and_oracle():
    code, out, _ = run("witness", f"{DATA}/net1.net")
    doc = json.loads(out)
    assert code == 0 and doc["witness_verified"] and doc["falsifier_verified"]
    code, out, _ = run("oracle", f"{DATA}/net1.net", "--samples", "30", "--seed", "3")
    doc = json.loads(out)
    assert code == 0 and doc["consistent"] and doc["samples"] == 30


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "deficiency_one", "classify", f"{DATA}/net1.net"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert proc.stdout.strip() == "DependsOnKappa"
