from __future__ import annotations

import json
import subprocess
import sys

import pytest

from albert_forge.cli import main, parse_vector
from albert_forge.gf import field_of_order


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_octonion_exit_zero(capsys):
    code, out, err = run(capsys, "verify", "--suite", "octonion", "--q", "3", "--seed", "7")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["schema"] == 1 and data["seed"] == 7
    assert {c["q"] for s in data["suites"] for c in s["checks"]} == {3}
    assert "PASS" in err


def test_output_is_byte_identical(capsys, tmp_path):
    argv = ["verify", "--suite", "albert", "--q", "5", "--samples", "300", "--seed", "3"]
    outs = []
    for n in range(2):
        path = tmp_path / f"r{n}.json"
        assert main(argv + ["--output", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    capsys.readouterr()


def test_verification_failure_exit_one(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "twisted", "--q", "2")
    assert code == 1
    failed = [c["name"] for s in json.loads(out)["suites"] for c in s["checks"] if not c["passed"]]
    assert failed == ["emerald_radical_is_span_v"]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["census", "--q", "6"],
    ["classify", "{not json", "--q", "3"],
    ["classify", "[1, 2]", "--q", "3"],
    ["verify", "--suite", "octonion", "--q", "3", "--p", "2"],
    ["census", "--mode", "closed", "--qs", "2", "--q", "3"],
    ["classify", '{"a": 1}', "--k", "2"],
])
def test_config_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_budget_exit_three(capsys):
    code, out, _ = run(capsys, "orbit", "--q", "2", "--start", '{"a": 1}', "--budget", "1000")
    assert code == 3
    data = json.loads(out)
    assert data["truncated"] and data["orbit_size"] == 1000
    code, _, _ = run(capsys, "census", "--q", "3", "--mode", "brute")
    assert code == 3


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", '{"a": 1, "b": 1}', "--q", "3")
    assert code == 0 and json.loads(out)["color"] == "Grey"
    code, out, _ = run(capsys, "classify", '{"A": [0, 1, 0, 0, 0, 0, 0, 0]}', "--q", "4")
    data = json.loads(out)
    assert data["color"] == "White" and data["twoE6_type"] == "Emerald"


def test_census_closed_and_csv(capsys):
    code, out, _ = run(capsys, "census", "--q", "2", "--mode", "closed")
    assert json.loads(out)["results"][0]["white_vectors"] == 139503
    code, out, _ = run(capsys, "census", "--q", "2", "--mode", "closed", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith("2,139503,")


def test_census_structured_case(capsys):
    code, out, _ = run(capsys, "census", "--q", "2", "--mode", "structured", "--case", "4")
    assert code == 0 and "14175" in out


def test_orders_and_table_and_dickson(capsys):
    code, out, _ = run(capsys, "orders", "--qs", "2", "3")
    assert code == 0 and "3311126603366400" in out
    code, out, _ = run(capsys, "table")
    assert code == 0 and "e-wb" in out
    code, out, _ = run(capsys, "dickson", "--qs", "2", "101")
    assert code == 0 and json.loads(out)["ok"]


def test_parse_vector_forms():
    F = field_of_order(3)
    a = parse_vector('{"a": 1, "B": [0,0,0,0,0,2,0,0]}', F)
    b = parse_vector(json.dumps([1] + [0] * 15 + [2] + [0] * 10), F)
    assert a == b
    c = parse_vector(json.dumps(a.to_json()), None)
    assert c == a


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "albert_forge", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "0.1.0" in r.stdout
