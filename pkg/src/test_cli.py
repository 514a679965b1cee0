#!/usr/bin/env python3
"""Tests for the command-line surface"""

import json

import pytest

from cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED, main
from lie_algebra import TruncationContext
from derivations import ls_differential
from structure_exporter import StructureExporter


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_normalize(capsys):
    assert run(capsys, "normalize", "[b,a]")[:2] == (EXIT_OK, "[a,b]\n")
    assert run(capsys, "normalize", "[e,e]")[:2] == (EXIT_OK, "0\n")
    status, out, _ = run(capsys, "normalize", "1/2*[a,[b,e]] + 1/2*[b,[a,e]]")
    assert status == EXIT_OK
    assert out == run(capsys, "normalize", "1/2*[[a,b],e]")[1]


def test_diff(capsys):
    assert run(capsys, "diff", "a")[:2] == (EXIT_OK, "-1/2*[a,a]\n")
    status, out, _ = run(capsys, "--max-len", "2", "diff", "e")
    assert status == EXIT_OK
    assert out == "-a + b - 1/2*[a,e] - 1/2*[b,e]\n"
    assert run(capsys, "diff", "e", "--max-len", "2")[1] == out


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "--format", "json", "diff", "[a,b]")[1]
    second = run(capsys, "--format", "json", "diff", "[a,b]")[1]
    assert first == second
    records = json.loads(first)
    assert {r["coeff"] for r in records} == {"-1/1", "1/1"}


def test_usage_errors(capsys):
    status, out, err = run(capsys, "normalize", "[a,")
    assert status == EXIT_USAGE and out == ""
    assert "error:" in err and "position" in err
    assert run(capsys, "normalize", "[a,z]")[0] == EXIT_USAGE
    assert run(capsys, "--max-len", "3", "basis", "4", "-1")[0] == EXIT_USAGE
    assert run(capsys, "--max-len", "0", "normalize", "a")[0] == EXIT_USAGE
    assert run(capsys, "bernoulli", "-1")[0] == EXIT_USAGE
    assert run(capsys, "flow", "--v", "a")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["--perturb-bernoulli", "2:1/10", "verify"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["--alphabet", "a:x", "normalize", "a"])
    assert info.value.code == 2


def test_basis(capsys):
    assert run(capsys, "basis", "2", "-2")[1] == "[a,a]\n[a,b]\n[b,b]\n"
    assert run(capsys, "basis", "2", "0")[:2] == (EXIT_OK, "")
    records = json.loads(run(capsys, "--format", "json", "basis", "1", "-1")[1])
    assert [r["tree"] for r in records] == ["a", "b"]


def test_bernoulli(capsys):
    assert run(capsys, "bernoulli", "2")[1] == "0 1/1\n1 -1/2\n2 1/6\n"
    assert run(capsys, "bernoulli", "12")[1].splitlines()[-1] == "12 -691/2730"


def test_flow(capsys):
    status, out, _ = run(capsys, "flow", "--t", "1")
    assert status == EXIT_OK
    assert out.splitlines() == ["u(1) = b", "residual = 0", "curvature = 0"]
    assert run(capsys, "flow", "--t", "0")[1].splitlines()[0] == "u(0) = a"
    payload = json.loads(run(capsys, "--format", "json", "flow", "--t", "1/2")[1])
    assert payload["t"] == "1/2" and payload["residual"] == [] and payload["curvature"] == []


@pytest.mark.parametrize("max_length", [1, 3, 6])
def test_verify_passes(capsys, max_length):
    status, out, _ = run(capsys, "verify", "--max-len", str(max_length))
    assert status == EXIT_OK
    assert "FAIL" not in out
    assert out.strip().endswith("checks passed")


def test_verify_detects_perturbed_bernoulli(capsys):
    status, out, _ = run(capsys, "--format", "json", "verify", "--max-len", "4", "--perturb-bernoulli", "2=1/10")
    assert status == EXIT_VERIFICATION_FAILED
    report = json.loads(out)
    checks = {c["name"]: c for c in report["checks"]}
    assert report["passed"] is False
    assert not checks["square_zero[e]"]["passed"]
    assert checks["square_zero[e]"]["residual"]
    assert not checks["flow_endpoint"]["passed"]
    assert checks["square_zero[a]"]["passed"]


def test_export_small(capsys):
    payload = json.loads(run(capsys, "--format", "json", "--max-len", "1", "export")[1])
    assert payload["brackets"] == []
    values = {json.dumps(row["monomial"]): row["value"] for row in payload["differential"]}
    assert values['"a"'] == [] and values['"b"'] == []
    assert [(r["coeff"], r["tree"]) for r in values['"e"']] == [("-1/1", "a"), ("1/1", "b")]
    assert "Brackets (N=1)" in run(capsys, "--max-len", "1", "export")[1]


def _restricted(records, limit):
    return [r for r in records if r["length"] <= limit]


def test_export_is_compatible_with_longer_truncations():
    small = StructureExporter(TruncationContext(3), ls_differential(TruncationContext(3))).export()
    large = StructureExporter(TruncationContext(4), ls_differential(TruncationContext(4))).export()
    assert small["basis"] == _restricted(large["basis"], 3)
    large_brackets = {(json.dumps(r["left"]), json.dumps(r["right"])): r["value"] for r in large["brackets"]}
    for row in small["brackets"]:
        key = (json.dumps(row["left"]), json.dumps(row["right"]))
        assert row["value"] == _restricted(large_brackets[key], 3)
    large_diff = {json.dumps(r["monomial"]): r["value"] for r in large["differential"]}
    for row in small["differential"]:
        assert row["value"] == _restricted(large_diff[json.dumps(row["monomial"])], 3)
