import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from digraph_width.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"
CASES = json.loads((GOLDEN / "cases.json").read_text())

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "scripts"))
from make_golden import run_case  # noqa: E402


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case):
    expected = (GOLDEN / "expected" / f"{case['name']}.out").read_text()
    first = run_case(case["argv"], INPUTS)
    second = run_case(case["argv"], INPUTS)
    assert first == second == (case["exit"], expected)


@pytest.mark.parametrize("case", [c for c in CASES if c["argv"][0] == "color"], ids=lambda c: c["name"])
def test_golden_independent_of_jobs(case):
    assert run_case(case["argv"], INPUTS, jobs=2) == run_case(case["argv"], INPUTS, jobs=1)


def test_measure_oriented_k33():
    assert run("measure", "--which", "3col", "--in", INPUTS / "k33_oriented.txt") == (0, "1\n", "")


def test_check_k4_not_three_colourable():
    code, out, _ = run("check", "--graph", INPUTS / "k4.txt", "--formula", INPUTS / "3col.msol")
    assert (code, out) == (0, "false\n")


def test_subdivide_zero_is_canonical_identity(tmp_path):
    messy = tmp_path / "g.txt"
    messy.write_text("# comment\ngraph\nv 3\nv 0\ne 3 0\n")
    code, out, _ = run("subdivide", "--in", messy, "--times", "0")
    assert code == 0 and out == "graph\nv 0\nv 3\ne 0 3\n"


def test_out_file(tmp_path):
    target = tmp_path / "p.txt"
    code, out, _ = run("planarize", "--in", INPUTS / "k4.txt", "--out", target)
    assert code == 0 and out == f"written: {target}\n"
    assert target.read_text() == run("planarize", "--in", INPUTS / "k4.txt")[1]


def test_witness_roundtrip_via_files(tmp_path):
    wit = tmp_path / "w.txt"
    code, out, _ = run("dtm", "--pattern", INPUTS / "two_cycle.txt", "--host", INPUTS / "dag3.txt",
                       "--witness-out", wit)
    assert (code, out) == (0, "true\n")
    code, out, _ = run("validate-witness", "--pattern", INPUTS / "two_cycle.txt", "--host", INPUTS / "dag3.txt",
                       "--witness", wit)
    assert (code, out) == (0, "true\n")


def test_invalid_witness_is_false_not_error(tmp_path):
    wit = tmp_path / "w.txt"
    wit.write_text("sub v 0 1\nsub a 1 0\n")
    code, out, _ = run("validate-witness", "--pattern", INPUTS / "arc.txt", "--host", INPUTS / "path5.txt",
                       "--witness", wit, "--json")
    assert code == 0 and json.loads(out)["result"] is False


def test_reduce_linkage_pattern_out(tmp_path):
    pat = tmp_path / "h.txt"
    code, _, _ = run("reduce-linkage", "--in", INPUTS / "linkage.txt", "--terminals", 0, 1, 2, 3,
                     "--pattern-out", pat)
    assert code == 0 and pat.read_text() == (INPUTS / "pattern_h.txt").read_text()


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check", "--graph", "missing-file.txt", "--text", "(adj x y)"],
    ["check", "--graph", str(INPUTS / "k4.txt")],
    ["check", "--graph", str(INPUTS / "k4.txt"), "--text", "(adj x y)"],
    ["check", "--graph", str(INPUTS / "k4.txt"), "--text", "(adj x y)", "--assign", "x"],
    ["parse-formula", "--text", "(adj x y)", "--sentence"],
    ["measure", "--which", "3col", "--in", str(INPUTS / "k4.txt")],
    ["contract", "--in", str(INPUTS / "k4.txt"), "--arc", "0", "1"],
    ["subdivide", "--in", str(INPUTS / "k4.txt"), "--times", "-1"],
    ["linkage", "--in", str(INPUTS / "linkage.txt"), "--terminals", "0", "0", "2", "3"],
    ["measure", "--which", "dist", "--in", str(INPUTS / "path5.txt"), "--g", "cubic"],
    ["kexpr", "--text", "(addarcs 1 1 (create 1))"],
    ["dtm", "--pattern", str(INPUTS / "arc.txt"), "--host", str(INPUTS / "path5.txt"), "--anchor", "0:1"],
    ["pipeline", "--graph", str(INPUTS / "k2.txt"), "--text", "(exists x (exists y (arc x y)))"],
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == EXIT_USAGE and out == ""


def test_parse_error_reports_position():
    code, _, err = run("parse-formula", "--text", "(exists x\n (bogus))")
    assert code == EXIT_USAGE and "line 2" in err


def test_budget_exit_code():
    code, out, err = run("check", "--graph", INPUTS / "k4.txt", "--formula", INPUTS / "3col.msol", "--budget", 5)
    assert (code, out) == (EXIT_BUDGET, "") and "budget" in err


def test_boolean_false_still_exits_zero():
    code, out, _ = run("contractible", "--in", INPUTS / "k4_acyclic.txt", "--arc", 0, 1)
    assert (code, out) == (EXIT_OK, "false\n")


def test_pipeline_timing_flag():
    code, out, _ = run("pipeline", "--graph", INPUTS / "k2.txt", "--formula", INPUTS / "has_edge.msol", "--timing")
    assert code == 0 and "time_construct:" in out and "agreement: true" in out


def test_stdin_input():
    proc = subprocess.run([sys.executable, "-m", "digraph_width.cli", "measure", "--which", "dist", "--in", "-"],
                          input="digraph\nv 0\nv 1\na 0 1\n", capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"


@pytest.mark.skipif(shutil.which("digraph-width") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["digraph-width", "check", "--graph", str(INPUTS / "c5.txt"),
                           "--formula", str(INPUTS / "3col.msol")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "true\n"
    proc = subprocess.run(["digraph-width", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2
