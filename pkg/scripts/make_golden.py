"""Regenerate the golden CLI suite under tests/golden.

Writes the input files, a cases.json listing every invocation, and the expected
stdout of each invocation.  Re-run only when an output format changes on purpose;
the test suite then checks the outputs byte for byte.
"""

from __future__ import annotations

import argparse
import io
import itertools
import json
from dataclasses import dataclass
from pathlib import Path

from digraph_width.cli import main
from digraph_width.dtm import LinkageInstance, is_dtm, reduce_linkage_to_dtm
from digraph_width.graphio import format_graph
from digraph_width.graphs import Digraph, Graph
from digraph_width.measures import ColoringCertificate, encode_coloring, format_k_expression, symmetric_clique_expression
from digraph_width.mso import serialize_formula, three_colorability


@dataclass
class GoldenConfig:
    root: Path = Path(__file__).resolve().parent.parent / "tests" / "golden"


def _inputs() -> dict:
    k4 = Graph.from_edges(itertools.combinations(range(4), 2))
    k33 = Graph.from_edges([(i, 3 + j) for i in range(3) for j in range(3)])
    bip = ColoringCertificate(frozenset({0, 1, 2}), frozenset(), frozenset({3, 4, 5}))
    c5 = Graph.from_edges([(i, (i + 1) % 5) for i in range(5)])
    c5_col = ColoringCertificate.from_colors({0: 0, 1: 1, 2: 0, 3: 1, 4: 2})
    link = Digraph.from_arcs([(0, 4), (4, 1), (2, 5), (5, 3), (4, 5)])
    red = reduce_linkage_to_dtm(LinkageInstance(link, (0, 1, 2, 3)))
    path5 = Digraph.from_arcs([(i, i + 1) for i in range(5)])
    arc = Digraph.from_arcs([(0, 1)])
    w = is_dtm(arc, path5).witness
    k12 = Graph.from_edges([(0, 1), (0, 2)])
    return {
        "k4.txt": format_graph(k4),
        "k2.txt": format_graph(Graph.from_edges([(0, 1)])),
        "two.txt": format_graph(Graph.from_edges([], vertices=[0, 1])),
        "p3.txt": format_graph(k12),
        "c5.txt": format_graph(c5),
        "c5.col": c5_col.to_text(),
        "k33.txt": format_graph(k33),
        "k33.col": bip.to_text(),
        "k33_oriented.txt": format_graph(encode_coloring(k33, bip)),
        "k4_acyclic.txt": format_graph(Digraph.from_arcs([(u, v) for u, v in k4.edges])),
        "path5.txt": format_graph(path5),
        "arc.txt": format_graph(arc),
        "arc_in_path5.wit": w.to_text(),
        "two_cycle.txt": format_graph(Digraph.from_arcs([(0, 1), (1, 0)])),
        "dag3.txt": format_graph(Digraph.from_arcs([(0, 1), (0, 2), (2, 1)])),
        "linkage.txt": format_graph(link),
        "pattern_h.txt": format_graph(red.pattern),
        "dstar.txt": format_graph(red.dstar),
        "3col.msol": serialize_formula(three_colorability()) + "\n",
        "has_edge.msol": "; some edge exists\n(exists x (exists y (adj x y)))\n",
        "dominating.msol": "(exists x (forall y (or (= x y) (adj x y))))\n",
        "k3sym.kexpr": format_k_expression(symmetric_clique_expression(3)) + "\n",
    }


def cases(red_anchors: dict) -> list:
    anchors = [f"{p}={x}" for p, x in sorted(red_anchors.items())]
    c = [
        ["parse-formula", "--formula", "{d}/3col.msol"],
        ["parse-formula", "--text", "(forall x (exists y (adj x y)))", "--sentence", "--json"],
        ["check", "--graph", "{d}/k4.txt", "--formula", "{d}/3col.msol"],
        ["check", "--graph", "{d}/c5.txt", "--formula", "{d}/3col.msol"],
        ["check", "--graph", "{d}/p3.txt", "--text", "(adj x y)", "--assign", "x=0", "y=1"],
        ["planarize", "--in", "{d}/k4.txt"],
        ["regularize", "--in", "{d}/k2.txt"],
        ["subdivide", "--in", "{d}/k4.txt", "--times", "0"],
        ["subdivide", "--in", "{d}/path5.txt", "--times", "2"],
        ["interpret", "--which", "I3", "--in", "{d}/k33.txt"],
        ["adj2arc", "--formula", "{d}/dominating.msol"],
        ["contract", "--in", "{d}/dag3.txt", "--arc", "0", "1"],
        ["contractible", "--in", "{d}/path5.txt", "--arc", "1", "2"],
        ["dtm", "--pattern", "{d}/arc.txt", "--host", "{d}/path5.txt", "--json"],
        ["dtm", "--pattern", "{d}/two_cycle.txt", "--host", "{d}/dag3.txt"],
        ["dtm", "--pattern", "{d}/two_cycle.txt", "--host", "{d}/path5.txt"],
        ["dtm", "--pattern", "{d}/pattern_h.txt", "--host", "{d}/dstar.txt", "--anchor", *anchors],
        ["linkage", "--in", "{d}/linkage.txt", "--terminals", "0", "1", "2", "3"],
        ["reduce-linkage", "--in", "{d}/linkage.txt", "--terminals", "0", "1", "2", "3"],
        ["measure", "--which", "3col", "--in", "{d}/k33_oriented.txt"],
        ["measure", "--which", "3col", "--in", "{d}/k4_acyclic.txt", "--verbose"],
        ["measure", "--which", "dist", "--in", "{d}/k33_oriented.txt", "--json"],
        ["measure", "--which", "dist-alt", "--in", "{d}/path5.txt", "--g", "pow2"],
        ["color", "--in", "{d}/c5.txt"],
        ["color", "--in", "{d}/k4.txt"],
        ["color", "--in", "{d}/k33_oriented.txt", "--json"],
        ["encode-coloring", "--graph", "{d}/c5.txt", "--coloring", "{d}/c5.col"],
        ["kexpr", "--expr", "{d}/k3sym.kexpr", "--k", "2"],
        ["pipeline", "--graph", "{d}/k2.txt", "--formula", "{d}/has_edge.msol"],
        ["pipeline", "--graph", "{d}/two.txt", "--formula", "{d}/has_edge.msol", "--json"],
        ["pipeline", "--graph", "{d}/p3.txt", "--formula", "{d}/dominating.msol", "--measure", "3col"],
        ["validate-witness", "--pattern", "{d}/arc.txt", "--host", "{d}/path5.txt",
         "--witness", "{d}/arc_in_path5.wit", "--verbose"],
        # error paths: exit codes are part of the golden record
        ["check", "--graph", "{d}/k4.txt", "--text", "(adj x"],
        ["check", "--graph", "{d}/k4.txt", "--formula", "{d}/3col.msol", "--budget", "5"],
        ["dtm", "--pattern", "{d}/pattern_h.txt", "--host", "{d}/dstar.txt", "--max-nodes", "3"],
        ["contract", "--in", "{d}/path5.txt", "--arc", "1", "0"],
    ]
    return [{"name": f"{i:02d}-{a[0]}", "argv": a} for i, a in enumerate(c)]


def run_case(argv, directory: Path, jobs: int = 1):
    argv = [x.replace("{d}", str(directory)) for x in argv]
    if argv[0] == "color":
        argv += ["--jobs", str(jobs)]
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue().replace(str(directory), "{d}")


def generate(cfg: GoldenConfig) -> int:
    inputs_dir = cfg.root / "inputs"
    expected_dir = cfg.root / "expected"
    inputs_dir.mkdir(parents=True, exist_ok=True)
    expected_dir.mkdir(parents=True, exist_ok=True)
    for name, text in _inputs().items():
        (inputs_dir / name).write_text(text, encoding="utf-8")
    link = Digraph.from_arcs([(0, 4), (4, 1), (2, 5), (5, 3), (4, 5)])
    red = reduce_linkage_to_dtm(LinkageInstance(link, (0, 1, 2, 3)))
    table = cases(red.anchors)
    for case in table:
        code, out = run_case(case["argv"], inputs_dir)
        case["exit"] = code
        (expected_dir / f"{case['name']}.out").write_text(out, encoding="utf-8")
    (cfg.root / "cases.json").write_text(json.dumps(table, indent=1) + "\n", encoding="utf-8")
    return len(table)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--root", type=Path, default=GoldenConfig.root)
    n = generate(GoldenConfig(ap.parse_args().root))
    print(f"wrote {n} golden cases")
