"""Command-line interface.

Exit codes: 0 when the computation finished (whatever the boolean answer),
2 for usage, parse and precondition errors, 3 when a resource budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .dtm import (
    DEFAULT_NODE_BUDGET, LinkageInstance, MinorWitness, contract_arc, is_2_contractible, is_dtm,
    reduce_linkage_to_dtm, solve_2_linkage, validate_witness,
)
from .errors import (
    BudgetExceeded, FormatError, GraphError, PreconditionError, UnboundVariableError, VocabularyError,
)
from .graphio import format_graph, format_provenance, parse_graph_text
from .graphs import Digraph, Graph, subdivide, subdivide_digraph
from .interp import INTERPRETATIONS, interpret_model, planarize, regularize
from .measures import (
    ColoringCertificate, GrowthFunction, brute_force_coloring, decide_3col_route, encode_coloring,
    eval_k_expression, measure, parse_k_expression,
)
from .mso import (
    DEFAULT_SET_BUDGET, adj_to_arc, count_set_quantifiers, formula_digest, formula_size, free_vars,
    model_check, parse_formula, serialize_formula, vocabulary,
)
from .pipeline import thm65_reduction

EXIT_OK, EXIT_USAGE, EXIT_BUDGET = 0, 2, 3


class _Out:
    """Result of one subcommand: ordered key/value pairs plus an optional text body.

    Text mode prints the body if there is one, otherwise `key: value` lines
    (a lone `result` prints bare).  JSON mode prints every pair and the body."""

    def __init__(self, pairs: Sequence[Tuple[str, object]] = (), body: Optional[str] = None):
        self.pairs = list(pairs)
        self.body = body

    def render(self, as_json: bool) -> str:
        if as_json:
            data = dict(self.pairs)
            if self.body is not None:
                data["body"] = self.body
            return json.dumps(data, sort_keys=True) + "\n"
        if self.body is not None:
            return self.body
        if len(self.pairs) == 1 and self.pairs[0][0] == "result":
            return _fmt(self.pairs[0][1]) + "\n"
        return "".join(f"{k}: {_fmt(v)}\n" for k, v in self.pairs)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return str(v)


class _Budget(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(path: str):
    return parse_graph_text(_read(path))


def _want_graph(path: str) -> Graph:
    g = _graph(path)
    if not isinstance(g, Graph):
        raise FormatError(f"{path}: expected an undirected graph")
    return g


def _want_digraph(path: str) -> Digraph:
    d = _graph(path)
    if not isinstance(d, Digraph):
        raise FormatError(f"{path}: expected a digraph")
    return d


def _formula(args, sentence: bool = False):
    if getattr(args, "text", None) is not None:
        return parse_formula(args.text, sentence=sentence)
    if getattr(args, "formula", None) is None:
        raise FormatError("give --formula FILE or --text FORMULA")
    return parse_formula(_read(args.formula), sentence=sentence)


def _assignment(items: Sequence[str]) -> Dict[str, object]:
    env: Dict[str, object] = {}
    for item in items or ():
        name, eq, val = item.partition("=")
        if not eq:
            raise FormatError(f"assignment {item!r} must look like x=3 or X=1,2")
        try:
            if name[:1].isupper():
                env[name] = frozenset(int(t) for t in val.split(",") if t)
            else:
                env[name] = int(val)
        except ValueError:
            raise FormatError(f"bad value in assignment {item!r}") from None
    return env


def _write_or_body(args, text: str, pairs=()) -> _Out:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return _Out(list(pairs) + [("written", args.out)])
    return _Out(pairs, text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse_formula(args) -> _Out:
    f = _formula(args, sentence=args.sentence)
    return _Out([
        ("formula", serialize_formula(f)), ("size", formula_size(f)),
        ("set_quantifiers", count_set_quantifiers(f)), ("free", sorted(free_vars(f))),
        ("vocabulary", vocabulary(f) or "none"), ("digest", formula_digest(f)),
    ])


def cmd_check(args) -> _Out:
    model = _graph(args.graph)
    f = _formula(args)
    return _Out([("result", model_check(model, f, _assignment(args.assign), budget=args.budget))])


def cmd_planarize(args) -> _Out:
    c = planarize(_want_graph(args.input))
    return _write_or_body(args, format_graph(c.graph, format_provenance(c.provenance)))


def cmd_regularize(args) -> _Out:
    c = regularize(_want_graph(args.input))
    return _write_or_body(args, format_graph(c.graph, format_provenance(c.provenance)))


def cmd_subdivide(args) -> _Out:
    g = _graph(args.input)
    if args.times < 0:
        raise PreconditionError("--times must be nonnegative")
    out = subdivide_digraph(g, args.times) if isinstance(g, Digraph) else subdivide(g, args.times)
    return _write_or_body(args, format_graph(out))


def cmd_interpret(args) -> _Out:
    g = _want_graph(args.input)
    return _write_or_body(args, format_graph(interpret_model(INTERPRETATIONS[args.which], g)))


def cmd_adj2arc(args) -> _Out:
    f = _formula(args)
    return _Out([("result", serialize_formula(adj_to_arc(f)))])


def _arc(args) -> Tuple[int, int]:
    return (args.arc[0], args.arc[1])


def cmd_contract(args) -> _Out:
    d = _want_digraph(args.input)
    return _write_or_body(args, format_graph(contract_arc(d, _arc(args), args.new_vertex)))


def cmd_contractible(args) -> _Out:
    d = _want_digraph(args.input)
    return _Out([("result", is_2_contractible(d, _arc(args)))])


def _anchors(items) -> Dict[int, int]:
    out = {}
    for item in items or ():
        p, eq, x = item.partition("=")
        if not eq:
            raise FormatError(f"anchor {item!r} must look like p=x")
        try:
            out[int(p)] = int(x)
        except ValueError:
            raise FormatError(f"bad anchor {item!r}") from None
    return out


def cmd_dtm(args) -> _Out:
    h, d = _want_digraph(args.pattern), _want_digraph(args.host)
    res = is_dtm(h, d, _anchors(args.anchor), budget=args.max_nodes)
    if res.status == "budget":
        raise _Budget(f"search budget of {args.max_nodes} nodes exhausted")
    pairs: List[Tuple[str, object]] = [("result", res.found)]
    if res.witness is not None and args.witness_out:
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(res.witness.to_text())
    if args.json:
        pairs += [("nodes", res.nodes)]
        if res.witness is not None:
            pairs += [("witness", res.witness.to_text())]
    return _Out(pairs)


def _terminals(args) -> Tuple[int, int, int, int]:
    return tuple(args.terminals)  # type: ignore[return-value]


def cmd_linkage(args) -> _Out:
    inst = LinkageInstance(_want_digraph(args.input), _terminals(args))
    sol = solve_2_linkage(inst)
    pairs: List[Tuple[str, object]] = [("result", sol is not None)]
    if sol is not None:
        pairs += [("path1", list(sol[0])), ("path2", list(sol[1]))]
    return _Out(pairs)


def cmd_reduce_linkage(args) -> _Out:
    red = reduce_linkage_to_dtm(LinkageInstance(_want_digraph(args.input), _terminals(args)))
    comments = [f"anchor {p} {x}" for p, x in sorted(red.anchors.items())]
    comments.append("terminals " + " ".join(map(str, red.terminals)))
    if args.pattern_out:
        with open(args.pattern_out, "w", encoding="utf-8") as fh:
            fh.write(format_graph(red.pattern))
    return _write_or_body(args, format_graph(red.dstar, comments))


def cmd_measure(args) -> _Out:
    d = _want_digraph(args.input)
    res = measure(args.which, d, GrowthFunction.parse(args.g))
    pairs: List[Tuple[str, object]] = [("result", res.value)]
    if args.json or args.verbose:
        pairs += [("measure", res.measure), ("growth", args.g)] + list(res.evidence)
    return _Out(pairs)


def cmd_color(args) -> _Out:
    g = _graph(args.input)
    if isinstance(g, Digraph):
        cert, route = decide_3col_route(g, args.jobs)
    else:
        cert, route = brute_force_coloring(g, args.jobs), "search"
    pairs: List[Tuple[str, object]] = [("result", cert is not None)]
    if args.json:
        pairs.append(("route", route))
        if cert is not None:
            pairs.append(("coloring", cert.to_text()))
        return _Out(pairs)
    return _Out(pairs, "true\n" + cert.to_text() if cert is not None else "false\n")


def cmd_encode_coloring(args) -> _Out:
    g = _want_graph(args.graph)
    cert = ColoringCertificate.from_text(_read(args.coloring))
    return _write_or_body(args, format_graph(encode_coloring(g, cert)))


def cmd_kexpr(args) -> _Out:
    text = args.text if args.text is not None else _read(args.expr)
    res = eval_k_expression(parse_k_expression(text), args.k)
    comments = [f"label {v} {lab}" for v, lab in sorted(res.labels.items())]
    return _write_or_body(args, format_graph(res.digraph, comments))


def cmd_pipeline(args) -> _Out:
    h = _want_graph(args.graph)
    phi = _formula(args, sentence=True)
    rep = thm65_reduction(h, phi, args.measure, args.orienter, GrowthFunction.parse(args.g),
                          budget=args.budget)
    return _Out(rep.items(with_timing=args.timing))


def cmd_validate_witness(args) -> _Out:
    h, d = _want_digraph(args.pattern), _want_digraph(args.host)
    w = MinorWitness.from_text(_read(args.witness))
    ok, why = validate_witness(h, d, w)
    return _Out([("result", ok), ("reason", why)] if (args.json or args.verbose) else [("result", ok)])


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--g", default="identity", help="growth function: identity|double|pow2|const:<c>")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for brute-force colouring")
    common.add_argument("--budget", type=int, default=DEFAULT_SET_BUDGET,
                        help=f"max set enumerations in model checking (default {DEFAULT_SET_BUDGET})")
    common.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_BUDGET,
                        help=f"max search nodes for minor testing (default {DEFAULT_NODE_BUDGET})")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")
    common.add_argument("--verbose", action="store_true", help="print evidence along with results")

    p = argparse.ArgumentParser(prog="digraph-width", description="Digraph width measure toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    def formula_args(sp):
        sp.add_argument("--formula", help="formula file")
        sp.add_argument("--text", help="formula given inline")

    sp = add("parse-formula", cmd_parse_formula, "parse and normalize a formula")
    formula_args(sp)
    sp.add_argument("--sentence", action="store_true", help="reject free variables")

    sp = add("check", cmd_check, "model-check a formula on a graph or digraph")
    sp.add_argument("--graph", required=True)
    formula_args(sp)
    sp.add_argument("--assign", nargs="*", help="free variable values, e.g. x=3 X=1,2")

    for name, fn, what in (("planarize", cmd_planarize, "replace crossings by gadgets"),
                           ("regularize", cmd_regularize, "build the {1,3}-regular graph")):
        sp = add(name, fn, what)
        sp.add_argument("--in", dest="input", required=True)
        sp.add_argument("--out")

    sp = add("subdivide", cmd_subdivide, "subdivide every edge or arc")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--times", type=int, default=1)
    sp.add_argument("--out")

    sp = add("interpret", cmd_interpret, "apply an interpretation to a graph")
    sp.add_argument("--which", choices=sorted(INTERPRETATIONS), required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out")

    sp = add("adj2arc", cmd_adj2arc, "rewrite adj atoms as arc disjunctions")
    formula_args(sp)

    sp = add("contract", cmd_contract, "contract one arc")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--arc", type=int, nargs=2, required=True, metavar=("U", "V"))
    sp.add_argument("--new-vertex", type=int)
    sp.add_argument("--out")

    sp = add("contractible", cmd_contractible, "test 2-contractibility of an arc")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--arc", type=int, nargs=2, required=True, metavar=("U", "V"))

    sp = add("dtm", cmd_dtm, "decide whether a pattern is a directed topological minor")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--anchor", nargs="*", help="pattern=host vertex pins")
    sp.add_argument("--witness-out")

    for name, fn, what in (("linkage", cmd_linkage, "solve a 2-linkage instance"),
                           ("reduce-linkage", cmd_reduce_linkage, "build the minor instance D*")):
        sp = add(name, fn, what)
        sp.add_argument("--in", dest="input", required=True)
        sp.add_argument("--terminals", type=int, nargs=4, required=True, metavar=("S1", "T1", "S2", "T2"))
        if name == "reduce-linkage":
            sp.add_argument("--out")
            sp.add_argument("--pattern-out")

    sp = add("measure", cmd_measure, "evaluate a width measure")
    sp.add_argument("--which", choices=["dist", "dist-alt", "3col"], required=True)
    sp.add_argument("--in", dest="input", required=True)

    sp = add("color", cmd_color, "find a 3-colouring (fast path for encoding orientations)")
    sp.add_argument("--in", dest="input", required=True)

    sp = add("encode-coloring", cmd_encode_coloring, "orient a graph by a 3-colouring")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--out")

    sp = add("kexpr", cmd_kexpr, "evaluate a k-expression")
    sp.add_argument("--expr")
    sp.add_argument("--text")
    sp.add_argument("--k", type=int)
    sp.add_argument("--out")

    sp = add("pipeline", cmd_pipeline, "run the full reduction and report")
    sp.add_argument("--graph", required=True)
    formula_args(sp)
    sp.add_argument("--measure", choices=["dist", "dist-alt", "3col"], default="dist")
    sp.add_argument("--orienter", choices=["acyclic", "greedy-encode"], default="acyclic")

    sp = add("validate-witness", cmd_validate_witness, "replay a minor witness")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--witness", required=True)
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        out = args.func(args)
    except (BudgetExceeded, _Budget) as e:
        print(f"error: budget exhausted: {e}", file=stderr)
        return EXIT_BUDGET
    except (FormatError, VocabularyError, UnboundVariableError, GraphError, PreconditionError,
            OSError, KeyError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    stdout.write(out.render(args.json))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
