"""Acceptance suite: one test per criterion, each at its stated scale and tolerance.

Run alone with `pytest tests/test_acceptance.py -v`; the slowest criterion
(transformer soundness over the subdivision pool) takes around six minutes.
"""

import itertools
import json
import random
import sys
import time
from pathlib import Path

from helpers import brute_three_colorable, random_formula
from digraph_width.dtm import (
    apply_operations, contract_arc, contract_two_path, creates_no_new_path, deletions_first,
    is_2_contractible, is_dtm, solve_2_linkage, validate_witness, witness_from_linkage, LinkageInstance,
)
from digraph_width.generators import (
    SENTENCES, linkage_corpus, random_digraph, random_graph, random_operations, random_subdivision,
    remark_constructions, subdivision_pool,
)
from digraph_width.graphs import (
    Digraph, Graph, all_graphs, all_labeled_digraphs, has_directed_cycle, is_directed_path,
    is_isomorphic, orientations, two_paths, underlying,
)
from digraph_width.interp import (
    I1, I2, I3, STACK, interpret_model, planarize, regularize, theorem41, transform_formula,
)
from digraph_width.interp import evaluators as E
from digraph_width.interp import formulas as F
from digraph_width.measures import (
    IDENTITY, brute_force_coloring, decide_3col, decide_3col_route, delta_3col, delta_dist,
    delta_dist_alt, encode_coloring, extract_coloring, is_valid_coloring,
)
from digraph_width.mso import count_set_quantifiers, formula_size, model_check, parse_formula
from digraph_width.pipeline import hybrid_check, thm65_reduction

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "scripts"))
from make_golden import run_case  # noqa: E402


def corpus():
    out = {name: parse_formula(text, sentence=True) for name, text in SENTENCES.items()}
    assert len(out) >= 10 and all(count_set_quantifiers(f) <= 1 for f in out.values())
    return out


def test_criterion_1_evaluators_match_formulas_on_all_graphs_up_to_5():
    t0 = time.perf_counter()
    unary = ["alpha1", "alpha2", "alpha3", "deg1", "deg2", "has_pendant"]
    binary = ["beta1", "beta2", "beta3"]
    on_sets = ["crgadg", "cycle", "rho"]
    ternary = ["con", "mcon"]
    forms = {n: getattr(F, n)("x") for n in unary}
    forms.update({n: getattr(F, n)("x", "y") for n in binary})
    forms.update({n: getattr(F, n)("X") for n in on_sets})
    forms.update({n: getattr(F, n)("x", "y", "X") for n in ternary})
    checked, bad = 0, []
    for n in range(1, 6):
        for g in all_graphs(n):
            vs = sorted(g.vertices)
            for v in vs:
                for name in unary:
                    checked += 1
                    if getattr(E, name)(g, v) != model_check(g, forms[name], {"x": v}):
                        bad.append((name, g, v))
            for u, v in itertools.product(vs, repeat=2):
                for name in binary:
                    checked += 1
                    if getattr(E, name)(g, u, v) != model_check(g, forms[name], {"x": u, "y": v}):
                        bad.append((name, g, u, v))
            for k in range(n + 1):
                for X in map(frozenset, itertools.combinations(vs, k)):
                    for name in on_sets:
                        checked += 1
                        if getattr(E, name)(g, X) != model_check(g, forms[name], {"X": X}):
                            bad.append((name, g, X))
                    for u, v in itertools.product(vs, repeat=2):
                        for name in ternary:
                            checked += 1
                            env = {"x": u, "y": v, "X": X}
                            if getattr(E, name)(g, u, v, X) != model_check(g, forms[name], env):
                                bad.append((name, g, u, v, X))
    assert not bad, bad[:5]
    assert checked > 60_000
    assert time.perf_counter() - t0 < 600


def test_criterion_2_roundtrip_isomorphism():
    failures = []
    hosts = [h for n in range(0, 5) for h in all_graphs(n)]
    rng = random.Random(2024)
    hosts += [random_graph(rng, rng.choice([5, 6]), 0.5) for _ in range(200)]
    for h in hosts:
        if not is_isomorphic(interpret_model(I1, planarize(h).graph), h):
            failures.append(("I1", h))
        if not is_isomorphic(interpret_model(I2, regularize(h).graph), h):
            failures.append(("I2", h))
    assert len(hosts) >= 200 + 11 and not failures, failures[:3]


def test_criterion_3_transformer_soundness_and_linear_size():
    pool = subdivision_pool(max_base=8, max_vertices=10)
    assert len(pool) > 1000
    disagreements = []
    for name, chi in corpus().items():
        psi = transform_formula(I3, chi)
        for g in pool:
            if model_check(g, psi) != model_check(interpret_model(I3, g), chi):
                disagreements.append((name, g))
    assert not disagreements, disagreements[:3]
    rng = random.Random(31)
    for size in range(5, 101):
        chi = random_formula(rng, size)
        for interp in STACK:
            assert formula_size(transform_formula(interp, chi)) <= interp.size_constant * size


def test_criterion_4_pipeline_matrix_with_subdivision_invariance():
    t0 = time.perf_counter()
    rng = random.Random(65)
    sentences = corpus()
    runs = 0
    for n in range(1, 4):
        for h in all_graphs(n):
            for name, phi in sentences.items():
                rep = thm65_reduction(h, phi)
                assert rep.agreement, (h, name)
                res = theorem41(h, phi)
                g1 = random_subdivision(rng, res.graph, 2)
                assert hybrid_check(g1, res.psi, STACK, phi) == rep.verdict_h, (h, name)
                runs += 1
    assert runs >= 7 * 5
    assert time.perf_counter() - t0 < 300


def test_criterion_5_dtm_engine():
    rng = random.Random(53)
    for _ in range(500):
        d = random_digraph(rng, rng.randint(1, 5), rng.random())
        ops = random_operations(rng, d)
        assert is_isomorphic(apply_operations(d, ops)[0], deletions_first(d, ops)), (d, ops)
    done = 0
    while done < 200:
        d = random_digraph(rng, rng.randint(4, 8), rng.uniform(0.1, 0.4))
        paths = [p for p in two_paths(d) if 3 <= len(p) - 1 <= 6]
        if not paths:
            continue
        p = rng.choice(paths)
        directed = is_directed_path(d, p) or is_directed_path(d, p[::-1])
        _, steps, q = contract_two_path(d, p)
        assert len(q) - 1 == (1 if directed else 2)
        cur = d
        for s in steps:
            assert is_2_contractible(cur, s.arc)
            cur = contract_arc(cur, s.arc, s.new_vertex)
        done += 1
    for n in range(2, 5):
        for d in all_labeled_digraphs(n):
            for a in d.arcs:
                r = contract_arc(d, a)
                assert all(u != v for u, v in r.arcs)
                if d.has_arc(a[1], a[0]):
                    assert is_isomorphic(r, contract_arc(d, (a[1], a[0])))


def test_criterion_6_reduction_correctness():
    cases = linkage_corpus()
    assert len(cases) >= 50
    verdicts = set()
    acyclic_hosts = 0
    for case in cases:
        inst, red = case.instance, case.reduction
        assert len(inst.digraph.vertices) <= 5
        expected = solve_2_linkage(inst) is not None
        verdicts.add(expected)
        res = is_dtm(red.pattern, red.dstar, anchors=red.anchors)
        assert res.status != "budget"
        assert res.found == expected, case
        if expected:
            assert validate_witness(red.pattern, red.dstar, res.witness) == (True, "ok")
            sol = solve_2_linkage(LinkageInstance(red.dstar, red.terminals))
            w = witness_from_linkage(red, *sol)
            assert validate_witness(red.pattern, red.dstar, w) == (True, "ok")
        if not has_directed_cycle(inst.digraph):
            acyclic_hosts += 1
            assert not has_directed_cycle(red.dstar)
    assert verdicts == {True, False}
    assert acyclic_hosts >= 20


def test_criterion_7_measures():
    for n in range(1, 8):
        for g in all_graphs(n):
            cert = brute_force_coloring(g)
            assert (cert is not None) == brute_three_colorable(g)
            if cert is None:
                continue
            d = encode_coloring(g, cert)
            assert delta_3col(d).value == 1
            assert is_valid_coloring(g, extract_coloring(d))
    rng = random.Random(7)
    steps = 0
    while steps < 1000:
        g = random_graph(rng, rng.randint(3, 6), 0.5)
        cert = brute_force_coloring(g)
        if cert is None:
            continue
        d = encode_coloring(g, cert)
        for _ in range(5):
            ok = [a for a in sorted(d.arcs) if is_2_contractible(d, a)]
            r = rng.random()
            if ok and r < 0.4:
                d = contract_arc(d, rng.choice(ok))
            elif d.arcs and r < 0.7:
                d = d.without_arc(rng.choice(sorted(d.arcs)))
            elif d.vertices:
                d = d.without_vertices([rng.choice(sorted(d.vertices))])
            assert delta_3col(d).value == 1
            steps += 1
    for n in range(1, 5):
        for g in all_graphs(n):
            assert len({delta_dist(o, IDENTITY).value for o in orientations(g)}) == 1
    for n in range(1, 7):
        for g in all_graphs(n):
            arcs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in sorted(g.edges)]
            d = Digraph(g.vertices, frozenset(arcs))
            cert = decide_3col(d)
            assert (cert is not None) == brute_three_colorable(g)
            if cert is not None:
                assert is_valid_coloring(g, cert)
    k2020 = Digraph.from_arcs([(i, 20 + j) for i in range(20) for j in range(20)])
    t0 = time.perf_counter()
    cert, route = decide_3col_route(k2020)
    assert route == "encoded" and time.perf_counter() - t0 < 1.0
    assert is_valid_coloring(underlying(k2020), cert)


def test_criterion_8_remark_constructions():
    cases = remark_constructions()
    assert len(cases) >= 10
    for name, d in cases:
        assert delta_dist_alt(d, IDENTITY).value == 1, name
        for a in sorted(d.arcs):
            assert not creates_no_new_path(d, a), (name, a)


def test_criterion_9_golden_determinism():
    cases = json.loads((GOLDEN / "cases.json").read_text())
    assert len(cases) >= 18
    assert {c["argv"][0] for c in cases} >= {
        "parse-formula", "check", "planarize", "regularize", "subdivide", "interpret", "adj2arc", "contract",
        "contractible", "dtm", "linkage", "reduce-linkage", "measure", "color", "encode-coloring", "kexpr",
        "pipeline", "validate-witness"}
    for case in cases:
        expected = (case["exit"], (GOLDEN / "expected" / f"{case['name']}.out").read_text())
        runs = [run_case(case["argv"], GOLDEN / "inputs", jobs=j) for j in (1, 1, 2, 2)]
        assert all(r == expected for r in runs), case["name"]
