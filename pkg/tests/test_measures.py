import itertools
import random
import time

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import digraphs, graphs
from helpers import brute_three_colorable
from digraph_width.dtm import contract_arc, creates_no_new_path, is_2_contractible
from digraph_width.errors import FormatError, GraphError, PreconditionError
from digraph_width.generators import random_digraph, random_graph, remark_constructions
from digraph_width.graphs import Digraph, Graph, all_graphs, is_isomorphic, orientations, underlying
from digraph_width.measures import (
    IDENTITY, AddArcs, ColoringCertificate, Create, GrowthFunction, Relabel, Union, alternating_subdivision,
    brute_force_coloring, decide_3col, decide_3col_route, delta_3col, delta_dist, delta_dist_alt,
    encode_coloring, encodes_3coloring, eval_k_expression, extract_coloring, format_k_expression,
    is_valid_coloring, measure, orient_with, parse_k_expression, symmetric_clique_expression,
)


def D(*arcs, vertices=()):
    return Digraph.from_arcs(arcs, vertices)


def knn(n):
    return D(*[(i, n + j) for i in range(n) for j in range(n)])


def longest_directed_path(d):
    best = 0

    def go(v, seen, k):
        nonlocal best
        best = max(best, k)
        for w in d.out_adj[v]:
            if w not in seen:
                go(w, seen | {w}, k + 1)

    for v in d.vertices:
        go(v, {v}, 0)
    return best


# -- growth functions ----------------------------------------------------------------------


def test_growth_functions():
    assert GrowthFunction("double")(5) == 10
    assert GrowthFunction("pow2")(10) == 1024
    assert GrowthFunction("pow2")(10_000) == GrowthFunction("pow2")(100_000)  # saturates
    assert GrowthFunction.parse("const:3")(100) == 3
    assert str(GrowthFunction.parse("double")) == "double"
    with pytest.raises(FormatError):
        GrowthFunction.parse("cubic")
    with pytest.raises(ValueError):
        IDENTITY(-1)


@given(st.sampled_from(["identity", "double", "pow2", "const:4"]), st.integers(0, 200))
def test_growth_non_decreasing(name, n):
    g = GrowthFunction.parse(name)
    assert g(n) <= g(n + 1)


# -- delta_dist ----------------------------------------------------------------------------


def two_hubs(subdiv):
    # u=0, v=1 joined by a path with `subdiv` internal vertices; two leaves each
    chain = [0] + list(range(10, 10 + subdiv)) + [1]
    arcs = list(zip(chain, chain[1:])) + [(0, 2), (0, 3), (1, 4), (1, 5)]
    return D(*arcs)


def test_delta_dist_cycle():
    assert delta_dist(D((0, 1), (1, 2), (2, 0)), IDENTITY).value == 1


def test_delta_dist_adjacent_hubs():
    r = delta_dist(two_hubs(0), IDENTITY)
    assert r.value == 6
    assert r.evidence_dict()["distance"] == "1" and r.evidence_dict()["threshold"] == "4"


def test_delta_dist_subdivided_hubs():
    assert delta_dist(two_hubs(3), IDENTITY).value == 1
    assert delta_dist(two_hubs(2), IDENTITY).value == len(two_hubs(2).vertices)


def test_delta_dist_orientation_invariant_exhaustive():
    for n in range(1, 5):
        for g in all_graphs(n):
            vals = {delta_dist(o, IDENTITY).value for o in orientations(g)}
            assert len(vals) == 1
            assert delta_dist(orient_with("acyclic", g), IDENTITY).value == min(vals)


@settings(max_examples=80)
@given(digraphs(max_n=6), st.randoms(use_true_random=False))
def test_delta_dist_subdigraph_monotone(d, rnd):
    g = GrowthFunction("const", 2)
    if delta_dist(d, g).value != 1:
        return
    cur = d
    for _ in range(3):
        if rnd.random() < 0.5 and cur.arcs:
            cur = cur.without_arc(rnd.choice(sorted(cur.arcs)))
        elif cur.vertices:
            cur = cur.without_vertices([rnd.choice(sorted(cur.vertices))])
        assert delta_dist(cur, g).value == 1


@given(digraphs(max_n=6))
def test_measures_two_valued(d):
    for name in ("dist", "dist-alt", "3col"):
        assert measure(name, d).value in (1, len(d.vertices))


# -- alternating variant -----------------------------------------------------------------------


def test_alternating_star_pair():
    # K_{1,3}: the centre is the only V3 vertex, so distances are vacuous
    d = alternating_subdivision(Graph.from_edges([(0, 1), (0, 2), (0, 3)]), 2)
    assert delta_dist_alt(d, IDENTITY).value == 1


def test_uniform_two_path_fails_alt():
    d = two_hubs(3)
    assert delta_dist(d, IDENTITY).value == 1
    assert delta_dist_alt(d, IDENTITY).value == len(d.vertices)


def test_alt_vacuous():
    assert delta_dist_alt(D((0, 1), (1, 2)), IDENTITY).value == 1


def test_alternating_subdivision_needs_even_and_bipartite():
    with pytest.raises(PreconditionError):
        alternating_subdivision(Graph.from_edges([(0, 1)]), 3)
    with pytest.raises(PreconditionError):
        alternating_subdivision(Graph.from_edges([(0, 1), (1, 2), (0, 2)]), 2)


def test_remark_constructions_every_contraction_creates_path():
    cases = remark_constructions()
    assert len(cases) >= 10
    for name, d in cases:
        assert delta_dist_alt(d, IDENTITY).value == 1, name
        assert all(not creates_no_new_path(d, a) for a in d.arcs), name


# -- 3-colouring encodings ----------------------------------------------------------------------


def test_knn_encodes():
    assert encodes_3coloring(knn(4)) == (True, None)
    assert delta_3col(knn(4)).value == 1


def test_directed_path_vacuous():
    assert encodes_3coloring(D((0, 1), (1, 2), (2, 3)))[0]


def test_every_k4_orientation_fails():
    k4 = Graph.from_edges(itertools.combinations(range(4), 2))
    for o in orientations(k4):
        ok, bad = encodes_3coloring(o)
        assert not ok and bad is not None
        assert delta_3col(o).value == 4
        assert decide_3col(o) is None


def test_single_arc():
    assert delta_3col(D((0, 1))).value == 1


def test_encode_triangle():
    tri = Graph.from_edges([(0, 1), (1, 2), (0, 2)])
    d = encode_coloring(tri, ColoringCertificate.from_colors({0: 0, 1: 1, 2: 2}))
    assert d.arcs == {(0, 1), (0, 2), (1, 2)}
    assert longest_directed_path(d) == 2


def test_encode_bipartite():
    g = Graph.from_edges([(0, 2), (0, 3), (1, 2)])
    d = encode_coloring(g, ColoringCertificate(frozenset({0, 1}), frozenset(), frozenset({2, 3})))
    assert all(u in (0, 1) for u, _ in d.arcs)


def test_encode_rejects_monochromatic():
    g = Graph.from_edges([(0, 1)])
    with pytest.raises(PreconditionError, match="0-1"):
        encode_coloring(g, ColoringCertificate(frozenset({0, 1}), frozenset(), frozenset()))


def test_extract_on_directed_path():
    d = D((0, 1), (1, 2), (2, 3))
    cert = extract_coloring(d)
    assert is_valid_coloring(underlying(d), cert)


def test_extract_rejects_violation():
    k4 = Graph.from_edges(itertools.combinations(range(4), 2))
    with pytest.raises(PreconditionError):
        extract_coloring(next(iter(orientations(k4))))


def test_v3_sources_to_s1_sinks_to_s3():
    # a V3 vertex has three neighbours, so it is never both a source and a sink
    d = D((1, 0), (2, 0), (3, 0), vertices=[9])
    d = Digraph(d.vertices | {4, 5, 6, 7}, d.arcs | {(4, 5), (4, 6), (4, 7)})
    cert = extract_coloring(d)
    assert 4 in cert.s1 and 0 in cert.s3


def test_roundtrip_small_graphs():
    for n in range(1, 7):
        for g in all_graphs(n):
            cert = brute_force_coloring(g)
            if cert is None:
                continue
            d = encode_coloring(g, cert)
            assert underlying(d) == g
            assert delta_3col(d).value == 1
            assert longest_directed_path(d) <= 2
            assert is_valid_coloring(g, extract_coloring(d))


def test_decide_against_oracle():
    rng = random.Random(6)
    for n in range(1, 6):
        for g in all_graphs(n):
            o = rng.choice(list(itertools.islice(orientations(g), 8)))
            cert = decide_3col(o)
            assert (cert is not None) == brute_three_colorable(g)
            if cert is not None:
                assert is_valid_coloring(g, cert)


def test_c5_needs_search():
    c5 = D((0, 1), (1, 2), (2, 3), (3, 4), (4, 0))
    c5 = Digraph(c5.vertices | {5, 6, 7, 8}, c5.arcs | {(0, 5), (5, 6), (2, 7), (7, 8)})
    # 0 and 2 are V3 and 0 ->+ 2 with 0 not a source and 2 not a sink
    cert, route = decide_3col_route(c5)
    assert route == "search" and is_valid_coloring(underlying(c5), cert)


def test_knn_20_uses_encoded_route_quickly():
    d = knn(20)
    t = time.perf_counter()
    cert, route = decide_3col_route(d)
    assert route == "encoded"
    assert time.perf_counter() - t < 1.0
    assert is_valid_coloring(underlying(d), cert)


@settings(max_examples=40)
@given(digraphs(max_n=6), st.randoms(use_true_random=False))
def test_delta_3col_value_one_survives_deletions(d, rnd):
    if delta_3col(d).value != 1:
        return
    cur = d
    for _ in range(4):
        if cur.arcs and rnd.random() < 0.5:
            cur = cur.without_arc(rnd.choice(sorted(cur.arcs)))
        elif cur.vertices:
            cur = cur.without_vertices([rnd.choice(sorted(cur.vertices))])
        assert delta_3col(cur).value == 1


def test_delta_3col_value_one_lost_by_a_two_contraction():
    # 2 is a V3 source; merging it with 4 inherits the in-arc 0->4, so the
    # merged vertex is neither a source nor a sink and reaches 3 -> 5.
    g = Graph.from_edges([(0, 3), (0, 4), (1, 3), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5)])
    d = encode_coloring(g, brute_force_coloring(g))
    assert d.arcs == {(0, 3), (0, 4), (1, 3), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5)}
    assert delta_3col(d).value == 1
    assert is_2_contractible(d, (2, 4))
    r = contract_arc(d, (2, 4))
    assert delta_3col(r).value == len(r.vertices) == 5


def test_brute_force_jobs_agree():
    g = random_graph(random.Random(1), 9, 0.35)
    assert brute_force_coloring(g, jobs=1) == brute_force_coloring(g, jobs=2)


def test_brute_force_is_lexicographically_least():
    g = Graph.from_edges([(0, 1), (1, 2)])
    assert brute_force_coloring(g).color_of() == {0: 0, 1: 1, 2: 0}


# -- certificates ---------------------------------------------------------------------------------


def test_certificate_text_roundtrip():
    c = ColoringCertificate(frozenset({0, 3}), frozenset({1}), frozenset())
    assert c.to_text() == "S1: 0 3\nS2: 1\nS3:\n"
    assert ColoringCertificate.from_text(c.to_text()) == c


@pytest.mark.parametrize("text", ["S1: 0\nS2: 1\n", "S1: 0\nS1: 1\nS3:\n", "S4: 1\n",
                                  "S1: 0\nS2: 0\nS3:\n", "S1: x\nS2:\nS3:\n"])
def test_certificate_errors(text):
    with pytest.raises(FormatError):
        ColoringCertificate.from_text(text)


# -- orienters ----------------------------------------------------------------------------------


@given(graphs(max_n=7))
def test_acyclic_orienter_underlying(g):
    assert underlying(orient_with("acyclic", g)) == g


def test_greedy_encode():
    c5 = Graph.from_edges([(i, (i + 1) % 5) for i in range(5)])
    d = orient_with("greedy-encode", c5)
    assert underlying(d) == c5 and delta_3col(d).value == 1
    with pytest.raises(PreconditionError):
        orient_with("greedy-encode", Graph.from_edges(itertools.combinations(range(4), 2)))
    with pytest.raises(PreconditionError):
        orient_with("sideways", c5)


# -- k-expressions --------------------------------------------------------------------------------


def test_create_and_union():
    assert len(eval_k_expression(Create(1)).digraph.vertices) == 1
    u = eval_k_expression(Union(Create(1), Create(2)))
    assert len(u.digraph.vertices) == 2 and not u.digraph.arcs
    assert u.labels == {0: 1, 1: 2}


def test_add_arcs_and_relabel():
    e = Relabel(2, 1, AddArcs(1, 2, Union(Create(1), Create(2))))
    out = eval_k_expression(e)
    assert out.digraph.arcs == {(0, 1)} and out.labels == {0: 1, 1: 1}


def test_add_arcs_same_label_error():
    with pytest.raises(GraphError):
        eval_k_expression(AddArcs(1, 1, Create(1)))


def test_label_bound():
    with pytest.raises(GraphError):
        eval_k_expression(Union(Create(1), Create(3)), k=2)


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_clique(n):
    e = symmetric_clique_expression(n)
    d = eval_k_expression(e, k=2).digraph
    sym = D(*[(i, j) for i in range(n) for j in range(n) if i != j], vertices=range(n))
    assert is_isomorphic(d, sym)


def test_k_expression_text_roundtrip():
    e = symmetric_clique_expression(4)
    assert parse_k_expression(format_k_expression(e)) == e
    assert parse_k_expression("; comment\n(union (create 1)\n  (create 2))") == Union(Create(1), Create(2))


@pytest.mark.parametrize("text", ["(frob 1)", "(create x)", "(union (create 1)", "create 1"])
def test_k_expression_parse_errors(text):
    with pytest.raises(FormatError):
        parse_k_expression(text)


def test_k_expression_against_networkx():
    rng = random.Random(3)

    def rand_expr(depth):
        if depth == 0 or rng.random() < 0.2:
            return Create(rng.randint(1, 3))
        kind = rng.choice(["u", "a", "r"])
        if kind == "u":
            return Union(rand_expr(depth - 1), rand_expr(depth - 1))
        i, j = rng.sample(range(1, 4), 2)
        return (AddArcs if kind == "a" else Relabel)(i, j, rand_expr(depth - 1))

    for _ in range(50):
        e = rand_expr(5)
        got = eval_k_expression(e)
        # independent evaluation through networkx graphs with label attributes
        def ev(x):
            if isinstance(x, Create):
                h = nx.DiGraph()
                h.add_node(0, lab=x.label)
                return h
            if isinstance(x, Union):
                a, b = ev(x.left), ev(x.right)
                return nx.disjoint_union(a, b)
            h = ev(x.e)
            if isinstance(x, AddArcs):
                src = [v for v, lab in h.nodes(data="lab") if lab == x.i]
                dst = [v for v, lab in h.nodes(data="lab") if lab == x.j]
                h.add_edges_from((u, v) for u in src for v in dst)
            else:
                for v in h.nodes:
                    if h.nodes[v]["lab"] == x.i:
                        h.nodes[v]["lab"] = x.j
            return h

        ref = ev(e)
        assert set(ref.edges) == set(got.digraph.arcs)
        assert dict(ref.nodes(data="lab")) == got.labels
