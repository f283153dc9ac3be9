import json
import random

import pytest

from helpers import random_sentence
from digraph_width.errors import PreconditionError, VocabularyError
from digraph_width.generators import SENTENCES, random_subdivision
from digraph_width.graphs import Graph, all_graphs, orient_acyclic, subdivide
from digraph_width.interp import I1, I2, I3, STACK, theorem41, transform_formula, transform_through
from digraph_width.mso import adj_to_arc, model_check, parse_formula
from digraph_width.pipeline import PipelineReport, hybrid_check, interpret_through, thm65_reduction

K2 = Graph.from_edges([(0, 1)])
TWO = Graph.from_edges([], vertices=[0, 1])
HAS_EDGE = parse_formula(SENTENCES["has_edge"], sentence=True)


def sentence(name):
    return parse_formula(SENTENCES[name], sentence=True)


def test_interpret_through_order():
    h = Graph.from_edges([(0, 1), (1, 2)])
    res = theorem41(h, HAS_EDGE)
    assert interpret_through(STACK, subdivide(res.graph, 1)) == h
    assert interpret_through((), h) == h


@pytest.mark.parametrize("name", sorted(SENTENCES))
def test_hybrid_equals_naive_on_i3(name):
    chi = sentence(name)
    psi = transform_formula(I3, chi)
    for g in (subdivide(Graph.from_edges([(0, 1), (0, 2), (0, 3)]), 1),
              Graph.from_edges([(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (1, 6)])):
        assert len(g.vertices) <= 10
        assert hybrid_check(g, psi, (I3,), chi) == model_check(g, psi)


def test_empty_stack_is_plain_check():
    g = Graph.from_edges([(0, 1), (1, 2), (0, 2)])
    for name in SENTENCES:
        chi = sentence(name)
        assert hybrid_check(g, chi, (), chi) == model_check(g, chi)


def test_mismatched_stack():
    psi = transform_formula(I3, HAS_EDGE)
    with pytest.raises(PreconditionError):
        hybrid_check(K2, psi, (I2,), HAS_EDGE)
    with pytest.raises(PreconditionError):
        hybrid_check(K2, psi, (I3,), sentence("no_isolated"))


def test_hybrid_rejects_free_variables():
    f = parse_formula("(adj x y)")
    with pytest.raises(PreconditionError):
        hybrid_check(K2, f, (), f)


def test_digraph_model_needs_arc_form():
    psi = transform_through(STACK, HAS_EDGE)
    res = theorem41(K2, HAS_EDGE)
    d = orient_acyclic(subdivide(res.graph, 1))
    with pytest.raises(VocabularyError):
        hybrid_check(d, psi, STACK, HAS_EDGE)
    assert hybrid_check(d, adj_to_arc(psi), STACK, HAS_EDGE) is True


def test_pipeline_k2():
    r = thm65_reduction(K2, HAS_EDGE)
    assert r.verdict_h and r.verdict_d1 and r.agreement


def test_pipeline_two_isolated():
    r = thm65_reduction(TWO, HAS_EDGE)
    assert not r.verdict_h and not r.verdict_d1 and r.agreement


def test_pipeline_rejects_arc_and_free():
    with pytest.raises(VocabularyError):
        thm65_reduction(K2, parse_formula("(exists x (exists y (arc x y)))", sentence=True))
    with pytest.raises(PreconditionError):
        thm65_reduction(K2, parse_formula("(adj x y)"))


def test_report_is_reproducible():
    a = thm65_reduction(K2, sentence("triangle"), measure_name="3col")
    b = thm65_reduction(K2, sentence("triangle"), measure_name="3col")
    assert a.to_text() == b.to_text()
    assert a.to_json() == b.to_json()
    assert json.loads(a.to_json()) == {k: v for k, v in a.items()}
    assert "time_check_d1" in a.to_text(with_timing=True)
    assert a.to_text().splitlines()[-1] == "agreement: true"


def test_report_agreement_flag():
    r = PipelineReport("g", "f", 1, 0, 1, 1, 0, 1, 1, 0, 1, "dist", "acyclic", "identity", 1, True, False)
    assert r.agreement is False


def test_pipeline_matrix_small():
    for n in (1, 2):
        for h in all_graphs(n):
            for name in ("has_edge", "no_isolated", "two_colorable"):
                assert thm65_reduction(h, sentence(name)).agreement


def test_pipeline_d1_sizes():
    r = thm65_reduction(K2, HAS_EDGE)
    assert r.g1_vertices == r.g_vertices + r.g_edges
    assert r.d1_arcs == 2 * r.g_edges


def test_sizes_linear_in_formula():
    rng = random.Random(4)
    ratios = []
    for size in (5, 10, 20, 40, 80):
        chi = random_sentence(rng, size)
        ratios.append(thm65_reduction(TWO, chi).psi_size / size)
    c = I1.size_constant * I2.size_constant * I3.size_constant
    assert max(ratios) <= c


def test_subdivision_invariance():
    rng = random.Random(7)
    for h in (K2, Graph.from_edges([(0, 1), (1, 2)]), TWO):
        for name in ("has_edge", "dominating_vertex", "connected"):
            chi = sentence(name)
            res = theorem41(h, chi)
            assert len(res.graph.vertices) <= 80
            base = hybrid_check(res.graph, res.psi, STACK, chi)
            for _ in range(3):
                g1 = random_subdivision(rng, res.graph, 2)
                assert hybrid_check(g1, res.psi, STACK, chi) == base == model_check(h, chi)
