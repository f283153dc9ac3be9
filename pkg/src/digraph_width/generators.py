"""Seeded instance families used by the tests and the experiment scripts."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

from .dtm import LinkageInstance, Operation, Reduction, contract_arc, is_2_contractible, reduce_linkage_to_dtm
from .graphs import Digraph, Edge, Graph, dedup_isomorphic, subdivide_edges
from .measures import alternating_subdivision

# ---------------------------------------------------------------------------
# graphs


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(frozenset(range(n)), frozenset(edges))


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph(frozenset(range(n)), frozenset(arcs))


def random_operations(rng: random.Random, d: Digraph, max_deletions: int = 3,
                      max_contractions: int = 2) -> List[Operation]:
    """A random interleaving of vertex/arc deletions and 2-contractible contractions,
    each valid on the digraph current when it is applied."""
    kinds = ["del"] * rng.randint(0, max_deletions) + ["con"] * rng.randint(0, max_contractions)
    rng.shuffle(kinds)
    ops: List[Operation] = []
    for k in kinds:
        if not d.vertices:
            break
        if k == "con":
            ok = [a for a in sorted(d.arcs) if is_2_contractible(d, a)]
            if not ok:
                continue
            a = rng.choice(ok)
            ops.append(("contract", a))
            d = contract_arc(d, a, max(d.vertices) + 1)
        elif d.arcs and rng.random() < 0.5:
            a = rng.choice(sorted(d.arcs))
            ops.append(("arc", a))
            d = d.without_arc(a)
        else:
            v = rng.choice(sorted(d.vertices))
            ops.append(("vertex", v))
            d = d.without_vertices([v])
    return ops


def _realizations(degrees: List[int]) -> Iterator[frozenset]:
    """Edge sets on 0..n-1 with the given degree sequence."""
    n = len(degrees)
    left = list(degrees)
    edges: List[Edge] = []

    def go(v: int, start: int):
        if v == n:
            yield frozenset(edges)
            return
        if left[v] == 0:
            yield from go(v + 1, v + 2)
            return
        for w in range(max(start, v + 1), n):
            if left[w] > 0:
                left[v] -= 1
                left[w] -= 1
                edges.append((v, w))
                yield from go(v, w + 1)
                edges.pop()
                left[v] += 1
                left[w] += 1

    yield from go(0, 1)


def one_three_regular_graphs(max_n: int) -> List[Graph]:
    """Every {1,3}-regular graph with at most max_n vertices, one per isomorphism class."""
    out: List[Graph] = []
    for n in range(2, max_n + 1, 2):
        out += dedup_isomorphic(
            Graph(frozenset(range(n)), edges)
            for threes in range(n + 1)
            for edges in _realizations([3] * threes + [1] * (n - threes))
        )
    return out


def subdivision_pool(max_base: int = 8, max_vertices: int = 10) -> List[Graph]:
    """{1,3}-regular graphs and all their subdivisions within the vertex cap, up to isomorphism."""
    def every():
        for g in one_three_regular_graphs(max_base):
            yield g
            yield from edge_subdivisions(g, max_vertices)

    return dedup_isomorphic(every())


def edge_subdivisions(g: Graph, max_vertices: int) -> Iterator[Graph]:
    """Every subdivision of g with at most max_vertices vertices (g itself excluded)."""
    edges = sorted(g.edges)
    budget = max_vertices - len(g.vertices)
    for extra in range(1, budget + 1):
        for combo in itertools.combinations_with_replacement(range(len(edges)), extra):
            counts: Dict[Edge, int] = {}
            for i in combo:
                counts[edges[i]] = counts.get(edges[i], 0) + 1
            yield subdivide_edges(g, counts)


def random_subdivision(rng: random.Random, g: Graph, max_extra_per_edge: int = 2) -> Graph:
    counts = {e: rng.randint(0, max_extra_per_edge) for e in sorted(g.edges)}
    return subdivide_edges(g, counts)


# ---------------------------------------------------------------------------
# sentences


SENTENCES: Dict[str, str] = {
    "has_edge": "(exists x (exists y (adj x y)))",
    "no_isolated": "(forall x (exists y (adj x y)))",
    "triangle": "(exists x (exists y (exists z (and (adj x y) (and (adj y z) (adj x z))))))",
    "dominating_vertex": "(exists x (forall y (or (= x y) (adj x y))))",
    "min_degree_2": "(forall x (exists y (exists z (and (not (= y z)) (and (adj x y) (adj x z))))))",
    "twins": "(exists x (exists y (and (not (= x y)) (and (not (adj x y))"
             " (forall z (imp (adj x z) (adj y z)))))))",
    "induced_p3": "(exists x (exists y (exists z (and (adj x y) (and (adj y z)"
                  " (and (not (adj x z)) (not (= x z))))))))",
    "two_colorable": "(existsS X (forall x (forall y (imp (adj x y)"
                     " (or (and (in x X) (not (in y X))) (and (in y X) (not (in x X))))))))",
    "independent_dominating": "(existsS X (and (forall x (forall y (imp (and (in x X) (in y X))"
                              " (not (adj x y))))) (forall x (or (in x X) (exists y (and (in y X) (adj x y)))))))",
    "connected": "(forallS X (imp (and (exists x (in x X)) (exists y (not (in y X))))"
                 " (exists x (exists y (and (in x X) (and (not (in y X)) (adj x y)))))))",
    "closed_nonempty_proper": "(existsS X (and (exists x (in x X)) (and (exists y (not (in y X)))"
                              " (forall x (forall y (imp (and (in x X) (adj x y)) (in y X)))))))",
    "pendant_exists": "(exists x (exists y (and (adj x y) (forall z (imp (adj x z) (= z y))))))",
}


# ---------------------------------------------------------------------------
# 2-linkage instances


@dataclass(frozen=True)
class LinkageCase:
    kind: str  # constructed | random | acyclic
    instance: LinkageInstance
    reduction: Reduction


def _linkage_candidate(rng: random.Random, kind: str) -> LinkageInstance:
    n = rng.choice([4, 5])
    if kind == "constructed":
        order = list(range(n))
        rng.shuffle(order)
        s1, t1, s2, t2 = order[:4]
        arcs = {(s1, t1), (s2, t2)} if n == 4 else {(s1, order[4]), (order[4], t1), (s2, t2)}
        for _ in range(rng.randint(0, 2)):
            a, b = rng.sample(range(n), 2)
            arcs.add((a, b))
        terminals = (s1, t1, s2, t2)
    elif kind == "acyclic":
        order = list(range(n))
        rng.shuffle(order)
        arcs = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35}
        terminals = tuple(rng.sample(range(n), 4))
    else:
        arcs = {(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < 0.25}
        terminals = tuple(rng.sample(range(n), 4))
    d = Digraph.from_arcs(sorted(arcs), vertices=range(n))
    return LinkageInstance(d, terminals)  # type: ignore[arg-type]


def linkage_corpus(seed: int = 7, counts: Tuple[Tuple[str, int], ...] = (
        ("constructed", 25), ("random", 35), ("acyclic", 20)), max_dstar: int = 34) -> List[LinkageCase]:
    """Hosts on 4-5 vertices whose reduced instance D* has at most `max_dstar` vertices."""
    rng = random.Random(seed)
    out = []
    for kind, k in counts:
        for _ in range(k):
            while True:
                inst = _linkage_candidate(rng, kind)
                red = reduce_linkage_to_dtm(inst)
                if len(red.dstar.vertices) <= max_dstar:
                    out.append(LinkageCase(kind, inst, red))
                    break
    return out


# ---------------------------------------------------------------------------
# alternating constructions


def theta_graph(lengths: Tuple[int, ...]) -> Graph:
    """Two hubs 0 and 1 joined by internally disjoint paths with the given numbers of edges."""
    edges = []
    nxt = 2
    for k in lengths:
        chain = [0] + list(range(nxt, nxt + k - 1)) + [1]
        nxt += k - 1
        edges += list(zip(chain, chain[1:]))
    return Graph.from_edges(edges)


def remark_constructions() -> List[Tuple[str, Digraph]]:
    """Alternating subdivisions of small bipartite cubic-ish graphs (delta_dist_alt = 1)."""
    k33 = Graph.from_edges([(a, b) for a in range(3) for b in range(3, 6)])
    cube = Graph.from_edges([(a, b) for a in range(8) for b in range(a + 1, 8)
                             if bin(a ^ b).count("1") == 1])
    k23 = Graph.from_edges([(a, b) for a in range(2) for b in range(2, 5)])
    k24 = Graph.from_edges([(a, b) for a in range(2) for b in range(2, 6)])
    k34 = Graph.from_edges([(a, b) for a in range(3) for b in range(3, 7)])
    out = []
    for name, g, internal in (("k23", k23, 4), ("k23", k23, 6), ("k24", k24, 4), ("k24", k24, 8),
                              ("k33", k33, 12), ("k33", k33, 14), ("cube", cube, 16),
                              ("k34", k34, 14), ("k23", k23, 10), ("k24", k24, 6)):
        out.append((f"{name}-{internal}", alternating_subdivision(g, internal)))
    return out
