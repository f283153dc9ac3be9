"""Simple loop-free graphs and digraphs with integer vertex ids.

Both types are immutable; derived structure (adjacency maps) is computed
lazily and cached on the instance.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import GraphError

INFINITY = math.inf

Edge = Tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: FrozenSet[int]
    edges: FrozenSet[Edge]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        edges = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {{{u},{v}}} has an endpoint outside the vertex set")
            edges.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(edges))
        for x in self.vertices:
            if not isinstance(x, int) or x < 0:
                raise GraphError(f"vertex ids must be nonnegative integers, got {x!r}")

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], vertices: Iterable[int] = ()) -> "Graph":
        edges = list(edges)
        vs = set(vertices)
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(frozenset(vs), frozenset(edges))

    @cached_property
    def adj(self) -> Dict[int, FrozenSet[int]]:
        nb: Dict[int, set] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    def neighbors(self, v: int) -> FrozenSet[int]:
        self._check(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def _check(self, v: int) -> None:
        if v not in self.vertices:
            raise GraphError(f"unknown vertex {v}")

    def sorted_vertices(self) -> List[int]:
        return sorted(self.vertices)

    def fresh_ids(self, count: int) -> List[int]:
        start = max(self.vertices, default=-1) + 1
        return list(range(start, start + count))

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = frozenset(keep)
        return Graph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Digraph:
    vertices: FrozenSet[int]
    arcs: FrozenSet[Edge]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "arcs", frozenset((u, v) for u, v in self.arcs))
        for u, v in self.arcs:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"arc ({u},{v}) has an endpoint outside the vertex set")
        for x in self.vertices:
            if not isinstance(x, int) or x < 0:
                raise GraphError(f"vertex ids must be nonnegative integers, got {x!r}")

    @classmethod
    def from_arcs(cls, arcs: Iterable[Edge], vertices: Iterable[int] = ()) -> "Digraph":
        arcs = list(arcs)
        vs = set(vertices)
        for u, v in arcs:
            vs.add(u)
            vs.add(v)
        return cls(frozenset(vs), frozenset(arcs))

    @cached_property
    def out_adj(self) -> Dict[int, FrozenSet[int]]:
        out: Dict[int, set] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            out[u].add(v)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def in_adj(self) -> Dict[int, FrozenSet[int]]:
        inn: Dict[int, set] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            inn[v].add(u)
        return {v: frozenset(s) for v, s in inn.items()}

    @cached_property
    def nbr(self) -> Dict[int, FrozenSet[int]]:
        return {v: self.out_adj[v] | self.in_adj[v] for v in self.vertices}

    def _check(self, v: int) -> None:
        if v not in self.vertices:
            raise GraphError(f"unknown vertex {v}")

    def out_neighbors(self, v: int) -> FrozenSet[int]:
        self._check(v)
        return self.out_adj[v]

    def in_neighbors(self, v: int) -> FrozenSet[int]:
        self._check(v)
        return self.in_adj[v]

    def neighbors(self, v: int) -> FrozenSet[int]:
        self._check(v)
        return self.nbr[v]

    def degree(self, v: int) -> int:
        """Number of distinct neighbors in the underlying graph."""
        return len(self.neighbors(v))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def is_source(self, v: int) -> bool:
        return not self.in_neighbors(v)

    def is_sink(self, v: int) -> bool:
        return not self.out_neighbors(v)

    def sorted_vertices(self) -> List[int]:
        return sorted(self.vertices)

    def fresh_ids(self, count: int) -> List[int]:
        start = max(self.vertices, default=-1) + 1
        return list(range(start, start + count))

    def induced(self, keep: Iterable[int]) -> "Digraph":
        keep = frozenset(keep)
        return Digraph(keep, frozenset(a for a in self.arcs if a[0] in keep and a[1] in keep))

    def without_arc(self, a: Edge) -> "Digraph":
        return Digraph(self.vertices, self.arcs - {a})

    def without_vertices(self, drop: Iterable[int]) -> "Digraph":
        return self.induced(self.vertices - frozenset(drop))

    def __len__(self) -> int:
        return len(self.vertices)


AnyGraph = "Graph | Digraph"


# ---------------------------------------------------------------------------
# structural primitives


def underlying(d: Digraph) -> Graph:
    return Graph(d.vertices, frozenset(_norm(u, v) for u, v in d.arcs))


def v3(d: Digraph) -> FrozenSet[int]:
    """Vertices with at least three distinct neighbors in the underlying graph."""
    return frozenset(v for v in d.vertices if len(d.nbr[v]) >= 3)


def reachable_from(d: Digraph, u: int) -> FrozenSet[int]:
    """All v with u ->* v (u itself included)."""
    d._check(u)
    seen = {u}
    stack = [u]
    out = d.out_adj
    while stack:
        x = stack.pop()
        for y in out[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def reaches(d: Digraph, u: int, v: int) -> bool:
    d._check(v)
    return v in reachable_from(d, u)


def bfs_distances(g: Graph, source: int) -> Dict[int, int]:
    g._check(source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def dist(g: Graph, u: int, v: int):
    """Shortest-path edge count, or INFINITY when u and v are disconnected."""
    g._check(v)
    return bfs_distances(g, u).get(v, INFINITY)


def subdivide(g: Graph, times: int) -> Graph:
    if times < 0:
        raise GraphError("times must be nonnegative")
    if times == 0:
        return g
    fresh = iter(itertools.count(max(g.vertices, default=-1) + 1))
    vs = set(g.vertices)
    es = []
    for u, v in sorted(g.edges):
        chain = [u] + [next(fresh) for _ in range(times)] + [v]
        vs.update(chain)
        es.extend(zip(chain, chain[1:]))
    return Graph(frozenset(vs), frozenset(es))


def subdivide_digraph(d: Digraph, times: int) -> Digraph:
    """Replace every arc (u,v) by the forward path u -> w1 -> ... -> w_times -> v.

    Fresh ids run from the lower endpoint, as in `subdivide`, so an oriented
    graph subdivides to an orientation of the subdivided underlying graph."""
    if times < 0:
        raise GraphError("times must be nonnegative")
    if times == 0:
        return d
    fresh = iter(itertools.count(max(d.vertices, default=-1) + 1))
    vs = set(d.vertices)
    arcs = []
    for u, v in sorted(d.arcs, key=lambda a: (_norm(*a), a)):
        ids = [next(fresh) for _ in range(times)]
        chain = [u] + (ids if u < v else ids[::-1]) + [v]
        vs.update(chain)
        arcs.extend(zip(chain, chain[1:]))
    return Digraph(frozenset(vs), frozenset(arcs))


def subdivide_edges(g: Graph, counts: Dict[Edge, int]) -> Graph:
    """Subdivide each edge e with counts.get(e, 0) fresh vertices."""
    fresh = iter(itertools.count(max(g.vertices, default=-1) + 1))
    vs = set(g.vertices)
    es = []
    for e in sorted(g.edges):
        k = counts.get(e, 0)
        chain = [e[0]] + [next(fresh) for _ in range(k)] + [e[1]]
        vs.update(chain)
        es.extend(zip(chain, chain[1:]))
    return Graph(frozenset(vs), frozenset(es))


def orient_acyclic(g: Graph) -> Digraph:
    """Orient every edge from the lower to the higher id."""
    return Digraph(g.vertices, frozenset(g.edges))


def orientations(g: Graph):
    """Yield all 2^|E| orientations of g (deterministic order)."""
    edges = sorted(g.edges)
    for flips in itertools.product((False, True), repeat=len(edges)):
        yield Digraph(g.vertices, frozenset((v, u) if f else (u, v) for (u, v), f in zip(edges, flips)))


def has_directed_cycle(d: Digraph) -> bool:
    indeg = {v: len(d.in_adj[v]) for v in d.vertices}
    queue = deque(v for v, k in indeg.items() if k == 0)
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for y in d.out_adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen != len(d.vertices)


def is_connected(g: Graph) -> bool:
    if not g.vertices:
        return True
    return len(bfs_distances(g, min(g.vertices))) == len(g.vertices)


def components(g: Graph) -> List[FrozenSet[int]]:
    left = set(g.vertices)
    comps = []
    while left:
        s = min(left)
        c = frozenset(bfs_distances(g, s))
        comps.append(c)
        left -= c
    return comps


# ---------------------------------------------------------------------------
# isomorphism (exhaustive backtracking, desk scale)


def _signature(g, v):
    if isinstance(g, Digraph):
        o, i = g.out_adj[v], g.in_adj[v]
        return (len(g.nbr[v]), len(o), len(i), len(o & i))
    return (len(g.adj[v]),)


def _nbrs(g, v):
    return g.nbr[v] if isinstance(g, Digraph) else g.adj[v]


def _related(g, u, v):
    if isinstance(g, Digraph):
        return ((u, v) in g.arcs, (v, u) in g.arcs)
    return _norm(u, v) in g.edges


def find_isomorphism(a, b, fixed: Optional[Dict[int, int]] = None) -> Optional[Dict[int, int]]:
    """Return a bijection V(a) -> V(b) preserving edges/arcs, or None.

    Exhaustive backtracking with degree-signature pruning; intended for small
    graphs (or graphs whose structure the pinned `fixed` map makes rigid).
    """
    if type(a) is not type(b):
        raise GraphError("cannot compare a graph with a digraph")
    if len(a.vertices) != len(b.vertices):
        return None
    size_a = len(a.arcs) if isinstance(a, Digraph) else len(a.edges)
    size_b = len(b.arcs) if isinstance(b, Digraph) else len(b.edges)
    if size_a != size_b:
        return None
    sig_a = {v: _signature(a, v) for v in a.vertices}
    sig_b = {v: _signature(b, v) for v in b.vertices}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None
    by_sig: Dict[tuple, List[int]] = {}
    for v in sorted(b.vertices):
        by_sig.setdefault(sig_b[v], []).append(v)

    fixed = dict(fixed or {})
    for x, y in fixed.items():
        if x not in a.vertices or y not in b.vertices or sig_a[x] != sig_b[y]:
            return None
    if len(set(fixed.values())) != len(fixed):
        return None

    # connectivity-first order so adjacency constraints bite early
    order: List[int] = list(fixed)
    placed = set(order)
    rest = sorted(a.vertices - placed, key=lambda v: (-sig_a[v][0], v))
    while rest:
        frontier = [v for v in rest if _nbrs(a, v) & placed]
        pick = frontier[0] if frontier else rest[0]
        order.append(pick)
        placed.add(pick)
        rest.remove(pick)

    mapping: Dict[int, int] = {}
    used = set()

    def consistent(x, y):
        for x2, y2 in mapping.items():
            if _related(a, x, x2) != _related(b, y, y2):
                return False
        return True

    def go(i):
        if i == len(order):
            return True
        x = order[i]
        cands = [fixed[x]] if x in fixed else by_sig[sig_a[x]]
        for y in cands:
            if y in used or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if go(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if go(0) else None


def is_isomorphic(a, b) -> bool:
    return find_isomorphism(a, b) is not None


def relabel(g, mapping: Dict[int, int]):
    if isinstance(g, Digraph):
        return Digraph(frozenset(mapping[v] for v in g.vertices),
                       frozenset((mapping[u], mapping[v]) for u, v in g.arcs))
    return Graph(frozenset(mapping[v] for v in g.vertices),
                 frozenset((mapping[u], mapping[v]) for u, v in g.edges))


def canonical_form(g: Graph) -> Tuple[int, FrozenSet[Edge]]:
    """Lexicographically least edge set over all relabelings to 0..n-1 (tiny graphs only)."""
    vs = sorted(g.vertices)
    best = None
    for perm in itertools.permutations(range(len(vs))):
        m = dict(zip(vs, perm))
        key = tuple(sorted(_norm(m[u], m[v]) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return len(vs), frozenset(best or ())


def degree_invariant(g: Graph) -> Tuple:
    """Sorted (degree, neighbour degrees) pairs; equal for isomorphic graphs."""
    deg = {v: len(g.adj[v]) for v in g.vertices}
    return tuple(sorted((deg[v], tuple(sorted(deg[w] for w in g.adj[v]))) for v in g.vertices))


def dedup_isomorphic(graphs) -> List[Graph]:
    """First representative of each isomorphism class, in input order."""
    buckets: Dict[Tuple, List[Graph]] = {}
    out = []
    for g in graphs:
        bucket = buckets.setdefault((len(g.edges), degree_invariant(g)), [])
        if not any(find_isomorphism(h, g) is not None for h in bucket):
            bucket.append(g)
            out.append(g)
    return out


def all_graphs(n: int) -> List[Graph]:
    """One representative per isomorphism class of graphs on vertices 0..n-1.

    Built by adding vertex n-1 to every class on n-1 vertices with every
    neighbourhood, then deduplicating."""
    if n == 0:
        return [Graph(frozenset(), frozenset())]
    smaller = all_graphs(n - 1)
    new = n - 1

    def grown():
        for h in smaller:
            for mask in range(1 << new):
                extra = [(u, new) for u in range(new) if mask >> u & 1]
                yield Graph(frozenset(range(n)), h.edges | frozenset(extra))

    return dedup_isomorphic(grown())


def all_labeled_digraphs(n: int):
    """Every digraph on vertices 0..n-1: four arc options per vertex pair."""
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product(range(4), repeat=len(pairs)):
        arcs = []
        for (u, v), c in zip(pairs, choice):
            if c & 1:
                arcs.append((u, v))
            if c & 2:
                arcs.append((v, u))
        yield Digraph(frozenset(range(n)), frozenset(arcs))


# ---------------------------------------------------------------------------
# 2-paths


def is_two_path(d: Digraph, seq: Sequence[int]) -> bool:
    """A path in the underlying graph whose internal vertices have exactly two neighbors in d."""
    if len(seq) < 1 or len(set(seq)) != len(seq):
        return False
    for x in seq:
        if x not in d.vertices:
            return False
    for x, y in zip(seq, seq[1:]):
        if y not in d.nbr[x]:
            return False
    return all(len(d.nbr[x]) == 2 for x in seq[1:-1])


def two_paths(d: Digraph) -> List[Tuple[int, ...]]:
    """All 2-paths of length >= 1, each listed once in its lexicographically smaller direction."""
    out = set()
    for start in d.vertices:
        stack = [(start,)]
        while stack:
            path = stack.pop()
            last = path[-1]
            if len(path) > 1:
                rev = path[::-1]
                out.add(min(path, rev))
                if len(d.nbr[last]) != 2:
                    continue
            for y in d.nbr[last]:
                if y not in path:
                    stack.append(path + (y,))
    return sorted(out, key=lambda p: (len(p), p))


def is_directed_path(d: Digraph, seq: Sequence[int]) -> bool:
    return all((x, y) in d.arcs for x, y in zip(seq, seq[1:]))
