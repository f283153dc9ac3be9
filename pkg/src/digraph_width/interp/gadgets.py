"""Model-side constructions for the planarizing (I1) and regularizing (I2) interpretations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..graphs import Edge, Graph
from .drawing import Drawing, Point, angular_order, draw, is_plane

Provenance = Dict[int, Tuple[str, str]]


@dataclass
class Construction:
    graph: Graph
    provenance: Provenance
    positions: Optional[Dict[int, Point]] = None
    gadgets: Tuple[frozenset, ...] = ()


class _Builder:
    def __init__(self, base: Graph):
        self.vertices: List[int] = list(base.sorted_vertices())
        self.edges: set = set()
        self.next_id = max(base.vertices, default=-1) + 1
        self.prov: Provenance = {}
        self.pos: Dict[int, Point] = {}

    def fresh(self, kind: str, source: str, pos: Optional[Point] = None) -> int:
        v = self.next_id
        self.next_id += 1
        self.vertices.append(v)
        self.prov[v] = (kind, source)
        if pos is not None:
            self.pos[v] = pos
        return v

    def edge(self, u: int, v: int):
        self.edges.add((min(u, v), max(u, v)))

    def graph(self) -> Graph:
        return Graph(frozenset(self.vertices), frozenset(self.edges))


def _edge_label(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def _lerp(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _planarize_with(h: Graph, drawing: Drawing, eps: Fraction) -> Construction:
    b = _Builder(h)
    pos = drawing.positions
    for v in h.vertices:
        b.prov[v] = ("vertex", str(v))
        b.pos[v] = pos[v]
    # crossing gadgets: c1, c3 on the strand of e, c2, c4 on the strand of f
    ends: Dict[Tuple[Edge, Edge], Tuple[int, int]] = {}
    gadgets = []
    for c in drawing.crossings:
        label = f"{_edge_label(c.e)}/{_edge_label(c.f)}"
        X = c.point
        ea, eb = pos[c.e[0]], pos[c.e[1]]
        fa, fb = pos[c.f[0]], pos[c.f[1]]
        pts = [
            _lerp(ea, eb, c.t_e - eps), _lerp(fa, fb, c.t_f - eps),
            _lerp(ea, eb, c.t_e + eps), _lerp(fa, fb, c.t_f + eps),
        ]
        cyc = [b.fresh("gadget", label, p) for p in pts]
        for i in range(4):
            b.edge(cyc[i], cyc[(i + 1) % 4])
        for ci, p in zip(cyc, pts):
            b.edge(ci, b.fresh("pendant", label, _lerp(p, X, Fraction(1, 2))))
        ends[(c.e, c.f)] = (cyc[0], cyc[2])
        ends[(c.f, c.e)] = (cyc[1], cyc[3])
        gadgets.append(frozenset(cyc))
    # strands: endpoint, gadget entries/exits in order of the crossing parameter, endpoint
    for e in sorted(h.edges):
        chain = [e[0]]
        for other, _t in drawing.along[e]:
            near, far = ends[(e, other)]
            chain += [near, far]
        chain.append(e[1])
        for i in range(0, len(chain), 2):
            b.edge(chain[i], chain[i + 1])
    # tails on degree-1 vertices
    for w in h.sorted_vertices():
        if h.degree(w) == 1:
            pw = pos[w]
            w1 = b.fresh("tail", str(w), (pw[0] * Fraction(11, 10), pw[1] * Fraction(11, 10)))
            w2 = b.fresh("tail", str(w), (pw[0] * Fraction(12, 10), pw[1] * Fraction(12, 10)))
            b.edge(w, w1)
            b.edge(w1, w2)
    return Construction(b.graph(), b.prov, b.pos, tuple(gadgets))


def planarize(h: Graph) -> Construction:
    """Replace every crossing of a convex drawing of h by a marked 4-cycle and
    extend degree-1 vertices by a tail of length two.  Original vertices keep their ids."""
    drawing = draw(h)
    eps = Fraction(1, 8)
    for items in drawing.along.values():
        ts = [Fraction(0)] + [t for _, t in items] + [Fraction(1)]
        for lo, hi in zip(ts, ts[1:]):
            while 3 * eps >= hi - lo:
                eps /= 2
    while True:
        out = _planarize_with(h, drawing, eps)
        if is_plane(out.positions, out.graph.edges):
            return out
        eps /= 2
        if eps < Fraction(1, 2**60):
            raise RuntimeError("could not separate crossing gadgets")


def regularize(h: Graph, positions: Optional[Dict[int, Point]] = None) -> Construction:
    """{1,3}-regular graph whose I2-interpretation is h; vertex v of h keeps id v as r_v.

    With `positions`, edges leave each vertex cycle in counter-clockwise order,
    so a plane drawing of h yields a planar result.
    """
    b = _Builder(h)
    white_for: Dict[Tuple[int, int], int] = {}
    for v in h.sorted_vertices():
        b.prov[v] = ("root", str(v))
        nbrs = sorted(h.neighbors(v))
        d = len(nbrs)
        for _ in range(3 if d == 0 else 2):
            b.edge(v, b.fresh("pendant", str(v)))
        if d == 0:
            continue
        if positions is not None:
            nbrs = angular_order(positions[v], {u: positions[u] for u in nbrs})
        cyc = []
        for i in range(d + 1):
            cyc.append(b.fresh("black", str(v)))
            cyc.append(b.fresh("white", str(v)))
        for i in range(len(cyc)):
            b.edge(cyc[i], cyc[(i + 1) % len(cyc)])
        for blk in cyc[0::2]:
            b.edge(blk, b.fresh("pendant", str(v)))
        whites = cyc[1::2]
        b.edge(v, whites[0])
        for u, wh in zip(nbrs, whites[1:]):
            white_for[(v, u)] = wh
    for u, v in sorted(h.edges):
        b.edge(white_for[(u, v)], white_for[(v, u)])
    return Construction(b.graph(), b.prov)
