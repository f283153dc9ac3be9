"""Exact straight-line drawings in convex position.

Vertices sit on rational points of the unit circle; two chords cross iff
their endpoints interleave around the circle.  All geometry is done with
Fractions, so crossing detection and ordering are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Tuple

from ..graphs import Edge, Graph

Point = Tuple[Fraction, Fraction]

MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class Crossing:
    e: Edge
    f: Edge
    point: Point
    t_e: Fraction  # parameter along e, measured from its lower-id endpoint
    t_f: Fraction


@dataclass
class Drawing:
    positions: Dict[int, Point]
    crossings: List[Crossing] = field(default_factory=list)
    # per edge: (other edge, parameter along this edge), sorted by parameter
    along: Dict[Edge, List[Tuple[Edge, Fraction]]] = field(default_factory=dict)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)


def circle_point(theta: float, denom: int = 10**6) -> Point:
    """Rational point on the unit circle near angle theta (stereographic parametrization)."""
    t = Fraction(math.tan(theta / 2)).limit_denominator(denom)
    d = 1 + t * t
    return ((1 - t * t) / d, (2 * t) / d)


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def cross(p: Point, q: Point) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def orient(a: Point, b: Point, c: Point) -> int:
    v = cross(sub(b, a), sub(c, a))
    return (v > 0) - (v < 0)


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share a point."""
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d))
            or (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)))


def intersection(a: Point, b: Point, c: Point, d: Point) -> Optional[Tuple[Fraction, Fraction]]:
    """Parameters (t, u) with a + t(b-a) = c + u(d-c) in the open unit square, or None."""
    r, s = sub(b, a), sub(d, c)
    den = cross(r, s)
    if den == 0:
        return None
    q = sub(c, a)
    t = cross(q, s) / den
    u = cross(q, r) / den
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def _place(order: List[int], attempt: int) -> Dict[int, Point]:
    n = max(len(order), 1)
    pos = {}
    for i, v in enumerate(order):
        # deterministic irrational-ish jitter, changed on every attempt
        jitter = ((i * 7919 + attempt * 104729) % 997 + 1) / (997.0 * 8 * n)
        pos[v] = circle_point(2 * math.pi * i / n + jitter + 0.1)
    return pos


def draw(h: Graph) -> Drawing:
    order = h.sorted_vertices()
    edges = sorted(h.edges)
    for attempt in range(MAX_ATTEMPTS):
        pos = _place(order, attempt)
        if len(set(pos.values())) != len(pos):
            continue
        crossings = []
        for i, e in enumerate(edges):
            for f in edges[i + 1:]:
                if len({*e, *f}) < 4:
                    continue
                hit = intersection(pos[e[0]], pos[e[1]], pos[f[0]], pos[f[1]])
                if hit is None:
                    continue
                t, u = hit
                a, b = pos[e[0]], pos[e[1]]
                pt = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                crossings.append(Crossing(e, f, pt, t, u))
        points = [c.point for c in crossings]
        if len(set(points)) != len(points):
            continue  # triple point: perturb again
        along: Dict[Edge, List[Tuple[Edge, Fraction]]] = {e: [] for e in edges}
        for c in crossings:
            along[c.e].append((c.f, c.t_e))
            along[c.f].append((c.e, c.t_f))
        for e in edges:
            along[e].sort(key=lambda item: item[1])
        return Drawing(pos, crossings, along)
    raise RuntimeError("drawing perturbation did not converge")


def circular_crossing_count(h: Graph) -> int:
    """Number of interleaving chord pairs when vertices sit on a circle in id order."""
    rank = {v: i for i, v in enumerate(h.sorted_vertices())}
    edges = sorted(h.edges)
    count = 0
    for i, (a, b) in enumerate(edges):
        lo, hi = sorted((rank[a], rank[b]))
        for c, d in edges[i + 1:]:
            if len({a, b, c, d}) < 4:
                continue
            inside = [lo < rank[x] < hi for x in (c, d)]
            count += inside[0] != inside[1]
    return count


def is_plane(positions: Dict[int, Point], edges) -> bool:
    """No two edges meet except at a shared endpoint, and no edge runs through a vertex."""
    edges = sorted(edges)
    for i, (a, b) in enumerate(edges):
        pa, pb = positions[a], positions[b]
        for c, d in edges[i + 1:]:
            shared = {a, b} & {c, d}
            pc, pd = positions[c], positions[d]
            if not shared:
                if segments_touch(pa, pb, pc, pd):
                    return False
            elif len(shared) == 1:
                s = shared.pop()
                x = c if d == s else d
                y = a if b == s else b
                # collinear overlap beyond the shared endpoint
                if orient(positions[s], positions[y], positions[x]) == 0:
                    dy, dx = sub(positions[y], positions[s]), sub(positions[x], positions[s])
                    if dy[0] * dx[0] + dy[1] * dx[1] > 0:
                        return False
    for v, pv in positions.items():
        for a, b in edges:
            if v not in (a, b) and orient(positions[a], positions[b], pv) == 0 \
                    and _on_segment(positions[a], positions[b], pv):
                return False
    return True


def angular_order(center: Point, others: Dict[int, Point]) -> List[int]:
    """Ids sorted counter-clockwise around center, starting from the positive x direction."""

    def half(p: Point) -> int:
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    def cmp(a, b):
        pa, pb = sub(others[a], center), sub(others[b], center)
        ha, hb = half(pa), half(pb)
        if ha != hb:
            return ha - hb
        c = cross(pa, pb)
        if c != 0:
            return -1 if c > 0 else 1
        return (a > b) - (a < b)

    return sorted(others, key=cmp_to_key(cmp))
