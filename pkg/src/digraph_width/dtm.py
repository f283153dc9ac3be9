"""Directed topological minors: arc contraction, 2-contractibility, exhaustive minor
search with replayable witnesses, and the 2-linkage reduction."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import FormatError, GraphError, PreconditionError
from .graphs import (
    Digraph, Edge, components, find_isomorphism, is_directed_path,
    is_two_path, reachable_from, underlying, v3,
)

DEFAULT_NODE_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# contraction


def contract_arc(d: Digraph, a: Edge, new_vertex: Optional[int] = None) -> Digraph:
    """D/a: x and y are replaced by one fresh vertex carrying the union of their arcs."""
    x, y = a
    if not d.has_arc(x, y):
        raise GraphError(f"arc {a} is not in the digraph")
    va = max(d.vertices) + 1 if new_vertex is None else new_vertex
    if va in d.vertices and va not in (x, y):
        raise GraphError(f"new vertex id {va} is already in use")
    pair = {x, y}

    def m(v):
        return va if v in pair else v

    arcs = {(m(u), m(v)) for u, v in d.arcs}
    arcs = {(u, v) for u, v in arcs if u != v}
    verts = (d.vertices - pair) | {va}
    return Digraph(frozenset(verts), frozenset(arcs))


def _reaching(d: Digraph, target: int) -> FrozenSet[int]:
    seen = {target}
    stack = [target]
    while stack:
        v = stack.pop()
        for u in d.in_adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return frozenset(seen)


def is_2_contractible(d: Digraph, a: Edge) -> bool:
    u, v = a
    if not d.has_arc(u, v):
        raise GraphError(f"arc {a} is not in the digraph")
    if d.degree(u) != 2 and d.degree(v) != 2:
        return False
    if d.has_arc(v, u):
        return True
    big = v3(d)
    if not big:
        return True
    rest = d.without_arc(a)
    if not (_reaching(rest, v) & big):
        return True
    return not (reachable_from(rest, u) & big)


@dataclass(frozen=True)
class ContractionStep:
    arc: Edge
    new_vertex: int


def apply_steps(d: Digraph, steps: Sequence[ContractionStep], check: bool = True) -> Digraph:
    for st in steps:
        if check and not is_2_contractible(d, st.arc):
            raise PreconditionError(f"arc {st.arc} is not 2-contractible")
        d = contract_arc(d, st.arc, st.new_vertex)
    return d


# An operation is ("vertex", v), ("arc", (u, v)) or ("contract", (u, v)), naming
# vertices of the digraph current at the moment it is applied.
Operation = Tuple[str, object]


def apply_operations(d: Digraph, ops: Sequence[Operation]) -> Tuple[Digraph, Dict[int, FrozenSet[int]]]:
    """Apply ops in order; also return, per surviving vertex, the original vertices it stands for."""
    cls = {v: frozenset([v]) for v in d.vertices}
    for kind, x in ops:
        if kind == "vertex":
            d = d.without_vertices([x])
            del cls[x]
        elif kind == "arc":
            if x not in d.arcs:
                raise GraphError(f"arc {x} is not in the digraph")
            d = d.without_arc(x)
        elif kind == "contract":
            w = max(d.vertices) + 1
            cls[w] = cls.pop(x[0]) | cls.pop(x[1])
            d = contract_arc(d, x, w)
        else:
            raise ValueError(f"unknown operation {kind!r}")
    return d, cls


def deletions_first(d: Digraph, ops: Sequence[Operation]) -> Digraph:
    """Same operations as `ops`, reordered: every deletion on d itself, then the
    contractions whose merged vertex survives.  A deleted vertex takes its whole
    class with it; a deleted arc takes every original arc it stood for."""
    cur = d
    cls = {v: frozenset([v]) for v in d.vertices}
    dead_v: set = set()
    dead_a: set = set()
    merges: List[Tuple[FrozenSet[int], FrozenSet[int]]] = []
    for kind, x in ops:
        if kind == "vertex":
            dead_v |= cls[x]
        elif kind == "arc":
            cp, cq = cls[x[0]], cls[x[1]]
            dead_a |= {a for a in d.arcs if a[0] in cp and a[1] in cq}
        else:
            merges.append((cls[x[0]], cls[x[1]]))
        cur, cls = apply_operations(cur, [(kind, x)])[0], _step_classes(cls, kind, x, cur)
    pruned = Digraph(d.vertices - dead_v, frozenset(a for a in d.arcs - dead_a
                                                   if a[0] not in dead_v and a[1] not in dead_v))
    rep = {frozenset([v]): v for v in pruned.vertices}
    for cp, cq in merges:
        if cp & dead_v:
            continue
        p, q = rep.pop(cp), rep.pop(cq)
        arc = (p, q) if pruned.has_arc(p, q) else (q, p)
        w = max(pruned.vertices) + 1
        pruned = contract_arc(pruned, arc, w)
        rep[cp | cq] = w
    return pruned


def _step_classes(cls, kind, x, before: Digraph):
    cls = dict(cls)
    if kind == "vertex":
        del cls[x]
    elif kind == "contract":
        w = max(before.vertices) + 1
        cls[w] = cls.pop(x[0]) | cls.pop(x[1])
    return cls


# ---------------------------------------------------------------------------
# 2-paths


def contract_two_path(d: Digraph, path: Sequence[int], first_new_id: Optional[int] = None
                      ) -> Tuple[Digraph, List[ContractionStep], Tuple[int, ...]]:
    """Shorten the 2-path to length 2 (length 1 if it is a directed path) by
    2-contractions of its own arcs.  Returns the digraph, the steps and the new path.
    New vertices get ids max(current)+1, or from `first_new_id` upward if larger."""
    path = tuple(path)
    k = len(path) - 1
    if k <= 2:
        raise PreconditionError("contract_two_path needs a 2-path of length > 2")
    if not is_two_path(d, path):
        raise PreconditionError(f"{path} is not a 2-path")
    directed = is_directed_path(d, path) or is_directed_path(d, path[::-1])
    goal = 1 if directed else 2
    failed = set()

    def search(cur: Digraph, p: Tuple[int, ...]):
        if len(p) - 1 == goal:
            return cur, [], p
        key = (cur.arcs, p)
        if key in failed:
            return None
        # interior arcs first so that the end vertices keep their ids when possible
        idx = sorted(range(len(p) - 1), key=lambda i: (i == 0 or i == len(p) - 2, i))
        for i in idx:
            x, y = p[i], p[i + 1]
            for arc in ((x, y), (y, x)):
                if not cur.has_arc(*arc) or not is_2_contractible(cur, arc):
                    continue
                w = max(max(cur.vertices) + 1, first_new_id or 0)
                nxt = contract_arc(cur, arc, w)
                res = search(nxt, p[:i] + (w,) + p[i + 2:])
                if res is not None:
                    final, steps, fp = res
                    return final, [ContractionStep(arc, w)] + steps, fp
                break  # both arc directions give the same quotient
        failed.add(key)
        return None

    res = search(d, path)
    if res is None:
        raise PreconditionError(f"no 2-contraction sequence shortens {path}")
    return res


# ---------------------------------------------------------------------------
# minor witnesses


@dataclass
class MinorWitness:
    sub_vertices: Tuple[int, ...]
    sub_arcs: Tuple[Edge, ...]
    steps: List[ContractionStep] = field(default_factory=list)
    final_iso: Dict[int, int] = field(default_factory=dict)  # pattern vertex -> host-side vertex

    def to_text(self) -> str:
        lines = ["sub v " + " ".join(map(str, self.sub_vertices))]
        lines += [f"sub a {u} {v}" for u, v in self.sub_arcs]
        lines += [f"contract {s.arc[0]} {s.arc[1]} -> {s.new_vertex}" for s in self.steps]
        lines += [f"iso {p} -> {h}" for p, h in sorted(self.final_iso.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MinorWitness":
        verts: List[int] = []
        arcs: List[Edge] = []
        steps: List[ContractionStep] = []
        iso: Dict[int, int] = {}
        arrow = re.compile(r"^(\d+)\s*(?:->|→)\s*(\d+)$")
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                if line.startswith("sub v"):
                    verts += [int(t) for t in line[5:].split()]
                elif line.startswith("sub a"):
                    u, v = (int(t) for t in line[5:].split())
                    arcs.append((u, v))
                elif line.startswith("contract"):
                    m = re.match(r"^contract\s+(\d+)\s+(\d+)\s*(?:->|→)\s*(\d+)$", line)
                    if not m:
                        raise ValueError
                    steps.append(ContractionStep((int(m[1]), int(m[2])), int(m[3])))
                elif line.startswith("iso"):
                    m = arrow.match(line[3:].strip())
                    if not m:
                        raise ValueError
                    iso[int(m[1])] = int(m[2])
                else:
                    raise ValueError
            except ValueError:
                raise FormatError(f"bad witness line {raw!r}", lineno) from None
        return cls(tuple(verts), tuple(arcs), steps, iso)


def validate_witness(h: Digraph, d: Digraph, w: MinorWitness) -> Tuple[bool, str]:
    """Replay the witness on host d; returns (ok, reason)."""
    sv = frozenset(w.sub_vertices)
    if not sv <= d.vertices:
        return False, "subgraph vertices not in host"
    for a in w.sub_arcs:
        if a not in d.arcs:
            return False, f"arc {a} not in host"
        if a[0] not in sv or a[1] not in sv:
            return False, f"arc {a} leaves the subgraph vertex set"
    cur = Digraph(sv, frozenset(w.sub_arcs))
    for st in w.steps:
        if not cur.has_arc(*st.arc):
            return False, f"contracted arc {st.arc} missing"
        if not is_2_contractible(cur, st.arc):
            return False, f"arc {st.arc} is not 2-contractible"
        if st.new_vertex in cur.vertices:
            return False, f"new vertex {st.new_vertex} is not fresh"
        cur = contract_arc(cur, st.arc, st.new_vertex)
    iso = w.final_iso
    if set(iso) != set(h.vertices) or set(iso.values()) != set(cur.vertices):
        return False, "final map is not a bijection onto the contracted digraph"
    mapped = {(iso[u], iso[v]) for u, v in h.arcs}
    if mapped != set(cur.arcs):
        return False, "final map does not preserve arcs"
    return True, "ok"


@dataclass
class DtmResult:
    status: str  # "yes" | "no" | "budget"
    witness: Optional[MinorWitness] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "yes"


class _Budget(Exception):
    pass


def _degree_profile(degs: Iterable[int], top: int) -> List[int]:
    """counts[d] = number of vertices with degree >= d, for d = 1..top."""
    degs = list(degs)
    return [sum(1 for x in degs if x >= k) for k in range(1, top + 1)]


def _stable_colours(out: Dict[int, set], inn: Dict[int, set], amap: Dict[int, int]) -> Dict[int, int]:
    """Colour refinement to stability, seeded with anchors and in/out degrees."""
    col = {v: hash((amap.get(v, -1), len(out[v]), len(inn[v]))) for v in out}
    n_cls = len(set(col.values()))
    while True:
        col = {v: hash((col[v], tuple(sorted(col[w] for w in out[v])),
                        tuple(sorted(col[w] for w in inn[v])))) for v in out}
        k = len(set(col.values()))
        if k == n_cls:
            return col
        n_cls = k


def _coloured_iso(a, b) -> bool:
    """Anchor-preserving isomorphism test between (out, inn, anchors, colours)
    tuples whose colours came from `_stable_colours`."""
    out_a, inn_a, am_a, col_a = a
    out_b, inn_b, am_b, col_b = b
    cls_b: Dict[int, List[int]] = {}
    for v, c in col_b.items():
        cls_b.setdefault(c, []).append(v)
    size = {c: len(vs) for c, vs in cls_b.items()}
    order = sorted(out_a, key=lambda v: (size.get(col_a[v], 0), v))
    m: Dict[int, int] = {}
    used = set()

    def fits(x, y):
        if am_a.get(x) != am_b.get(y):
            return False
        for nb_a, nb_b in ((out_a, out_b), (inn_a, inn_b)):
            hits = 0
            for w in nb_a[x]:
                if w in m:
                    if m[w] not in nb_b[y]:
                        return False
                    hits += 1
            if hits != sum(1 for z in nb_b[y] if z in used):
                return False
        return True

    def go(i):
        if i == len(order):
            return True
        x = order[i]
        for y in cls_b.get(col_a[x], ()):
            if y in used or not fits(x, y):
                continue
            m[x] = y
            used.add(y)
            if go(i + 1):
                return True
            del m[x]
            used.discard(y)
        return False

    return go(0)


def is_dtm(h: Digraph, d: Digraph, anchors: Optional[Dict[int, int]] = None,
           budget: Optional[int] = DEFAULT_NODE_BUDGET) -> DtmResult:
    """Decide whether h is a directed topological minor of d.

    Arc subsets D0 of d are enumerated exclude-first; for each, sequences of
    2-contractible contractions are explored as partitions of V(D0) (the
    contracted digraph is the quotient).  `anchors` pins pattern vertices to
    host vertices: the class holding an anchored host vertex must map to its
    pattern vertex, and two anchored vertices never merge.  `budget` caps
    search nodes; exhaustion gives status "budget", never a silent "no".
    """
    anchors = dict(anchors or {})
    for p, x in anchors.items():
        if p not in h.vertices or x not in d.vertices:
            raise GraphError(f"anchor {p}->{x} names an unknown vertex")
    if len(set(anchors.values())) != len(anchors):
        raise GraphError("anchors must be injective")
    hv_iso = sorted(v for v in h.vertices if h.degree(v) == 0)
    core = h.induced(h.vertices - set(hv_iso))
    n_core = len(core.vertices)
    core_arcs = len(core.arcs)
    core_comps = len(components(underlying(core))) if n_core else 0
    top = max((core.degree(v) for v in core.vertices), default=0)
    need = _degree_profile((core.degree(v) for v in core.vertices), top)
    # 2-contractions never remove a degree-1 vertex unless a single-arc component
    # collapses to a point, which the core (no isolated vertices) cannot use
    need_pendants = sum(1 for v in core.vertices if core.degree(v) == 1)
    iso_anchor_hosts = {anchors[p] for p in hv_iso if p in anchors}
    core_anchor = {p: x for p, x in anchors.items() if p in core.vertices}
    anchored_hosts = frozenset(core_anchor.values())

    host_arcs = sorted(d.arcs)
    nodes = [0]

    def tick():
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise _Budget()

    # potential neighbour sets over included + undecided arcs
    def nbr_count(arcs_iter):
        nb: Dict[int, set] = {}
        for u, v in arcs_iter:
            nb.setdefault(u, set()).add(v)
            nb.setdefault(v, set()).add(u)
        return nb

    # contraction keeps components, so anchors must be grouped as in the pattern
    comp_of = {}
    for i, comp in enumerate(components(underlying(core)) if n_core else []):
        for v in comp:
            comp_of[v] = i
    anchor_comp = {x: comp_of[p] for p, x in core_anchor.items()}

    def _label_components(nb: Dict[int, set]) -> Dict[int, int]:
        lab: Dict[int, int] = {}
        for s in nb:
            if s in lab:
                continue
            lab[s] = s
            stack = [s]
            while stack:
                z = stack.pop()
                for w in nb[z]:
                    if w not in lab:
                        lab[w] = s
                        stack.append(w)
        return lab

    def anchors_joined(lab: Dict[int, int]) -> bool:
        """Anchors of one pattern component share a component of `lab`."""
        rep: Dict[int, int] = {}
        return all(rep.setdefault(c, lab.get(x, -1)) == lab.get(x, -1)
                   for x, c in anchor_comp.items())

    def anchors_apart(lab: Dict[int, int]) -> bool:
        """Anchors of different pattern components never share a component of `lab`."""
        owner: Dict[int, int] = {}
        return all(owner.setdefault(lab[x], c) == c for x, c in anchor_comp.items() if x in lab)

    def feasible(potential: Dict[int, set], included: Dict[int, set]) -> bool:
        if top:
            got = _degree_profile((len(s) for s in potential.values()), top)
            if any(g < n for g, n in zip(got, need)):
                return False
        if not all(x in potential for x in anchored_hosts):
            return False
        if sum(1 for v, s in included.items() if len(potential[v]) == 1) > need_pendants:
            return False
        if len(anchor_comp) > 1:
            if not anchors_joined(_label_components(potential)):
                return False
            if not anchors_apart(_label_components(included)):
                return False
        return True

    def pick_isolated(used: FrozenSet[int]) -> Optional[Dict[int, int]]:
        if iso_anchor_hosts & used:
            return None
        free = [v for v in sorted(d.vertices) if v not in used and v not in iso_anchor_hosts
                and v not in anchored_hosts]
        out = {}
        for p in hv_iso:
            if p in anchors:
                out[p] = anchors[p]
            else:
                if not free:
                    return None
                out[p] = free.pop(0)
        return out

    # failed contraction states up to anchored isomorphism, shared by all leaves:
    # what can still happen depends only on the quotient digraph and its anchors
    failed_shapes: Dict[tuple, list] = {}

    def contract_search(arcs0: FrozenSet[Edge], verts0: Tuple[int, ...]):
        """DFS over partitions; returns (steps as class merges, final class labelling) or None."""
        failed = set()
        r = len(verts0) - n_core

        def go(classes: Tuple[FrozenSet[int], ...], left: int):
            tick()
            key = frozenset(classes)
            if key in failed:
                return None
            cls_of = {v: min(c) for c in classes for v in c}
            out: Dict[int, set] = {min(c): set() for c in classes}
            inn: Dict[int, set] = {k: set() for k in out}
            for x, y in arcs0:
                cx, cy = cls_of[x], cls_of[y]
                if cx != cy:
                    out[cx].add(cy)
                    inn[cy].add(cx)
            n_arcs = sum(len(s) for s in out.values())
            if n_arcs - left < core_arcs:
                failed.add(key)
                return None
            deg = {k: len(out[k] | inn[k]) for k in out}
            if sum(1 for dg in deg.values() if dg == 1) > need_pendants:
                failed.add(key)
                return None
            if top:
                got = _degree_profile(deg.values(), top)
                if any(g < n for g, n in zip(got, need)):
                    failed.add(key)
                    return None
            if left == 0:
                cur = Digraph(frozenset(out), frozenset((u, v) for u in out for v in out[u]))
                fixed = {p: cls_of[x] for p, x in core_anchor.items()}
                iso = find_isomorphism(core, cur, fixed)
                if iso is not None:
                    return [], iso
                failed.add(key)
                return None
            amap = {cls_of[x]: p for p, x in core_anchor.items()}
            colours = _stable_colours(out, inn, amap)
            shape = (n_arcs, tuple(sorted(colours.values())))
            here = (out, inn, amap, colours)
            for other in failed_shapes.get(shape, ()):
                if _coloured_iso(other, here):
                    failed.add(key)
                    return None
            big = {k for k, dg in deg.items() if dg >= 3}
            by_label = {min(c): c for c in classes}

            def contractible(u, v):
                if deg[u] != 2 and deg[v] != 2:
                    return False
                if u in out[v] or not big:
                    return True
                # vertices reaching v without the arc u->v
                seen = {v}
                stack = [v]
                hit = False
                while stack and not hit:
                    z = stack.pop()
                    for w in inn[z]:
                        if z == v and w == u:
                            continue
                        if w not in seen:
                            if w in big:
                                hit = True
                                break
                            seen.add(w)
                            stack.append(w)
                if not hit and v not in big:
                    return True
                seen = {u}
                stack = [u]
                while stack:
                    z = stack.pop()
                    if z in big:
                        return False
                    for w in out[z]:
                        if z == u and w == v:
                            continue
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                return True

            seen_pairs = set()
            for u in sorted(out):
                for v in sorted(out[u]):
                    pair = (min(u, v), max(u, v))
                    if pair in seen_pairs:
                        continue
                    seen_pairs.add(pair)
                    cu, cv = by_label[u], by_label[v]
                    if cu & anchored_hosts and cv & anchored_hosts:
                        continue
                    if not contractible(u, v):
                        continue
                    merged = cu | cv
                    nxt = tuple(sorted([c for c in classes if c is not cu and c is not cv] + [merged], key=min))
                    res = go(nxt, left - 1)
                    if res is not None:
                        steps, iso = res
                        return [((u, v), cu, cv)] + steps, iso
            failed.add(key)
            failed_shapes.setdefault(shape, []).append(here)
            return None

        return go(tuple(frozenset([v]) for v in verts0), r)

    def leaf(included: List[Edge]):
        arcs0 = frozenset(included)
        verts0 = tuple(sorted({x for a in arcs0 for x in a}))
        if len(verts0) < n_core or len(arcs0) - len(verts0) < core_arcs - n_core:
            return None
        if n_core:
            g0 = underlying(Digraph(frozenset(verts0), arcs0))
            if len(components(g0)) != core_comps:
                return None
        isolated = pick_isolated(frozenset(verts0))
        if isolated is None:
            return None
        res = contract_search(arcs0, verts0)
        if res is None:
            return None
        merges, iso = res
        # replay merges with fresh ids to produce concrete steps
        next_id = max(d.vertices) + 1
        cur = Digraph(frozenset(verts0), arcs0)
        name = {frozenset([v]): v for v in verts0}
        steps = []
        for _arc, cu, cv in merges:
            # quotient labels are class minima, so the chosen quotient arc is name[cu] -> name[cv]
            arc = (name[cu], name[cv])
            steps.append(ContractionStep(arc, next_id))
            cur = contract_arc(cur, arc, next_id)
            name[cu | cv] = next_id
            del name[cu], name[cv]
            next_id += 1
        final_name = {min(c): nm for c, nm in name.items()}
        final_iso = {p: final_name[q] for p, q in iso.items()}
        for p, x in isolated.items():
            final_iso[p] = x
        sub_vertices = tuple(sorted(set(verts0) | set(isolated.values())))
        return MinorWitness(sub_vertices, tuple(sorted(arcs0)), steps, final_iso)

    def recurse(i: int, included: List[Edge], potential_arcs: List[Edge]):
        tick()
        if not feasible(nbr_count(included + potential_arcs[i:]), nbr_count(included)):
            return None
        if len(included) + (len(host_arcs) - i) < core_arcs:
            return None
        if i == len(host_arcs):
            return leaf(included)
        # exclude first: sparse subgraphs have small contraction searches
        res = recurse(i + 1, included, potential_arcs)
        if res is not None:
            return res
        included.append(host_arcs[i])
        res = recurse(i + 1, included, potential_arcs)
        included.pop()
        return res

    try:
        w = recurse(0, [], host_arcs)
    except _Budget:
        return DtmResult("budget", None, nodes[0])
    if w is None:
        return DtmResult("no", None, nodes[0])
    ok, why = validate_witness(h, d, w)
    if not ok:
        raise AssertionError(f"internal error: produced an invalid witness ({why})")
    return DtmResult("yes", w, nodes[0])


# ---------------------------------------------------------------------------
# 2-linkage


@dataclass(frozen=True)
class LinkageInstance:
    digraph: Digraph
    terminals: Tuple[int, int, int, int]  # s1, t1, s2, t2

    def __post_init__(self):
        if len(set(self.terminals)) != 4:
            raise PreconditionError("terminals must be pairwise distinct")
        for t in self.terminals:
            if t not in self.digraph.vertices:
                raise PreconditionError(f"terminal {t} is not a vertex")


def _bfs_path(d: Digraph, s: int, t: int, blocked: FrozenSet[int]) -> Optional[Tuple[int, ...]]:
    if s in blocked or t in blocked:
        return None
    prev = {s: None}
    queue = [s]
    for v in queue:
        if v == t:
            break
        for w in sorted(d.out_adj[v]):
            if w not in prev and w not in blocked:
                prev[w] = v
                queue.append(w)
    if t not in prev:
        return None
    out = [t]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return tuple(reversed(out))


def solve_2_linkage(inst: LinkageInstance) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Vertex-disjoint directed s1->t1 and s2->t2 paths, or None (exhaustive over simple s1-t1 paths)."""
    d = inst.digraph
    s1, t1, s2, t2 = inst.terminals
    path = [s1]
    on = {s1}

    def dfs():
        v = path[-1]
        if v == t1:
            p2 = _bfs_path(d, s2, t2, frozenset(on))
            return (tuple(path), p2) if p2 is not None else None
        for w in sorted(d.out_adj[v]):
            if w in on or w in (s2, t2):
                continue
            path.append(w)
            on.add(w)
            res = dfs()
            path.pop()
            on.discard(w)
            if res is not None:
                return res
        return None

    return dfs()


PATTERN_TERMINALS = (0, 1, 2, 3)  # a, b, c, d


def pattern_H() -> Digraph:
    """a->b with 3 in-pendants on a and 3 out-pendants on b; c->d with 4 and 4."""
    a, b, c, dd = PATTERN_TERMINALS
    arcs = [(a, b), (c, dd)]
    nxt = 4
    for centre, count, inward in ((a, 3, True), (b, 3, False), (c, 4, True), (dd, 4, False)):
        for _ in range(count):
            arcs.append((nxt, centre) if inward else (centre, nxt))
            nxt += 1
    return Digraph.from_arcs(arcs)


@dataclass
class Reduction:
    dstar: Digraph
    pattern: Digraph
    anchors: Dict[int, int]
    terminals: Tuple[int, int, int, int]  # s1', t1', s2', t2'


def reduce_linkage_to_dtm(inst: LinkageInstance) -> Reduction:
    d = inst.digraph
    s1, t1, s2, t2 = inst.terminals
    m = max(d.vertices)
    s1p, s2p, t1p, t2p = m + 1, m + 2, m + 3, m + 4
    verts = set(d.vertices) | {s1p, s2p, t1p, t2p}
    arcs = set(d.arcs) | {(s1p, s1), (s2p, s2), (t1, t1p), (t2, t2p)}
    nxt = m + 5
    # split every vertex with four or more neighbours into a directed chain
    while True:
        cur = Digraph(frozenset(verts), frozenset(arcs))
        big = [x for x in sorted(cur.vertices) if cur.degree(x) >= 4]
        if not big:
            break
        x = big[0]
        ins = sorted(cur.in_adj[x])
        outs = sorted(cur.out_adj[x])
        chain = list(range(nxt, nxt + len(ins) + len(outs)))
        nxt += len(chain)
        verts.discard(x)
        arcs = {(u, v) for u, v in arcs if x not in (u, v)}
        verts.update(chain)
        arcs.update(zip(chain, chain[1:]))
        for u, xi in zip(ins, chain):
            arcs.add((u, xi))
        for w, xi in zip(outs, chain[len(ins):]):
            arcs.add((xi, w))
    for centre, count, inward in ((s1p, 3, True), (t1p, 3, False), (s2p, 4, True), (t2p, 4, False)):
        for _ in range(count):
            verts.add(nxt)
            arcs.add((nxt, centre) if inward else (centre, nxt))
            nxt += 1
    dstar = Digraph(frozenset(verts), frozenset(arcs))
    a, b, c, dd = PATTERN_TERMINALS
    anchors = {a: s1p, b: t1p, c: s2p, dd: t2p}
    return Reduction(dstar, pattern_H(), anchors, (s1p, t1p, s2p, t2p))


def witness_from_linkage(red: Reduction, p1: Sequence[int], p2: Sequence[int]) -> MinorWitness:
    """Minor witness for (pattern, D*) from a linkage of D*'s primed terminals:
    keep both paths and the pendant arcs, then contract each path to one arc."""
    d = red.dstar
    keep = set(zip(p1, p1[1:])) | set(zip(p2, p2[1:]))
    for c in red.terminals:
        keep |= {a for a in d.arcs if c in a and d.degree(a[0] if a[1] == c else a[1]) == 1}
    verts = {x for a in keep for x in a}
    cur = Digraph(frozenset(verts), frozenset(keep))
    steps: List[ContractionStep] = []
    nid = max(d.vertices) + 1
    for p in (tuple(p1), tuple(p2)):
        if len(p) - 1 > 2:
            cur, st, p = contract_two_path(cur, p, nid)
            steps += st
            nid = max(cur.vertices) + 1
        if len(p) - 1 == 2:
            arc = (p[0], p[1]) if is_2_contractible(cur, (p[0], p[1])) else (p[1], p[2])
            steps.append(ContractionStep(arc, nid))
            cur = contract_arc(cur, arc, nid)
            nid += 1
    where = {x: x for x in red.anchors.values()}
    for st in steps:
        for x, now in where.items():
            if now in st.arc:
                where[x] = st.new_vertex
    fixed = {p: where[x] for p, x in red.anchors.items()}
    iso = find_isomorphism(red.pattern, cur, fixed)
    if iso is None:
        raise PreconditionError("linkage paths do not contract to the pattern")
    return MinorWitness(tuple(sorted(verts)), tuple(sorted(keep)), steps, iso)


# ---------------------------------------------------------------------------
# new-path test for a single contraction


def creates_no_new_path(d: Digraph, a: Edge) -> bool:
    if not d.has_arc(*a):
        raise GraphError(f"arc {a} is not in the digraph")
    x, y = a
    va = max(d.vertices) + 1
    q = contract_arc(d, a, va)
    reach = {v: reachable_from(d, v) for v in d.vertices}
    pre = {v: (v,) for v in q.vertices}
    pre[va] = (x, y)
    for p in q.vertices:
        rq = reachable_from(q, p)
        for t in rq:
            if not any(t2 in reach[p2] for p2 in pre[p] for t2 in pre[t]):
                return False
    return True
