"""Direct graph algorithms equal to the interpretation formulas.

Each function returns exactly what naive model checking of the matching
formula in `formulas` returns, on every input (not only on constructed
graphs).  Derivations of the less obvious equivalences:

* con(u,v,X), u != v: the cut condition over all Y ⊆ X holds iff v is
  reachable from u inside G[X ∪ {u,v}].  A vertex lying on both sides of a
  cut satisfies it with any neighbour, so membership of u or v in X
  changes nothing.
* con(u,u,X): u has a neighbour in X.
* con is monotone in X, so X is a minimal connection iff con(X) holds and
  con(X - {x}) fails for every x in X.  For u != v this means X ∪ {u,v}
  induces a chordless u-v path with interior X.
"""

from __future__ import annotations

from functools import lru_cache
from typing import FrozenSet, Iterable, List

from ..graphs import Graph


class _Ctx:
    """Per-graph caches shared by the evaluators."""

    def __init__(self, g: Graph):
        self.g = g
        self.nbr = {v: g.neighbors(v) for v in g.vertices}
        self.deg = {v: len(n) for v, n in self.nbr.items()}
        self._alpha1 = None
        self._gadgets = None
        self._rho_cycles = None

    def alpha1_set(self) -> FrozenSet[int]:
        if self._alpha1 is None:
            deg = self.deg
            self._alpha1 = frozenset(
                v for v in self.g.vertices
                if deg[v] != 1 and all(deg[x] != 1 for x in self.nbr[v])
            )
        return self._alpha1

    def gadgets(self) -> List[FrozenSet[int]]:
        """All 4-sets satisfying crgadg."""
        if self._gadgets is None:
            found = set()
            a1 = self.alpha1_set()
            nbr = self.nbr
            for a in self.g.vertices:
                if a in a1:
                    continue
                ns = sorted(nbr[a])
                for i, b in enumerate(ns):
                    for d in ns[i + 1:]:
                        for c in nbr[b] & nbr[d]:
                            if c != a:
                                C = frozenset((a, b, c, d))
                                if C not in found and _is_crgadg(self, C):
                                    found.add(C)
            self._gadgets = sorted(found, key=sorted)
        return self._gadgets

    def pendant_holders(self) -> FrozenSet[int]:
        return frozenset(z for z in self.g.vertices if any(self.nbr[w] == {z} for w in self.nbr[z]))

    def rho_cycles(self) -> List[FrozenSet[int]]:
        """All vertex sets U with rho(U): induced cycles whose every edge has a pendant-holding end."""
        if self._rho_cycles is None:
            P = self.pendant_holders()
            nbr = self.nbr
            found = set()

            def dfs(s, path, onpath):
                last = path[-1]
                for w in sorted(nbr[last]):
                    if w <= s or w in onpath or not (last in P or w in P):
                        continue
                    if any(p in nbr[w] for p in path[1:-1]):
                        continue
                    if len(path) >= 2 and s in nbr[w]:
                        if s in P or w in P:
                            found.add(frozenset(path + [w]))
                        continue
                    path.append(w)
                    onpath.add(w)
                    dfs(s, path, onpath)
                    path.pop()
                    onpath.discard(w)

            for s in sorted(self.g.vertices):
                dfs(s, [s], {s})
            self._rho_cycles = sorted((U for U in found if _is_rho(self, U)), key=sorted)
        return self._rho_cycles


@lru_cache(maxsize=64)
def _ctx(g: Graph) -> _Ctx:
    return _Ctx(g)


def _check_vertices(g: Graph, *vs):
    for v in vs:
        if v not in g.vertices:
            raise KeyError(f"vertex {v} not in graph")


# -- degree ------------------------------------------------------------------

def deg1(g: Graph, v: int) -> bool:
    return g.degree(v) == 1


def deg2(g: Graph, v: int) -> bool:
    return g.degree(v) == 2


# -- connectivity ------------------------------------------------------------

def con(g: Graph, u: int, v: int, X: Iterable[int]) -> bool:
    X = frozenset(X)
    _check_vertices(g, u, v, *X)
    nbr = _ctx(g).nbr
    if u == v:
        return bool(nbr[u] & X)
    allowed = X | {u, v}
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in nbr[x]:
            if y in allowed and y not in seen:
                if y == v:
                    return True
                seen.add(y)
                stack.append(y)
    return False


def mcon(g: Graph, u: int, v: int, X: Iterable[int]) -> bool:
    X = frozenset(X)
    return con(g, u, v, X) and not any(con(g, u, v, X - {x}) for x in X)


# -- I1 ----------------------------------------------------------------------

def alpha1(g: Graph, v: int) -> bool:
    _check_vertices(g, v)
    return v in _ctx(g).alpha1_set()


def _is_crgadg(ctx: _Ctx, C: FrozenSet[int]) -> bool:
    if len(C) != 4:
        return False
    if any(len(ctx.nbr[x] & C) != 2 for x in C):
        return False
    return not (C & ctx.alpha1_set())


def crgadg(g: Graph, C: Iterable[int]) -> bool:
    C = frozenset(C)
    _check_vertices(g, *C)
    return _is_crgadg(_ctx(g), C)


def induced_paths(g: Graph, u: int, v: int, interior_ok: FrozenSet[int]):
    """Interiors (as tuples) of chordless u-v paths whose interior lies in interior_ok."""
    nbr = _ctx(g).nbr
    if u == v:
        return
    if v in nbr[u]:
        yield ()
        return
    path = [u]
    onpath = {u}

    def dfs():
        last = path[-1]
        for w in sorted(nbr[last]):
            if w in onpath:
                continue
            if any(p in nbr[w] for p in path[:-1]):
                continue
            if w == v:
                yield tuple(path[1:])
                continue
            if w not in interior_ok:
                continue
            if v in nbr[w]:
                # the next step must end the path
                if not any(p in nbr[v] for p in path):
                    yield tuple(path[1:]) + (w,)
                continue
            path.append(w)
            onpath.add(w)
            yield from dfs()
            path.pop()
            onpath.discard(w)

    yield from dfs()


def _gadget_ok(gadgets, X: FrozenSet[int]) -> bool:
    for C in gadgets:
        k = len(C & X)
        if k and k != 3:
            return False
    return True


def beta1(g: Graph, u: int, v: int) -> bool:
    _check_vertices(g, u, v)
    ctx = _ctx(g)
    a1 = ctx.alpha1_set()
    marked = frozenset(g.vertices) - a1
    gadgets = ctx.gadgets()
    if u == v:
        on_gadget = set().union(*gadgets) if gadgets else set()
        return any(w in marked and w not in on_gadget for w in ctx.nbr[u])
    interior_ok = marked - {u, v}
    for inner in induced_paths(g, u, v, interior_ok):
        if _gadget_ok(gadgets, frozenset(inner)):
            return True
    return False


# -- I2 ----------------------------------------------------------------------

def alpha2(g: Graph, v: int) -> bool:
    _check_vertices(g, v)
    nbr = _ctx(g).nbr
    return sum(1 for w in nbr[v] if nbr[w] == {v}) >= 2


def has_pendant(g: Graph, z: int) -> bool:
    _check_vertices(g, z)
    nbr = _ctx(g).nbr
    return any(nbr[w] == {z} for w in nbr[z])


def _is_cycle(ctx: _Ctx, U: FrozenSet[int]) -> bool:
    if not U:
        return False
    if any(len(ctx.nbr[x] & U) != 2 for x in U):
        return False
    start = min(U)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in ctx.nbr[x] & U:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == U


def _is_rho(ctx: _Ctx, U: FrozenSet[int]) -> bool:
    if not _is_cycle(ctx, U):
        return False
    P = ctx.pendant_holders()
    return all(x in P or y in P for x in U for y in ctx.nbr[x] & U)


def cycle(g: Graph, U: Iterable[int]) -> bool:
    U = frozenset(U)
    _check_vertices(g, *U)
    return _is_cycle(_ctx(g), U)


def rho(g: Graph, U: Iterable[int]) -> bool:
    U = frozenset(U)
    _check_vertices(g, *U)
    return _is_rho(_ctx(g), U)


def beta2(g: Graph, u: int, w: int) -> bool:
    _check_vertices(g, u, w)
    ctx = _ctx(g)
    cycles = ctx.rho_cycles()
    near_u = [i for i, U in enumerate(cycles) if ctx.nbr[u] & U]
    near_w = [j for j, W in enumerate(cycles) if ctx.nbr[w] & W]
    for i in near_u:
        reach = set().union(*(ctx.nbr[x] for x in cycles[i]))
        for j in near_w:
            if reach & cycles[j]:
                return True
    return False


# -- I3 ----------------------------------------------------------------------

def alpha3(g: Graph, v: int) -> bool:
    return not deg2(g, v)


def beta3(g: Graph, u: int, v: int) -> bool:
    _check_vertices(g, u, v)
    ctx = _ctx(g)
    return con(g, u, v, frozenset(x for x, d in ctx.deg.items() if d == 2))


def gadget_cycles(g: Graph) -> List[FrozenSet[int]]:
    """Every 4-set of g satisfying crgadg, sorted."""
    return list(_ctx(g).gadgets())


def rho_cycles(g: Graph) -> List[FrozenSet[int]]:
    return list(_ctx(g).rho_cycles())
