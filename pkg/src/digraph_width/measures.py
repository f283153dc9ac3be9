"""Two-valued digraph width measures, 3-colouring encodings, orienters and k-expressions."""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import FormatError, GraphError, PreconditionError
from .graphs import (
    INFINITY, Digraph, Edge, Graph, bfs_distances, orient_acyclic, underlying, v3,
)

# ---------------------------------------------------------------------------
# growth functions


@dataclass(frozen=True)
class GrowthFunction:
    """Non-decreasing total function on nonnegative integers."""

    kind: str = "identity"  # identity | double | pow2 | const
    c: int = 0

    def __post_init__(self):
        if self.kind not in ("identity", "double", "pow2", "const"):
            raise ValueError(f"unknown growth function {self.kind!r}")
        if self.kind == "const" and self.c < 0:
            raise ValueError("const growth needs c >= 0")

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("growth functions take nonnegative arguments")
        if self.kind == "identity":
            return n
        if self.kind == "double":
            return min(2 * n, sys.maxsize)
        if self.kind == "pow2":
            return sys.maxsize if n >= sys.maxsize.bit_length() else min(1 << n, sys.maxsize)
        return self.c

    @classmethod
    def parse(cls, text: str) -> "GrowthFunction":
        text = text.strip()
        if text.startswith("const:"):
            try:
                return cls("const", int(text[6:]))
            except ValueError:
                raise FormatError(f"bad constant in growth function {text!r}") from None
        if text in ("identity", "double", "pow2"):
            return cls(text)
        raise FormatError(f"unknown growth function {text!r}")

    def __str__(self) -> str:
        return f"const:{self.c}" if self.kind == "const" else self.kind


IDENTITY = GrowthFunction()


# ---------------------------------------------------------------------------
# results and certificates


@dataclass(frozen=True)
class MeasureResult:
    measure: str
    value: int
    evidence: Tuple[Tuple[str, str], ...] = ()

    def evidence_dict(self) -> Dict[str, str]:
        return dict(self.evidence)


@dataclass(frozen=True)
class ColoringCertificate:
    s1: FrozenSet[int]
    s2: FrozenSet[int]
    s3: FrozenSet[int]

    @property
    def classes(self) -> Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]:
        return (self.s1, self.s2, self.s3)

    def color_of(self) -> Dict[int, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}

    @classmethod
    def from_colors(cls, colors: Dict[int, int]) -> "ColoringCertificate":
        parts = [frozenset(v for v, c in colors.items() if c == i) for i in range(3)]
        return cls(*parts)

    def to_text(self) -> str:
        return "".join(
            f"S{i + 1}:" + "".join(f" {v}" for v in sorted(c)) + "\n" for i, c in enumerate(self.classes)
        )

    @classmethod
    def from_text(cls, text: str) -> "ColoringCertificate":
        found: Dict[int, FrozenSet[int]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(":")
            if head not in ("S1", "S2", "S3") or not _:
                raise FormatError(f"expected 'S1:', 'S2:' or 'S3:' line, got {raw!r}", lineno)
            idx = int(head[1]) - 1
            if idx in found:
                raise FormatError(f"duplicate {head} line", lineno)
            try:
                found[idx] = frozenset(int(t) for t in rest.split())
            except ValueError:
                raise FormatError(f"bad vertex id in {raw!r}", lineno) from None
        if len(found) != 3:
            raise FormatError("a colouring certificate needs S1, S2 and S3 lines")
        cert = cls(found[0], found[1], found[2])
        a, b, c = cert.classes
        if a & b or a & c or b & c:
            raise FormatError("colour classes overlap")
        return cert


def monochromatic_edge(g: Graph, cert: ColoringCertificate) -> Optional[Edge]:
    col = cert.color_of()
    for u, v in sorted(g.edges):
        if col.get(u) is not None and col.get(u) == col.get(v):
            return (u, v)
    return None


def is_valid_coloring(g: Graph, cert: ColoringCertificate) -> bool:
    col = cert.color_of()
    return set(col) == set(g.vertices) and monochromatic_edge(g, cert) is None


# ---------------------------------------------------------------------------
# delta_dist and its alternating variant


def _v3_distance_violation(d: Digraph, g: GrowthFunction):
    big = sorted(v3(d))
    need = g(2 * len(big))
    u_g = underlying(d)
    for i, u in enumerate(big):
        dist = bfs_distances(u_g, u)
        for v in big[i + 1:]:
            k = dist.get(v, INFINITY)
            if k < need:
                return (u, v, k, need)
    return None


def delta_dist(d: Digraph, g: GrowthFunction) -> MeasureResult:
    """1 if every two V3 vertices are at distance >= g(2|V3|) in U(D), else |V(D)|."""
    bad = _v3_distance_violation(d, g)
    if bad is None:
        return MeasureResult("dist", 1, (("pairs", "all far"), ("threshold", str(g(2 * len(v3(d)))))))
    u, v, k, need = bad
    return MeasureResult("dist", len(d.vertices),
                         (("pair", f"{u} {v}"), ("distance", str(k)), ("threshold", str(need))))


def v3_two_paths(d: Digraph) -> List[Tuple[int, ...]]:
    """2-paths of U(D) whose two ends lie in V3, each once in its smaller orientation."""
    big = v3(d)
    nb = {v: d.in_adj[v] | d.out_adj[v] for v in d.vertices}
    found = set()
    for x in big:
        for y in nb[x]:
            path = [x, y]
            while path[-1] not in big and len(nb[path[-1]]) == 2:
                (nxt,) = nb[path[-1]] - {path[-2]}
                if nxt in path[1:]:
                    break
                path.append(nxt)
            if path[-1] in big:
                found.add(min(tuple(path), tuple(reversed(path))))
    return sorted(found)


def _is_local_extremum(d: Digraph, v: int) -> bool:
    return not d.in_adj[v] or not d.out_adj[v]


def delta_dist_alt(d: Digraph, g: GrowthFunction) -> MeasureResult:
    """delta_dist, additionally requiring every 2-path between V3 vertices to alternate."""
    base = delta_dist(d, g)
    if base.value != 1:
        return MeasureResult("dist-alt", base.value, base.evidence)
    for path in v3_two_paths(d):
        for v in path[1:-1]:
            if not _is_local_extremum(d, v):
                return MeasureResult("dist-alt", len(d.vertices),
                                     (("path", " ".join(map(str, path))), ("vertex", str(v))))
    return MeasureResult("dist-alt", 1, base.evidence + (("two-paths", "all alternating"),))


def alternating_subdivision(g: Graph, internal: int) -> Digraph:
    """Bipartite g with every edge replaced by a path with `internal` (even) new vertices,
    arcs alternating along the path, one colour class all sources and the other all sinks."""
    if internal < 0 or internal % 2:
        raise PreconditionError("internal vertex count must be even and nonnegative")
    side: Dict[int, int] = {}
    for s in g.sorted_vertices():
        if s in side:
            continue
        side[s] = 0
        queue = [s]
        for x in queue:
            for y in sorted(g.adj[x]):
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    raise PreconditionError("alternating subdivision needs a bipartite graph")
    nxt = max(g.vertices, default=-1) + 1
    arcs = []
    for u, v in sorted(g.edges):
        if side[u] == 1:
            u, v = v, u
        chain = [u] + list(range(nxt, nxt + internal)) + [v]
        nxt += internal
        for i, (a, b) in enumerate(zip(chain, chain[1:])):
            arcs.append((a, b) if i % 2 == 0 else (b, a))
    first_new = max(g.vertices, default=-1) + 1
    return Digraph.from_arcs(arcs, vertices=[*g.sorted_vertices(), *range(first_new, nxt)])


# ---------------------------------------------------------------------------
# 3-colouring encodings


def _strict_reach(d: Digraph, s: int) -> FrozenSet[int]:
    """Vertices t with a directed path s ->+ t (s itself only via a cycle)."""
    seen = set()
    stack = list(d.out_adj[s])
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(d.out_adj[x])
    return frozenset(seen)


def encoding_violation(d: Digraph) -> Optional[Tuple[int, int]]:
    """Least (s, t) with s, t in V3, s ->+ t, s not a source and t not a sink."""
    big = sorted(v3(d))
    for s in big:
        if d.is_source(s):
            continue
        reach = _strict_reach(d, s)
        for t in big:
            if t in reach and not d.is_sink(t):
                return (s, t)
    return None


def encodes_3coloring(d: Digraph) -> Tuple[bool, Optional[Tuple[int, int]]]:
    bad = encoding_violation(d)
    return bad is None, bad


def delta_3col(d: Digraph) -> MeasureResult:
    bad = encoding_violation(d)
    if bad is None:
        big = v3(d)
        return MeasureResult("3col", 1, (
            ("sources", " ".join(str(v) for v in sorted(big) if d.is_source(v))),
            ("sinks", " ".join(str(v) for v in sorted(big) if d.is_sink(v) and not d.is_source(v))),
        ))
    return MeasureResult("3col", len(d.vertices), (("path", f"{bad[0]} {bad[1]}"),))


def encode_coloring(g: Graph, cert: ColoringCertificate) -> Digraph:
    """Edges at S1 point away from S1, edges at S3 point into S3."""
    col = cert.color_of()
    missing = sorted(set(g.vertices) - set(col))
    if missing:
        raise PreconditionError(f"vertex {missing[0]} has no colour")
    bad = monochromatic_edge(g, cert)
    if bad is not None:
        raise PreconditionError(f"monochromatic edge {bad[0]}-{bad[1]}")
    arcs = []
    for u, v in sorted(g.edges):
        arcs.append((u, v) if col[u] < col[v] else (v, u))
    return Digraph.from_arcs(arcs, vertices=g.sorted_vertices())


def extract_coloring(d: Digraph) -> ColoringCertificate:
    """Sources of V3 to S1, sinks to S3, the rest of V3 to S2, then greedy on low-degree vertices."""
    bad = encoding_violation(d)
    if bad is not None:
        raise PreconditionError(f"digraph does not encode a 3-colouring: path {bad[0]} ->+ {bad[1]}")
    u_g = underlying(d)
    col: Dict[int, int] = {}
    big = v3(d)
    for v in sorted(big):
        col[v] = 0 if d.is_source(v) else 2 if d.is_sink(v) else 1
    for v in u_g.sorted_vertices():
        if v in col:
            continue
        used = {col[w] for w in u_g.adj[v] if w in col}
        col[v] = min(c for c in range(3) if c not in used)
    return ColoringCertificate.from_colors(col)


def _first_coloring(order: Sequence[int], nbr: Dict[int, FrozenSet[int]],
                    prefix: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    """Lexicographically least proper colouring of `order` extending `prefix`."""
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[w] for w in nbr[v] if pos[w] < i] for i, v in enumerate(order)]
    cols = list(prefix)
    for i in range(len(prefix)):
        if any(cols[j] == cols[i] for j in earlier[i]):
            return None

    def go(i):
        if i == len(order):
            return True
        for c in range(3):
            if all(cols[j] != c for j in earlier[i]):
                cols.append(c)
                if go(i + 1):
                    return True
                cols.pop()
        return False

    return tuple(cols) if go(len(prefix)) else None


def brute_force_coloring(g: Graph, jobs: int = 1) -> Optional[ColoringCertificate]:
    """Least proper 3-colouring in lexicographic order (vertices by id, colours S1 < S2 < S3).

    With jobs > 1 the colouring space is split by the colours of the first
    vertices; the least witness is chosen by prefix order, so the answer does
    not depend on `jobs`."""
    order = g.sorted_vertices()
    nbr = {v: frozenset(g.adj[v]) for v in order}
    if jobs <= 1 or len(order) < 3:
        cols = _first_coloring(order, nbr, ())
    else:
        width = min(len(order), 3)
        prefixes = list(product(range(3), repeat=width))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_first_coloring, [order] * len(prefixes), [nbr] * len(prefixes), prefixes))
        cols = next((r for r in results if r is not None), None)
    if cols is None:
        return None
    return ColoringCertificate.from_colors(dict(zip(order, cols)))


def decide_3col_route(d: Digraph, jobs: int = 1) -> Tuple[Optional[ColoringCertificate], str]:
    """(colouring or None, route) where route is "encoded" for the polynomial path."""
    if encoding_violation(d) is None:
        return extract_coloring(d), "encoded"
    return brute_force_coloring(underlying(d), jobs), "search"


def decide_3col(d: Digraph, jobs: int = 1) -> Optional[ColoringCertificate]:
    return decide_3col_route(d, jobs)[0]


# ---------------------------------------------------------------------------
# orienters


def _greedy_encode(g: Graph) -> Digraph:
    cert = brute_force_coloring(g)
    if cert is None:
        raise PreconditionError("greedy-encode failed: the graph is not 3-colourable")
    return encode_coloring(g, cert)


ORIENTERS: Dict[str, Callable[[Graph], Digraph]] = {
    "acyclic": orient_acyclic,
    "greedy-encode": _greedy_encode,
}


def orient_with(name: str, g: Graph) -> Digraph:
    try:
        r = ORIENTERS[name]
    except KeyError:
        raise PreconditionError(f"unknown orienter {name!r}") from None
    return r(g)


MEASURES = ("dist", "dist-alt", "3col")


def measure(name: str, d: Digraph, g: GrowthFunction = IDENTITY) -> MeasureResult:
    if name == "dist":
        return delta_dist(d, g)
    if name == "dist-alt":
        return delta_dist_alt(d, g)
    if name == "3col":
        return delta_3col(d)
    raise PreconditionError(f"unknown measure {name!r}")


# ---------------------------------------------------------------------------
# k-expressions


@dataclass(frozen=True)
class Create:
    label: int


@dataclass(frozen=True)
class Union:
    left: "KExpression"
    right: "KExpression"


@dataclass(frozen=True)
class AddArcs:
    i: int
    j: int
    e: "KExpression"


@dataclass(frozen=True)
class Relabel:
    i: int
    j: int
    e: "KExpression"


KExpression = object  # Create | Union | AddArcs | Relabel


@dataclass(frozen=True)
class LabeledDigraph:
    digraph: Digraph
    labels: Dict[int, int] = field(hash=False)


def labels_used(e) -> FrozenSet[int]:
    out = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Create):
            out.add(x.label)
        elif isinstance(x, Union):
            stack += [x.left, x.right]
        else:
            out |= {x.i, x.j}
            stack.append(x.e)
    return frozenset(out)


def eval_k_expression(e, k: Optional[int] = None) -> LabeledDigraph:
    """Vertices are numbered 0..n-1 left to right; union shifts the right operand."""
    used = labels_used(e)
    if any(lab < 1 for lab in used):
        raise GraphError("labels start at 1")
    if k is not None and used and max(used) > k:
        raise GraphError(f"label {max(used)} exceeds k = {k}")

    def ev(x) -> Tuple[int, set, Dict[int, int]]:
        if isinstance(x, Create):
            return 1, set(), {0: x.label}
        if isinstance(x, Union):
            n1, a1, l1 = ev(x.left)
            n2, a2, l2 = ev(x.right)
            arcs = a1 | {(u + n1, v + n1) for u, v in a2}
            labels = dict(l1)
            labels.update({v + n1: lab for v, lab in l2.items()})
            return n1 + n2, arcs, labels
        if isinstance(x, AddArcs):
            if x.i == x.j:
                raise GraphError("addarcs needs two different labels")
            n, arcs, labels = ev(x.e)
            src = [v for v, lab in labels.items() if lab == x.i]
            dst = [v for v, lab in labels.items() if lab == x.j]
            return n, arcs | {(u, v) for u in src for v in dst}, labels
        if isinstance(x, Relabel):
            n, arcs, labels = ev(x.e)
            return n, arcs, {v: (x.j if lab == x.i else lab) for v, lab in labels.items()}
        raise GraphError(f"not a k-expression node: {x!r}")

    n, arcs, labels = ev(e)
    return LabeledDigraph(Digraph.from_arcs(sorted(arcs), vertices=range(n)), labels)


def symmetric_clique_expression(n: int):
    """2-label expression for the symmetric orientation of K_n."""
    if n < 1:
        raise ValueError("n must be positive")
    e = Create(1)
    for _ in range(n - 1):
        e = Relabel(2, 1, AddArcs(2, 1, AddArcs(1, 2, Union(e, Create(2)))))
    return e


def format_k_expression(e) -> str:
    if isinstance(e, Create):
        return f"(create {e.label})"
    if isinstance(e, Union):
        return f"(union {format_k_expression(e.left)} {format_k_expression(e.right)})"
    name = "addarcs" if isinstance(e, AddArcs) else "relabel"
    return f"({name} {e.i} {e.j} {format_k_expression(e.e)})"


def parse_k_expression(text: str):
    tokens: List[Tuple[str, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split(";", 1)[0]
        col = 0
        while col < len(line):
            ch = line[col]
            if ch.isspace():
                col += 1
            elif ch in "()":
                tokens.append((ch, lineno, col + 1))
                col += 1
            else:
                start = col
                while col < len(line) and not line[col].isspace() and line[col] not in "()":
                    col += 1
                tokens.append((line[start:col], lineno, start + 1))
    pos = 0

    def expect_int():
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of k-expression")
        tok, ln, cl = tokens[pos]
        if not tok.isdigit():
            raise FormatError(f"expected a label, got {tok!r}", ln, cl)
        pos += 1
        return int(tok)

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of k-expression")
        tok, ln, cl = tokens[pos]
        if tok != "(":
            raise FormatError(f"expected '(', got {tok!r}", ln, cl)
        pos += 1
        if pos >= len(tokens):
            raise FormatError("unexpected end of k-expression")
        op, ln, cl = tokens[pos]
        pos += 1
        if op == "create":
            node = Create(expect_int())
        elif op == "union":
            node = Union(expr(), expr())
        elif op in ("addarcs", "relabel"):
            i, j = expect_int(), expect_int()
            node = (AddArcs if op == "addarcs" else Relabel)(i, j, expr())
        else:
            raise FormatError(f"unknown operation {op!r}", ln, cl)
        if pos >= len(tokens) or tokens[pos][0] != ")":
            where = tokens[pos][1:] if pos < len(tokens) else (None, None)
            raise FormatError("expected ')'", *where)
        pos += 1
        return node

    node = expr()
    if pos != len(tokens):
        _, ln, cl = tokens[pos]
        raise FormatError("trailing input after k-expression", ln, cl)
    return node
