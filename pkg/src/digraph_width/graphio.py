"""Line-oriented text format for graphs and digraphs.

    graph            # or: digraph
    v 0
    v 1
    e 0 1            # 'a u v' for digraph arcs

'#' starts a comment.  Duplicate edges/arcs, loops and undeclared
endpoints are load errors.  `format_graph` is canonical (sorted), so
serialization is byte-stable.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from .errors import FormatError
from .graphs import Digraph, Graph


def parse_graph_text(text: str):
    kind = None
    vertices: List[int] = []
    seen_v = set()
    pairs: List[Tuple[int, int]] = []
    seen_p = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if kind is None:
            if parts != ["graph"] and parts != ["digraph"]:
                raise FormatError("first line must be 'graph' or 'digraph'", lineno)
            kind = parts[0]
            continue
        tag = parts[0]
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise FormatError(f"expected integer ids in {line!r}", lineno) from None
        if tag == "v":
            if len(nums) != 1 or nums[0] < 0:
                raise FormatError("expected 'v <id>' with a nonnegative id", lineno)
            if nums[0] in seen_v:
                raise FormatError(f"duplicate vertex {nums[0]}", lineno)
            seen_v.add(nums[0])
            vertices.append(nums[0])
        elif tag in ("e", "a"):
            want = "e" if kind == "graph" else "a"
            if tag != want:
                raise FormatError(f"'{tag}' lines are not allowed in a {kind}", lineno)
            if len(nums) != 2:
                raise FormatError(f"expected '{tag} <u> <v>'", lineno)
            u, v = nums
            if u == v:
                raise FormatError(f"loop at vertex {u}", lineno)
            for x in (u, v):
                if x not in seen_v:
                    raise FormatError(f"undeclared vertex {x}", lineno)
            key = (u, v) if kind == "digraph" else (min(u, v), max(u, v))
            if key in seen_p:
                raise FormatError(f"duplicate {'arc' if kind == 'digraph' else 'edge'} {u} {v}", lineno)
            seen_p.add(key)
            pairs.append(key)
        else:
            raise FormatError(f"unknown line tag {tag!r}", lineno)
    if kind is None:
        raise FormatError("empty input: missing 'graph'/'digraph' header")
    if kind == "graph":
        return Graph(frozenset(vertices), frozenset(pairs))
    return Digraph(frozenset(vertices), frozenset(pairs))


def format_graph(g, comments: Optional[Iterable[str]] = None) -> str:
    lines = []
    if isinstance(g, Digraph):
        lines.append("digraph")
        lines += [f"v {v}" for v in sorted(g.vertices)]
        lines += [f"a {u} {v}" for u, v in sorted(g.arcs)]
    else:
        lines.append("graph")
        lines += [f"v {v}" for v in sorted(g.vertices)]
        lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
    if comments:
        lines += [f"# {c}" for c in comments]
    return "\n".join(lines) + "\n"


def format_provenance(provenance: Dict[int, Tuple[str, str]]) -> List[str]:
    return [f"origin {v} {kind} {src}" for v, (kind, src) in sorted(provenance.items())]


def read_graph(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())
