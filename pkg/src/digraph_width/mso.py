"""MSO1 formulas over {adj} or {arc}: syntax, s-expression I/O, naive model checking.

Element variables start with a lowercase letter, set variables with an
uppercase letter.  Formulas are immutable trees; transformers in this
package share identical subtrees, so several helpers (size, free
variables, vocabulary) memoize on node identity and stay linear in the
number of *distinct* nodes.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from .errors import BudgetExceeded, FormatError, UnboundVariableError, VocabularyError
from .graphs import Digraph, Graph

ELEM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
SET_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")

DEFAULT_SET_BUDGET = 10**7


def is_elem_var(name: str) -> bool:
    return bool(ELEM_RE.match(name))


def is_set_var(name: str) -> bool:
    return bool(SET_RE.match(name))


# ---------------------------------------------------------------------------
# AST


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Adj(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class Arc(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class In(Formula):
    x: str
    X: str


@dataclass(frozen=True)
class Eq(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class Not(Formula):
    f: Formula


@dataclass(frozen=True)
class And(Formula):
    f: Formula
    g: Formula


@dataclass(frozen=True)
class Or(Formula):
    f: Formula
    g: Formula


@dataclass(frozen=True)
class Imp(Formula):
    f: Formula
    g: Formula


@dataclass(frozen=True)
class ExistsElem(Formula):
    x: str
    f: Formula


@dataclass(frozen=True)
class ForallElem(Formula):
    x: str
    f: Formula


@dataclass(frozen=True)
class ExistsSet(Formula):
    X: str
    f: Formula


@dataclass(frozen=True)
class ForallSet(Formula):
    X: str
    f: Formula


ATOMS = (Adj, Arc, In, Eq)
BINARY = (And, Or, Imp)
QUANTIFIERS = (ExistsElem, ForallElem, ExistsSet, ForallSet)

_KEYWORD = {
    Adj: "adj", Arc: "arc", In: "in", Eq: "=", Not: "not", And: "and", Or: "or",
    Imp: "imp", ExistsElem: "exists", ForallElem: "forall", ExistsSet: "existsS",
    ForallSet: "forallS",
}


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.f,)
    if isinstance(f, BINARY):
        return (f.f, f.g)
    if isinstance(f, QUANTIFIERS):
        return (f.f,)
    return ()


def binder(f: Formula) -> Optional[str]:
    if isinstance(f, (ExistsElem, ForallElem)):
        return f.x
    if isinstance(f, (ExistsSet, ForallSet)):
        return f.X
    return None


def atom_vars(f: Formula) -> Tuple[str, ...]:
    if isinstance(f, In):
        return (f.x, f.X)
    return (f.x, f.y)


def conj(*fs: Formula) -> Formula:
    """Right-nested binary conjunction."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(*fs: Formula) -> Formula:
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def exists_elems(names: Iterable[str], body: Formula) -> Formula:
    for x in reversed(list(names)):
        body = ExistsElem(x, body)
    return body


def forall_elems(names: Iterable[str], body: Formula) -> Formula:
    for x in reversed(list(names)):
        body = ForallElem(x, body)
    return body


def neq(x: str, y: str) -> Formula:
    return Not(Eq(x, y))


# ---------------------------------------------------------------------------
# DAG-aware structural queries


def _postorder(f: Formula):
    """Distinct nodes of the DAG under f, children before parents."""
    seen = set()
    order = []
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for c in children(node):
            if id(c) not in seen:
                stack.append((c, False))
    return order


def formula_size(f: Formula) -> int:
    """Number of nodes of the formula tree (shared subtrees counted with multiplicity)."""
    size: Dict[int, int] = {}
    for node in _postorder(f):
        size[id(node)] = 1 + sum(size[id(c)] for c in children(node))
    return size[id(f)]


def free_vars_map(f: Formula) -> Dict[int, FrozenSet[str]]:
    fv: Dict[int, FrozenSet[str]] = {}
    for node in _postorder(f):
        if isinstance(node, ATOMS):
            fv[id(node)] = frozenset(atom_vars(node))
        else:
            acc = frozenset().union(*(fv[id(c)] for c in children(node)))
            b = binder(node)
            fv[id(node)] = acc - {b} if b else acc
    return fv


def free_vars(f: Formula) -> FrozenSet[str]:
    return free_vars_map(f)[id(f)]


def all_var_names(f: Formula) -> FrozenSet[str]:
    names = set()
    for node in _postorder(f):
        if isinstance(node, ATOMS):
            names.update(atom_vars(node))
        b = binder(node)
        if b:
            names.add(b)
    return frozenset(names)


def vocabulary(f: Formula) -> Optional[str]:
    """'adj', 'arc' or None; raises VocabularyError when both occur."""
    has_adj = has_arc = False
    for node in _postorder(f):
        if isinstance(node, Adj):
            has_adj = True
        elif isinstance(node, Arc):
            has_arc = True
    if has_adj and has_arc:
        raise VocabularyError("formula mixes adj and arc atoms")
    return "adj" if has_adj else "arc" if has_arc else None


def set_depth(f: Formula) -> int:
    depth: Dict[int, int] = {}
    for node in _postorder(f):
        d = max((depth[id(c)] for c in children(node)), default=0)
        depth[id(node)] = d + (1 if isinstance(node, (ExistsSet, ForallSet)) else 0)
    return depth[id(f)]


def count_set_quantifiers(f: Formula) -> int:
    """Set quantifier occurrences in the tree (with multiplicity)."""
    cnt: Dict[int, int] = {}
    for node in _postorder(f):
        own = 1 if isinstance(node, (ExistsSet, ForallSet)) else 0
        cnt[id(node)] = own + sum(cnt[id(c)] for c in children(node))
    return cnt[id(f)]


def map_dag(f: Formula, leaf: Callable[[Formula], Formula]) -> Formula:
    """Rebuild f bottom-up, replacing every atom by leaf(atom); shares subtrees."""
    out: Dict[int, Formula] = {}
    for node in _postorder(f):
        if isinstance(node, ATOMS):
            out[id(node)] = leaf(node)
        else:
            kids = [out[id(c)] for c in children(node)]
            if all(k is c for k, c in zip(kids, children(node))):
                out[id(node)] = node
            else:
                out[id(node)] = _rebuild(node, kids)
    return out[id(f)]


def _rebuild(node: Formula, kids: List[Formula]) -> Formula:
    if isinstance(node, Not):
        return Not(kids[0])
    if isinstance(node, BINARY):
        return type(node)(kids[0], kids[1])
    return type(node)(binder(node), kids[0])


# ---------------------------------------------------------------------------
# capture-avoiding renaming of free variables


def rename_free(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Substitute free variable names; bound variables that would capture are renamed."""
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return f
    for k, v in mapping.items():
        if is_elem_var(k) != is_elem_var(v):
            raise VocabularyError(f"cannot substitute {v!r} for {k!r}: variable kinds differ")
    taken = set(all_var_names(f)) | set(mapping.values())
    cache: Dict[Tuple[int, tuple], Formula] = {}

    def fresh(name):
        k = 1
        while f"{name}_{k}" in taken:
            k += 1
        new = f"{name}_{k}"
        taken.add(new)
        return new

    def go(node, m):
        key = (id(node), tuple(sorted(m.items())))
        hit = cache.get(key)
        if hit is not None:
            return hit
        if isinstance(node, ATOMS):
            args = [m.get(a, a) for a in atom_vars(node)]
            res = node if args == list(atom_vars(node)) else type(node)(*args)
        elif isinstance(node, Not):
            res = Not(go(node.f, m))
        elif isinstance(node, BINARY):
            res = type(node)(go(node.f, m), go(node.g, m))
        else:
            b = binder(node)
            inner = {k: v for k, v in m.items() if k != b}
            if b in inner.values():
                nb = fresh(b)
                inner[b] = nb
                res = type(node)(nb, go(node.f, inner))
            else:
                res = type(node)(b, go(node.f, inner)) if inner else node
        cache[key] = res
        return res

    return go(f, mapping)


# ---------------------------------------------------------------------------
# serialization and parsing


def serialize_formula(f: Formula) -> str:
    parts: List[str] = []

    def go(node):
        kw = _KEYWORD[type(node)]
        if isinstance(node, ATOMS):
            parts.append(f"({kw} {' '.join(atom_vars(node))})")
        elif isinstance(node, Not):
            parts.append("(not ")
            go(node.f)
            parts.append(")")
        elif isinstance(node, BINARY):
            parts.append(f"({kw} ")
            go(node.f)
            parts.append(" ")
            go(node.g)
            parts.append(")")
        else:
            parts.append(f"({kw} {binder(node)} ")
            go(node.f)
            parts.append(")")

    go(f)
    return "".join(parts)


def _tokenize(text: str):
    """Tokens as (text, line, column); ';' starts a comment."""
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
        elif ch.isspace():
            col, i = col + 1, i + 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append((ch, line, col))
            col, i = col + 1, i + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            tokens.append((text[i:j], line, col))
            col += j - i
            i = j
    return tokens, line, col


_ARITY = {
    "exists": ("e", "f"), "forall": ("e", "f"), "existsS": ("S", "f"), "forallS": ("S", "f"),
    "and": ("f", "f"), "or": ("f", "f"), "imp": ("f", "f"), "not": ("f",),
    "adj": ("e", "e"), "arc": ("e", "e"), "in": ("e", "S"), "=": ("e", "e"),
}
_CTOR = {
    "exists": ExistsElem, "forall": ForallElem, "existsS": ExistsSet, "forallS": ForallSet,
    "and": And, "or": Or, "imp": Imp, "not": Not, "adj": Adj, "arc": Arc, "in": In, "=": Eq,
}


def parse_formula(text: str, *, sentence: bool = False, free: Optional[Iterable[str]] = None) -> Formula:
    """Parse the s-expression grammar.  With sentence=True (or an explicit `free`
    whitelist) undeclared free variables are an error."""
    tokens, end_line, end_col = _tokenize(text)
    pos = 0

    def err(msg, tok=None):
        if tok is None:
            raise FormatError(msg, end_line, end_col)
        raise FormatError(msg, tok[1], tok[2])

    def expect_var(kind, tok):
        name = tok[0]
        if kind == "e" and not is_elem_var(name):
            err(f"expected element variable, got {name!r}", tok)
        if kind == "S" and not is_set_var(name):
            err(f"expected set variable, got {name!r}", tok)
        return name

    def form():
        nonlocal pos
        if pos >= len(tokens):
            err("unexpected end of input")
        tok = tokens[pos]
        if tok[0] != "(":
            err(f"expected '(', got {tok[0]!r}", tok)
        pos += 1
        if pos >= len(tokens):
            err("unexpected end of input")
        head = tokens[pos]
        if head[0] not in _ARITY:
            err(f"unknown operator {head[0]!r}", head)
        pos += 1
        args = []
        for kind in _ARITY[head[0]]:
            if pos >= len(tokens):
                err("unexpected end of input")
            if kind == "f":
                args.append(form())
            else:
                t = tokens[pos]
                if t[0] in "()":
                    err(f"expected variable, got {t[0]!r}", t)
                args.append(expect_var(kind, t))
                pos += 1
        if pos >= len(tokens):
            err("unexpected end of input: missing ')'")
        if tokens[pos][0] != ")":
            err(f"expected ')', got {tokens[pos][0]!r}", tokens[pos])
        pos += 1
        return _CTOR[head[0]](*args)

    f = form()
    if pos != len(tokens):
        err("trailing input after formula", tokens[pos])
    vocabulary(f)
    if sentence or free is not None:
        allowed = frozenset(free or ())
        extra = free_vars(f) - allowed
        if extra:
            raise UnboundVariableError(f"unbound variables: {', '.join(sorted(extra))}")
    return f


# ---------------------------------------------------------------------------
# naive model checking

Assignment = Mapping[str, Union[int, Iterable[int]]]


def _subset_test(f: Formula) -> Optional[Tuple[str, str]]:
    """Recognize (forall z (imp (in z Y) (in z S))) and return (Y, S)."""
    if isinstance(f, ForallElem) and isinstance(f.f, Imp):
        a, b = f.f.f, f.f.g
        if isinstance(a, In) and isinstance(b, In) and a.x == f.x and b.x == f.x and a.X != b.X:
            return a.X, b.X
    return None


def _guard_bound(qvar: str, guard: Formula) -> Optional[str]:
    """If guard forces qvar to be a subset of another set variable S, return S."""
    cands = [guard]
    if isinstance(guard, And):
        cands = [guard.f, guard.g]
    for c in cands:
        st = _subset_test(c)
        if st and st[0] == qvar and st[1] != qvar:
            return st[1]
    return None


def _submasks(mask: int):
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Checker:
    def __init__(self, model, budget: Optional[int]):
        self.order = sorted(model.vertices)
        self.index = {v: i for i, v in enumerate(self.order)}
        self.n = len(self.order)
        self.full = (1 << self.n) - 1
        masks = [0] * self.n
        if isinstance(model, Digraph):
            for u, v in model.arcs:
                masks[self.index[u]] |= 1 << self.index[v]
        else:
            for u, v in model.edges:
                masks[self.index[u]] |= 1 << self.index[v]
                masks[self.index[v]] |= 1 << self.index[u]
        self.rel = masks
        self.budget = budget
        self.spent = 0
        self.memo: Dict[tuple, bool] = {}
        self.compiled: Dict[int, Callable] = {}

    def tick(self):
        self.spent += 1
        if self.budget is not None and self.spent > self.budget:
            raise BudgetExceeded(f"set-quantifier enumeration budget of {self.budget} exhausted")

    def prepare(self, f: Formula):
        self.fv = free_vars_map(f)
        self.cost: Dict[int, tuple] = {}
        depth: Dict[int, int] = {}
        size: Dict[int, int] = {}
        for node in _postorder(f):
            kids = children(node)
            depth[id(node)] = max((depth[id(c)] for c in kids), default=0) + (
                1 if isinstance(node, (ExistsSet, ForallSet)) else 0)
            size[id(node)] = 1 + sum(size[id(c)] for c in kids)
            self.cost[id(node)] = (depth[id(node)], size[id(node)])
        return self.compile(f)

    def compile(self, f: Formula) -> Callable[[dict], bool]:
        hit = self.compiled.get(id(f))
        if hit is not None:
            return hit
        fn = self._compile(f)
        if isinstance(f, QUANTIFIERS):
            fvs = tuple(sorted(self.fv[id(f)]))
            if sum(1 for v in fvs if is_set_var(v)) <= 1:
                fn = self._memoized(f, fn, fvs)
        self.compiled[id(f)] = fn
        return fn

    def _memoized(self, f, fn, fvs):
        memo = self.memo
        tag = id(f)

        def run(env):
            key = (tag,) + tuple(env[v] for v in fvs)
            r = memo.get(key)
            if r is None:
                r = fn(env)
                memo[key] = r
            return r

        return run

    def _compile(self, f: Formula):
        rel = self.rel
        if isinstance(f, (Adj, Arc)):
            x, y = f.x, f.y
            return lambda env: bool(rel[env[x]] >> env[y] & 1)
        if isinstance(f, In):
            x, X = f.x, f.X
            return lambda env: bool(env[X] >> env[x] & 1)
        if isinstance(f, Eq):
            x, y = f.x, f.y
            return lambda env: env[x] == env[y]
        if isinstance(f, Not):
            g = self.compile(f.f)
            return lambda env: not g(env)
        if isinstance(f, (And, Or)):
            a, b = f.f, f.g
            if self.cost[id(b)] < self.cost[id(a)]:
                a, b = b, a
            ca, cb = self.compile(a), self.compile(b)
            if isinstance(f, And):
                return lambda env: ca(env) and cb(env)
            return lambda env: ca(env) or cb(env)
        if isinstance(f, Imp):
            ca, cb = self.compile(f.f), self.compile(f.g)
            if self.cost[id(f.g)] < self.cost[id(f.f)]:
                return lambda env: cb(env) or not ca(env)
            return lambda env: (not ca(env)) or cb(env)
        if isinstance(f, (ExistsElem, ForallElem)):
            return self._compile_elem(f)
        return self._compile_set(f)

    def _compile_elem(self, f):
        x = f.x
        n = self.n
        exists = isinstance(f, ExistsElem)
        body = f.f
        bound_set = None
        # (forall x (imp (in x S) ..)) and (exists x (and (in x S) ..)) only range over S
        if exists and isinstance(body, And) and isinstance(body.f, In) and body.f.x == x and body.f.X != x:
            bound_set = body.f.X
        if not exists and isinstance(body, Imp) and isinstance(body.f, In) and body.f.x == x:
            bound_set = body.f.X
        g = self.compile(body)

        def run(env):
            old = env.get(x, _MISSING)
            domain = _bits(env[bound_set]) if bound_set is not None else range(n)
            result = not exists
            for i in domain:
                env[x] = i
                if g(env) == exists:
                    result = exists
                    break
            _restore(env, x, old)
            return result

        return run

    def _compile_set(self, f):
        X = f.X
        exists = isinstance(f, ExistsSet)
        body = f.f
        bound = None
        if exists and isinstance(body, And):
            bound = _guard_bound(X, body.f) or _guard_bound(X, body.g)
        if not exists and isinstance(body, Imp):
            bound = _guard_bound(X, body.f)
        g = self.compile(body)
        full = self.full
        tick = self.tick

        def run(env):
            old = env.get(X, _MISSING)
            domain = _submasks(env[bound]) if bound is not None and bound != X else range(full + 1)
            result = not exists
            for s in domain:
                tick()
                env[X] = s
                if g(env) == exists:
                    result = exists
                    break
            _restore(env, X, old)
            return result

        return run


_MISSING = object()


def _restore(env, name, old):
    if old is _MISSING:
        env.pop(name, None)
    else:
        env[name] = old


def model_check(model, f: Formula, env: Optional[Assignment] = None, *,
                budget: Optional[int] = DEFAULT_SET_BUDGET) -> bool:
    """Decide model |= f under `env` by exhaustive quantification.

    Element quantifiers range over V(model); set quantifiers over all
    2^|V| subsets.  Runtime is exponential in the set-quantifier nesting, so
    this is for small models; `budget` caps the number of set enumerations
    (None = unlimited) and raises BudgetExceeded when exhausted.
    """
    voc = vocabulary(f)
    if voc == "adj" and not isinstance(model, Graph):
        raise VocabularyError("adj formula evaluated on a digraph")
    if voc == "arc" and not isinstance(model, Digraph):
        raise VocabularyError("arc formula evaluated on an undirected graph")
    env = dict(env or {})
    missing = free_vars(f) - set(env)
    if missing:
        raise UnboundVariableError(f"unbound variables: {', '.join(sorted(missing))}")
    chk = _Checker(model, budget)
    run_env = {}
    for name, val in env.items():
        if is_elem_var(name):
            if val not in chk.index:
                raise UnboundVariableError(f"{name} is bound to {val!r}, not a vertex of the model")
            run_env[name] = chk.index[val]
        elif is_set_var(name):
            mask = 0
            for v in val:
                if v not in chk.index:
                    raise UnboundVariableError(f"{name} contains {v!r}, not a vertex of the model")
                mask |= 1 << chk.index[v]
            run_env[name] = mask
        else:
            raise UnboundVariableError(f"bad variable name {name!r}")
    fn = chk.prepare(f)
    return fn(run_env)


# ---------------------------------------------------------------------------
# adj -> arc rewrite


def adj_to_arc(f: Formula) -> Formula:
    """Replace every adj(x,y) by (arc(x,y) or arc(y,x))."""
    if vocabulary(f) == "arc":
        raise VocabularyError("formula already uses arc")
    cache: Dict[Tuple[str, str], Formula] = {}

    def leaf(node):
        if isinstance(node, Adj):
            key = (node.x, node.y)
            if key not in cache:
                cache[key] = Or(Arc(node.x, node.y), Arc(node.y, node.x))
            return cache[key]
        return node

    return map_dag(f, leaf)


def arc_to_adj_check(f: Formula) -> Formula:
    """Inverse of adj_to_arc on its image (used to validate rewritten formulas)."""
    out: Dict[int, Formula] = {}
    for node in _postorder(f):
        if isinstance(node, Or) and isinstance(node.f, Arc) and isinstance(node.g, Arc) \
                and node.f.x == node.g.y and node.f.y == node.g.x:
            out[id(node)] = Adj(node.f.x, node.f.y)
        elif isinstance(node, Arc):
            out[id(node)] = None  # legal only directly under the matching Or
        elif isinstance(node, ATOMS):
            out[id(node)] = node
        else:
            kids = [out[id(c)] for c in children(node)]
            if any(k is None for k in kids):
                raise VocabularyError("arc atom outside an adj_to_arc disjunction")
            out[id(node)] = node if all(k is c for k, c in zip(kids, children(node))) else _rebuild(node, kids)
    if out[id(f)] is None:
        raise VocabularyError("arc atom outside an adj_to_arc disjunction")
    return out[id(f)]


# ---------------------------------------------------------------------------
# stock sentences


THREE_COLORABLE = (
    "(existsS V1 (existsS V2 (existsS V3 (and"
    " (forall v (or (in v V1) (or (in v V2) (in v V3))))"
    " (and (forall v (forall w (or (not (in v V1)) (or (not (in w V1)) (not (adj v w))))))"
    " (and (forall v (forall w (or (not (in v V2)) (or (not (in w V2)) (not (adj v w))))))"
    " (forall v (forall w (or (not (in v V3)) (or (not (in w V3)) (not (adj v w))))))))))))"
)


def three_colorability() -> Formula:
    return parse_formula(THREE_COLORABLE, sentence=True)


def formula_digest(f: Formula) -> str:
    """Structural SHA-256 of a formula, linear in the number of distinct DAG nodes."""
    dig: Dict[int, bytes] = {}
    for node in _postorder(f):
        h = hashlib.sha256()
        h.update(_KEYWORD[type(node)].encode())
        if isinstance(node, ATOMS):
            h.update(("(" + " ".join(atom_vars(node)) + ")").encode())
        else:
            b = binder(node)
            if b:
                h.update(b"[" + b.encode() + b"]")
            for c in children(node):
                h.update(dig[id(c)])
        dig[id(node)] = h.digest()
    return dig[id(f)].hex()
