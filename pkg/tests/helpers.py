"""Shared test oracles: a random formula generator and a reference MSO evaluator."""

import itertools
import random

from digraph_width.mso import (
    Adj, And, Arc, Eq, ExistsElem, ExistsSet, ForallElem, ForallSet, Imp, In, Not, Or,
)


def random_formula(rng: random.Random, size: int, elems=(), sets=(), *, max_sets=1, arc=False):
    """A formula with exactly `size` nodes whose free variables are among elems/sets.

    At most `max_sets` set quantifiers occur in the whole formula."""
    if size == 1:
        options = []
        if len(elems) >= 1:
            options += ["rel", "eq"]
            if sets:
                options.append("in")
        if not options:
            raise ValueError("a one-node formula needs a free element variable")
        kind = rng.choice(options)
        x, y = rng.choice(elems), rng.choice(elems)
        if kind == "rel":
            return Arc(x, y) if arc else Adj(x, y)
        if kind == "eq":
            return Eq(x, y)
        return In(x, rng.choice(sets))
    kinds = ["not", "bin", "elem"]
    if max_sets > 0:
        kinds.append("set")
    if size == 2 and not elems:
        kinds = ["elem"]
    kind = rng.choice(kinds)
    if kind == "not":
        if size - 1 == 1 and not elems:
            kind = "elem"
        else:
            return Not(random_formula(rng, size - 1, elems, sets, max_sets=max_sets, arc=arc))
    if kind == "bin" and size >= 3 and elems:
        left = rng.randint(1, size - 2)
        ctor = rng.choice([And, Or, Imp])
        left_sets = max_sets if rng.random() < 0.5 else 0
        return ctor(random_formula(rng, left, elems, sets, max_sets=left_sets, arc=arc),
                    random_formula(rng, size - 1 - left, elems, sets, max_sets=max_sets - left_sets, arc=arc))
    if kind == "set" and size >= 3 and elems:
        name = f"S{len(sets)}"
        ctor = rng.choice([ExistsSet, ForallSet])
        return ctor(name, random_formula(rng, size - 1, elems, sets + (name,), max_sets=max_sets - 1, arc=arc))
    name = f"v{len(elems)}" if len(elems) < 3 or rng.random() < 0.3 else rng.choice(elems)
    ctor = rng.choice([ExistsElem, ForallElem])
    inner = tuple(dict.fromkeys(elems + (name,)))
    return ctor(name, random_formula(rng, size - 1, inner, sets, max_sets=max_sets, arc=arc))


def random_sentence(rng: random.Random, size: int, *, max_sets=1, arc=False):
    return random_formula(rng, size, (), (), max_sets=max_sets, arc=arc)


def reference_check(model, f, env=None):
    """Plain recursive evaluation, no memoization or shortcuts."""
    env = dict(env or {})
    vs = sorted(model.vertices)

    def ev(node, e):
        if isinstance(node, Adj):
            return e[node.y] in model.adj[e[node.x]]
        if isinstance(node, Arc):
            return (e[node.x], e[node.y]) in model.arcs
        if isinstance(node, Eq):
            return e[node.x] == e[node.y]
        if isinstance(node, In):
            return e[node.x] in e[node.X]
        if isinstance(node, Not):
            return not ev(node.f, e)
        if isinstance(node, And):
            return ev(node.f, e) and ev(node.g, e)
        if isinstance(node, Or):
            return ev(node.f, e) or ev(node.g, e)
        if isinstance(node, Imp):
            return (not ev(node.f, e)) or ev(node.g, e)
        if isinstance(node, (ExistsElem, ForallElem)):
            q = any if isinstance(node, ExistsElem) else all
            return q(ev(node.f, {**e, node.x: v}) for v in vs)
        q = any if isinstance(node, ExistsSet) else all
        subsets = (frozenset(c) for k in range(len(vs) + 1) for c in itertools.combinations(vs, k))
        return q(ev(node.f, {**e, node.X: s}) for s in subsets)

    return ev(f, env)


def brute_three_colorable(g) -> bool:
    vs = sorted(g.vertices)
    for cols in itertools.product(range(3), repeat=len(vs)):
        c = dict(zip(vs, cols))
        if all(c[u] != c[v] for u, v in g.edges):
            return True
    return False
