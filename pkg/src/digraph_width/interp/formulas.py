"""MSO1 formulas for the three interpretations and their helper predicates.

Every builder takes variable *names* and returns a formula in which those
names occur free.  Templates are built once over placeholder parameters and
instantiated by capture-avoiding renaming; instances are cached, so
repeated uses share one subtree.
"""

from __future__ import annotations

from functools import lru_cache

from ..mso import (
    Adj, And, Eq, ExistsElem, ExistsSet, Formula, ForallElem, ForallSet, Imp, In, Not, Or,
    conj, disj, exists_elems, neq, rename_free,
)


def _inst(template: Formula, params, args) -> Formula:
    return rename_free(template, dict(zip(params, args)))


def subset(Y: str, X: str) -> Formula:
    """Y ⊆ X, in the shape the model checker recognizes as a bitmask test."""
    return ForallElem("s", Imp(In("s", Y), In("s", X)))


def nonempty(X: str) -> Formula:
    return ExistsElem("s", In("s", X))


# -- degree predicates -------------------------------------------------------

_DEG1 = And(
    ForallElem("y", ForallElem("z", Imp(And(Adj("p", "y"), Adj("p", "z")), Eq("y", "z")))),
    ExistsElem("y", Adj("p", "y")),
)

_DEG2 = exists_elems(["y", "z"], conj(
    neq("y", "z"), Adj("p", "y"), Adj("p", "z"),
    ForallElem("w", Imp(Adj("p", "w"), Or(Eq("w", "y"), Eq("w", "z")))),
))


@lru_cache(maxsize=None)
def deg1(x: str) -> Formula:
    return _inst(_DEG1, ["p"], [x])


@lru_cache(maxsize=None)
def deg2(x: str) -> Formula:
    return _inst(_DEG2, ["p"], [x])


# -- connectivity ------------------------------------------------------------
# con(u,v,X): every cut (Y∪{u}, (X∖Y)∪{v}) of X∪{u,v} with Y ⊆ X is crossed by an edge.

_CON = ForallSet("Y", Imp(subset("Y", "P"), exists_elems(["y", "z"], conj(
    Or(In("y", "Y"), Eq("y", "p")),
    Or(And(In("z", "P"), Not(In("z", "Y"))), Eq("z", "q")),
    Adj("y", "z"),
))))


@lru_cache(maxsize=None)
def con(u: str, v: str, X: str) -> Formula:
    return _inst(_CON, ["p", "q", "P"], [u, v, X])


_MCON = And(
    _CON,
    ForallSet("Y", Imp(And(subset("Y", "P"), Not(subset("P", "Y"))), Not(_inst(_CON, ["P"], ["Y"])))),
)


@lru_cache(maxsize=None)
def mcon(u: str, v: str, X: str) -> Formula:
    return _inst(_MCON, ["p", "q", "P"], [u, v, X])


# -- I1: planarization -------------------------------------------------------

_ALPHA1 = And(Not(deg1("p")), ForallElem("x", Imp(Adj("x", "p"), Not(deg1("x")))))


@lru_cache(maxsize=None)
def alpha1(v: str) -> Formula:
    return _inst(_ALPHA1, ["p"], [v])


def _two_nbrs_inside(x: str, C: str) -> Formula:
    """x has exactly two neighbours in C."""
    return exists_elems(["y", "z"], conj(
        neq("y", "z"), In("y", C), In("z", C), Adj(x, "y"), Adj(x, "z"),
        ForallElem("w", Imp(And(In("w", C), Adj(x, "w")), Or(Eq("w", "y"), Eq("w", "z")))),
    ))


def _exactly(k: int, member) -> Formula:
    """Exactly k elements satisfy member(name)."""
    names = [f"e{i}" for i in range(k)]
    distinct = [neq(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    body = conj(*distinct, *[member(a) for a in names],
                ForallElem("t", Imp(member("t"), disj(*[Eq("t", a) for a in names]))))
    return exists_elems(names, body)


_CRGADG = conj(
    ForallElem("x", Imp(In("x", "P"), _two_nbrs_inside("x", "P"))),
    _exactly(4, lambda a: In(a, "P")),
    ForallElem("x", Imp(In("x", "P"), Not(alpha1("x")))),
)


@lru_cache(maxsize=None)
def crgadg(C: str) -> Formula:
    return _inst(_CRGADG, ["P"], [C])


_BETA1 = ExistsSet("X", conj(
    ForallElem("x", Imp(In("x", "X"), Not(alpha1("x")))),
    mcon("p", "q", "X"),
    ForallSet("C", Imp(
        And(crgadg("C"), ExistsElem("x", And(In("x", "X"), In("x", "C")))),
        _exactly(3, lambda a: And(In(a, "X"), In(a, "C"))),
    )),
))


@lru_cache(maxsize=None)
def beta1(u: str, v: str) -> Formula:
    return _inst(_BETA1, ["p", "q"], [u, v])


# -- I2: {1,3}-regularization ------------------------------------------------

_ALPHA2 = exists_elems(["x", "y"], conj(
    neq("x", "y"), Adj("p", "x"), Adj("p", "y"),
    ForallElem("z", Imp(Or(Adj("z", "x"), Adj("z", "y")), Eq("z", "p"))),
))


@lru_cache(maxsize=None)
def alpha2(v: str) -> Formula:
    return _inst(_ALPHA2, ["p"], [v])


_PEND = ExistsElem("w", ForallElem("t", And(Adj("p", "w"), Imp(Adj("t", "w"), Eq("t", "p")))))


@lru_cache(maxsize=None)
def has_pendant(z: str) -> Formula:
    """z has a neighbour whose only neighbour is z."""
    return _inst(_PEND, ["p"], [z])


_CONNECTED = ForallSet("Y", Imp(
    conj(subset("Y", "P"), nonempty("Y"), ExistsElem("z", And(In("z", "P"), Not(In("z", "Y"))))),
    exists_elems(["y", "z"], conj(In("y", "Y"), In("z", "P"), Not(In("z", "Y")), Adj("y", "z"))),
))

_CYCLE = conj(
    nonempty("P"),
    ForallElem("x", Imp(In("x", "P"), _two_nbrs_inside("x", "P"))),
    _CONNECTED,
)


@lru_cache(maxsize=None)
def cycle(U: str) -> Formula:
    return _inst(_CYCLE, ["P"], [U])


_RHO = And(_CYCLE, ForallElem("x", ForallElem("y", Imp(
    conj(In("x", "P"), In("y", "P"), Adj("x", "y")),
    Or(has_pendant("x"), has_pendant("y")),
))))


@lru_cache(maxsize=None)
def rho(U: str) -> Formula:
    return _inst(_RHO, ["P"], [U])


# Quantifier scopes are narrowed relative to the prenex display; the
# variables involved are independent, so the meaning is unchanged.
_BETA2 = ExistsSet("U", And(rho("U"), ExistsSet("W", conj(
    rho("W"),
    ExistsElem("u1", And(In("u1", "U"), ExistsElem("w1", And(In("w1", "W"), Adj("u1", "w1"))))),
    ExistsElem("u2", And(In("u2", "U"), Adj("u2", "p"))),
    ExistsElem("w2", And(In("w2", "W"), Adj("w2", "q"))),
))))


@lru_cache(maxsize=None)
def beta2(u: str, w: str) -> Formula:
    return _inst(_BETA2, ["p", "q"], [u, w])


# -- I3: subdivision ---------------------------------------------------------

_ALPHA3 = Not(_DEG2)

_BETA3 = ExistsSet("X", And(
    con("p", "q", "X"),
    ForallElem("y2", Imp(In("y2", "X"), deg2("y2"))),
))


@lru_cache(maxsize=None)
def alpha3(v: str) -> Formula:
    return _inst(_ALPHA3, ["p"], [v])


@lru_cache(maxsize=None)
def beta3(u: str, v: str) -> Formula:
    return _inst(_BETA3, ["p", "q"], [u, v])
