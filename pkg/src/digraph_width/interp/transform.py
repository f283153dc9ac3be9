"""Interpretations I1, I2, I3 as bundles, the formula transformer, and their composition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

from ..errors import PreconditionError, VocabularyError
from ..graphs import Graph, subdivide
from ..mso import (
    Adj, And, Eq, ExistsElem, Formula, ForallElem, Imp, In, Not, Or,
    _postorder, formula_size, vocabulary,
)
from . import evaluators as E
from . import formulas as F
from .gadgets import Construction, planarize, regularize


@dataclass(frozen=True)
class Interpretation:
    name: str
    alpha_of: Callable[[str], Formula]          # alpha(x) for a variable name
    beta_of: Callable[[str, str], Formula]      # beta_adj(x, y)
    alpha_eval: Callable[[Graph, int], bool]
    beta_eval: Callable[[Graph, int, int], bool]
    forward_transform: Callable[[Graph], Construction]

    @property
    def alpha(self) -> Formula:
        return self.alpha_of("x")

    @property
    def beta_adj(self) -> Formula:
        return self.beta_of("x", "y")

    @property
    def size_constant(self) -> int:
        """c with |chi^I| <= c |chi| for every chi.

        Each atom grows to at most |beta| + 3 nodes (beta, the connective and
        the negated equality), each element quantifier gains |alpha| + 1 nodes."""
        return max(formula_size(self.beta_adj) + 3, formula_size(self.alpha) + 2)


def _subdivision_construction(h: Graph) -> Construction:
    g = subdivide(h, 1)
    prov = {v: ("vertex" if v in h.vertices else "subdivision", "") for v in g.vertices}
    return Construction(g, prov)


I1 = Interpretation("I1", F.alpha1, F.beta1, E.alpha1, E.beta1, planarize)
I2 = Interpretation("I2", F.alpha2, F.beta2, E.alpha2, E.beta2, regularize)
I3 = Interpretation("I3", F.alpha3, F.beta3, E.alpha3, E.beta3, _subdivision_construction)
INTERPRETATIONS = {"I1": I1, "I2": I2, "I3": I3}
STACK = (I1, I2, I3)


def transform_formula(interp: Interpretation, chi: Formula) -> Formula:
    """chi^I: adjacency atoms become x != y plus a beta instance, element quantifiers are
    relativized to alpha, set quantifiers and the other atoms are kept."""
    if vocabulary(chi) == "arc":
        raise VocabularyError("transform_formula expects an adj formula")
    out: Dict[int, Formula] = {}
    for node in _postorder(chi):
        if isinstance(node, Adj):
            # beta may hold on the diagonal; G^I has no loops
            res = And(Not(Eq(node.x, node.y)), interp.beta_of(node.x, node.y))
        elif isinstance(node, (Eq, In)):
            res = node
        elif isinstance(node, Not):
            res = Not(out[id(node.f)])
        elif isinstance(node, (And, Or, Imp)):
            res = type(node)(out[id(node.f)], out[id(node.g)])
        elif isinstance(node, ExistsElem):
            res = ExistsElem(node.x, And(interp.alpha_of(node.x), out[id(node.f)]))
        elif isinstance(node, ForallElem):
            res = ForallElem(node.x, Imp(interp.alpha_of(node.x), out[id(node.f)]))
        else:
            res = type(node)(node.X, out[id(node.f)])
        out[id(node)] = res
    return out[id(chi)]


def transform_through(stack: Sequence[Interpretation], chi: Formula) -> Formula:
    for interp in stack:
        chi = transform_formula(interp, chi)
    return chi


def interpret_model(interp: Interpretation, g: Graph) -> Graph:
    """G^I: vertices satisfying alpha, edges between distinct pairs satisfying beta."""
    dom = [v for v in g.sorted_vertices() if interp.alpha_eval(g, v)]
    if interp is I3 and not dom and g.vertices:
        raise PreconditionError("I3 domain is empty on a non-empty graph (every vertex has degree 2)")
    edges = [(u, v) for i, u in enumerate(dom) for v in dom[i + 1:] if interp.beta_eval(g, u, v)]
    return Graph(frozenset(dom), frozenset(edges))


@dataclass
class Theorem41Result:
    graph: Graph
    psi: Formula
    planarized: Construction
    regularized: Construction


def construct_model(h: Graph) -> Tuple[Construction, Construction]:
    p = planarize(h)
    r = regularize(p.graph, p.positions)
    return p, r


def theorem41(h: Graph, phi: Formula) -> Theorem41Result:
    """({1,3}-regular planar G, psi) with H |= phi iff G |= psi, also on every subdivision of G."""
    p, r = construct_model(h)
    psi = transform_through(STACK, phi)
    return Theorem41Result(r.graph, psi, p, r)
