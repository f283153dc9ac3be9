import itertools

from hypothesis import HealthCheck, settings, strategies as st

from digraph_width.graphs import Digraph, Graph

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=5):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(frozenset(range(n)), frozenset(p for p, keep in zip(pairs, mask) if keep))


@st.composite
def digraphs(draw, min_n=0, max_n=5):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph(frozenset(range(n)), frozenset(p for p, keep in zip(pairs, mask) if keep))
