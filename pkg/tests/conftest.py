import random
from itertools import combinations

from hypothesis import strategies as st

from deckrecon.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def naive_deck_histograms(g: Graph):
    from deckrecon.graph import degree_histogram, delete_vertex

    return [degree_histogram(delete_vertex(g, v)) for v in range(g.n)]
