import random

import networkx as nx
import pytest

from conftest import random_graph
from deckrecon.canonical import canonical_code
from deckrecon.errors import UnsupportedSizeError
from deckrecon.graph import Graph, complete_bipartite, cycle_graph, disjoint_union, path_graph, star_graph
from deckrecon.verification import is_isomorphic_bruteforce


def _shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def test_relabelled_paths_share_code():
    abc = Graph(3, [(0, 1), (1, 2)])
    bac = Graph(3, [(1, 0), (0, 2)])
    assert canonical_code(abc) == canonical_code(bac)


def test_path_differs_from_triangle():
    assert canonical_code(path_graph(3)) != canonical_code(cycle_graph(3))


def test_seven_vertex_graphs_against_brute_force():
    rng = random.Random(3)
    pool = [random_graph(rng, 7) for _ in range(100)]
    for g in pool:
        code = canonical_code(g)
        for _ in range(10):
            assert canonical_code(_shuffled(g, rng)) == code
    for g, h in zip(pool, pool[1:]):
        assert (canonical_code(g) == canonical_code(h)) == is_isomorphic_bruteforce(g, h)


def test_agrees_with_networkx_on_larger_graphs():
    # independent isomorphism test (VF2) beyond brute-force range
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(8, 20)
        g = random_graph(rng, n, rng.choice([0.15, 0.3, 0.5]))
        h = _shuffled(g, rng) if rng.random() < 0.5 else random_graph(rng, n, len(g.edges()) / (n * (n - 1) / 2))
        ng, nh = nx.Graph(g.edges()), nx.Graph(h.edges())
        ng.add_nodes_from(range(n))
        nh.add_nodes_from(range(n))
        assert (canonical_code(g) == canonical_code(h)) == nx.is_isomorphic(ng, nh)


@pytest.mark.parametrize("g", [
    disjoint_union(star_graph(20), star_graph(20), star_graph(18)),
    complete_bipartite(10, 12),
    disjoint_union(*[cycle_graph(5)] * 6),
    Graph(64),
])
def test_symmetric_graphs_are_fast_and_invariant(g):
    rng = random.Random(1)
    code = canonical_code(g)
    for _ in range(5):
        assert canonical_code(_shuffled(g, rng)) == code


def test_regular_graphs_are_separated():
    # C6 and two triangles: same degree sequence, refinement alone cannot split them
    assert canonical_code(cycle_graph(6)) != canonical_code(disjoint_union(cycle_graph(3), cycle_graph(3)))
    petersen = nx.petersen_graph()
    prism = nx.circular_ladder_graph(5)
    pg = Graph(10, petersen.edges())
    pr = Graph(10, prism.edges())
    assert canonical_code(pg) != canonical_code(pr)
    assert canonical_code(pg) == canonical_code(_shuffled(pg, random.Random(2)))


def test_size_limit():
    with pytest.raises(UnsupportedSizeError):
        canonical_code(Graph(65))
    assert canonical_code(Graph(65), limit=70)
