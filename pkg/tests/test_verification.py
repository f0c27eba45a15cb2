import random
from collections import Counter
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs, random_graph
from deckrecon.canonical import canonical_code
from deckrecon.errors import InputError, UnsupportedSizeError
from deckrecon.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    matching_graph,
    path_graph,
    star_graph,
)
from deckrecon.verification import (
    biclique_pair,
    common_cards,
    densified_pair,
    is_isomorphic_bruteforce,
    star_triple_pair,
    true_deck_sum,
    verify_card_degree_identity,
    verify_low_degree_counts,
)


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def nx_common_cards(g: Graph, h: Graph) -> int:
    """Independent cc: greedy matching of cards under networkx isomorphism."""
    gc = [_nx(g).subgraph([u for u in range(g.n) if u != v]).copy() for v in range(g.n)]
    hc = [_nx(h).subgraph([u for u in range(h.n) if u != v]).copy() for v in range(h.n)]
    used = [False] * len(hc)
    cc = 0
    for a in gc:
        for i, b in enumerate(hc):
            if not used[i] and nx.is_isomorphic(a, b):
                used[i] = True
                cc += 1
                break
    return cc


def test_cc_triangle_vs_path():
    res = common_cards(complete_graph(3), path_graph(3))
    assert res.cc == 2 and res.n == 3
    assert [m for _, m in res.shared] == [2]
    data = res.to_json()
    assert data["cc"] == 2 and data["shared"][0][1] == 2


def test_cc_self_and_symmetry():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 12)
        g, h = random_graph(rng, n), random_graph(rng, n)
        assert common_cards(g, g).cc == n
        assert common_cards(g, h).cc == common_cards(h, g).cc <= n


def test_cc_matches_networkx_small():
    rng = random.Random(6)
    for _ in range(25):
        n = rng.randint(3, 8)
        g, h = random_graph(rng, n, 0.4), random_graph(rng, n, 0.4)
        assert common_cards(g, h).cc == nx_common_cards(g, h)


def test_cc_errors():
    with pytest.raises(InputError):
        common_cards(Graph(3), Graph(4))
    with pytest.raises(UnsupportedSizeError):
        common_cards(Graph(65), Graph(65))


@pytest.mark.parametrize("p", range(2, 9))
def test_star_triple(p):
    pair = star_triple_pair(p)
    assert pair.g.n == pair.h.n == 3 * p + 4
    assert pair.g.m == pair.h.m == 3 * p + 1
    assert pair.g.degrees.count(p + 1) == 2 and pair.h.degrees.count(p + 1) == 1
    assert canonical_code(pair.g) != canonical_code(pair.h)
    res = common_cards(pair.g, pair.h)
    assert res.cc == 2 * p == pair.predicted_cc
    # the single shared card type: K_{1,p+1} + K_{1,p} + K_{1,p-1}
    shared = disjoint_union(star_graph(p + 1), star_graph(p), star_graph(p - 1))
    assert res.shared == ((canonical_code(shared), 2 * p),)


@pytest.mark.parametrize("p", range(2, 9))
def test_biclique(p):
    pair = biclique_pair(p)
    assert pair.g.n == pair.h.n == 2 * p + 3
    assert (pair.g.m, pair.h.m) == (3 * p, 3 * p + 1)
    assert canonical_code(pair.g) != canonical_code(pair.h)
    assert common_cards(pair.g, pair.h).cc == p == pair.predicted_cc


def test_pinned_cc_agrees_with_networkx():
    for p in (2, 3):
        s, b = star_triple_pair(p), biclique_pair(p)
        assert nx_common_cards(s.g, s.h) == 2 * p
        assert nx_common_cards(b.g, b.h) == p


def test_counterexample_input_errors():
    for fn in (star_triple_pair, biclique_pair):
        with pytest.raises(InputError):
            fn(1)
    with pytest.raises(InputError):
        densified_pair(3, Graph(12))


def test_densified_cycle_filler():
    pair = densified_pair(3, cycle_graph(13))
    assert pair.g.n == pair.h.n == 26
    assert pair.g.average_degree == pair.h.average_degree == Fraction(20 + 26, 26)


def test_densified_empty_filler():
    pair = densified_pair(3, Graph(13))
    cc = common_cards(pair.g, pair.h).cc
    assert cc >= 2 * 3
    assert cc == nx_common_cards(pair.g, pair.h)


def test_densified_random_filler_ratio():
    rng = random.Random(2)
    for p in range(2, 6):
        pair = densified_pair(p, random_graph(rng, 3 * p + 4, 0.5))
        cc = common_cards(pair.g, pair.h).cc
        assert 0 < cc / (6 * p + 8) < 1


def test_bruteforce_isomorphism():
    assert is_isomorphic_bruteforce(cycle_graph(6), cycle_graph(6).relabel([3, 1, 5, 0, 2, 4]))
    assert not is_isomorphic_bruteforce(cycle_graph(6), disjoint_union(complete_graph(3), complete_graph(3)))


def test_identity_examples():
    assert verify_card_degree_identity(complete_graph(4))
    assert true_deck_sum(complete_graph(4), 3) == 0
    assert verify_card_degree_identity(cycle_graph(5))
    assert true_deck_sum(cycle_graph(5), 2) == 10


def test_identity_random_graphs():
    rng = random.Random(11)
    for _ in range(1000):
        assert verify_card_degree_identity(random_graph(rng, rng.randint(1, 12)))


@settings(max_examples=100)
@given(graphs(min_n=1, max_n=12))
def test_identity_property(g):
    assert verify_card_degree_identity(g)


def test_low_degree_examples():
    assert verify_low_degree_counts(matching_graph(100), 1)
    assert verify_low_degree_counts(star_graph(99), 2)
    with pytest.raises(InputError):
        verify_low_degree_counts(complete_graph(5), 2)
    with pytest.raises(InputError):
        verify_low_degree_counts(Graph(3), 0)


def test_low_degree_sampled():
    rng = random.Random(12)
    seen = Counter()
    for _ in range(3000):
        d = rng.choice((1, 2, 3))
        n = rng.randint(2, 40)
        g = random_graph(rng, n, rng.random() * 2 * d / n)
        if g.average_degree <= d:
            assert verify_low_degree_counts(g, d)
            seen[d] += 1
    assert min(seen.values()) >= 100
