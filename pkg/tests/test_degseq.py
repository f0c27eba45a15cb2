import random
from fractions import Fraction

import pytest

from conftest import random_graph
from deckrecon.count import reconstruct_edge_count
from deckrecon.deck import PartialDeck, full_deck, remove_cards
from deckrecon.degseq import build_partition, estimate_st, find_zero_window, reconstruct_degree_sequence
from deckrecon.errors import InputError, RegimeError
from deckrecon.generators import GenSpec, generate
from deckrecon.graph import Graph, cycle_graph, degree_histogram, disjoint_union, matching_graph, star_graph
from deckrecon.verification import true_deck_sum


def test_partition_matching():
    part = build_partition(full_deck(matching_graph(100)), 50, 1)
    assert (part.i1_size, part.i2_size, part.i3_size) == (0, 100, 0)


def test_partition_star_with_isolated_vertices():
    g = disjoint_union(star_graph(60), Graph(40))
    assert g.n == 101
    part = build_partition(full_deck(g), g.m, 1)
    assert (part.i1_size, part.i2_size, part.i3_size) == (0, 101, 0)


def test_partition_with_high_degree_vertex():
    g = disjoint_union(star_graph(150), Graph(149))
    assert g.average_degree == 1
    deck = full_deck(g, with_subcards=True)
    part = build_partition(deck, g.m, 1)
    # ground truth: only the centre exceeds 100; every other card is low degree
    assert part.i1_size == 1
    assert part.i2_size == g.n - 1
    assert part.i3_size == 0
    centre_free = degree_histogram(Graph(298))
    assert part.i1_subhistograms == (centre_free,)


def test_partition_requires_subcards():
    g = disjoint_union(star_graph(150), Graph(149))
    with pytest.raises(InputError, match="subcards"):
        build_partition(full_deck(g), g.m, 1)
    deck = full_deck(g, with_subcards=True, subcard_threshold=200)
    with pytest.raises(InputError):
        build_partition(deck, g.m, 1)


def test_partition_i3_bounded_by_k_plus_d():
    for seed in range(5):
        g = generate(GenSpec("random_forest", 10**4, 1, seed, {"edges": 4900}))
        deck = remove_cards(full_deck(g, with_subcards=True), 9, "random", seed)
        part = build_partition(deck, g.m, 1)
        assert part.i1_size + part.i2_size + part.i3_size == g.n
        assert part.i3_size <= 9 + 1


def test_estimate_st_matching():
    deck = full_deck(matching_graph(100))
    part = build_partition(deck, 50, 1)
    assert estimate_st(deck, part, 1) == 9800
    assert estimate_st(deck, part, 0) == 100
    with pytest.raises(InputError):
        estimate_st(deck, part, 101)
    with pytest.raises(InputError):
        estimate_st(deck, part, -1)


def test_estimate_st_exact_on_full_deck():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng, rng.randint(3, 40), 0.1)
        deck = full_deck(g)
        part = build_partition(deck, g.m, 1)
        for t in range(g.n + 1):
            assert estimate_st(deck, part, t) == true_deck_sum(g, t)


def test_estimate_st_bound_forest():
    g = generate(GenSpec("random_forest", 10**4, 1, 12, {"edges": 4950}))
    deck = remove_cards(full_deck(g, with_subcards=True), 9, "max_edges_first")
    part = build_partition(deck, g.m, 1)
    for t in range(4):
        assert abs(estimate_st(deck, part, t) - true_deck_sum(g, t)) < 1250


def test_zero_window_examples():
    assert find_zero_window(full_deck(matching_graph(100))) == (25, "no_card")
    assert find_zero_window(full_deck(cycle_graph(100)))[0] == 25
    g = generate(GenSpec("random_forest", 10**4, 1, 1, {"edges": 4900}))
    assert max(g.degrees) < 10**4 // 4 - 1
    assert find_zero_window(full_deck(g)) == (2500, "no_card")


def test_zero_window_two_card_rule():
    # K_{1,3} plus four isolated vertices: degrees 2 and 3 are seen on all but one card,
    # degree 4 is missing from the centre card and the three leaf cards
    g = disjoint_union(star_graph(3), Graph(4))
    t0, rule = find_zero_window(full_deck(g))
    assert t0 == 4 and rule == "two_cards"
    assert degree_histogram(g)[t0] == 0


def test_zero_window_failure():
    # C4: every card is P3, which covers the whole window [1, 3]
    with pytest.raises(RegimeError):
        find_zero_window(full_deck(cycle_graph(4)))


def test_degseq_c5_fast_path():
    hist, state = reconstruct_degree_sequence(remove_cards(full_deck(cycle_graph(5)), 1))
    assert hist.as_dict() == {2: 5}
    assert state.provenance == {2: "fast-path"}


def test_degseq_full_deck():
    rng = random.Random(7)
    for _ in range(40):
        g = random_graph(rng, rng.randint(3, 15))
        hist, _ = reconstruct_degree_sequence(full_deck(g))
        assert hist == degree_histogram(g)


def test_degseq_one_missing_small_graphs():
    # unique for n >= 7; smaller orders may be flagged ambiguous but never silently wrong
    rng = random.Random(8)
    for _ in range(200):
        g = random_graph(rng, rng.randint(3, 11))
        cut = remove_cards(full_deck(g), 1, "random", rng.randrange(1000))
        hist, state = reconstruct_degree_sequence(cut)
        if g.n >= 7:
            assert not state.flags
        if not state.flags:
            assert hist == degree_histogram(g)


def test_degseq_matching_general_path():
    g = matching_graph(10**4)
    deck = remove_cards(full_deck(g, with_subcards=True), 1, "random", 3)
    hist, state = reconstruct_degree_sequence(deck, 1, force_general=True)
    assert hist.as_dict() == {1: 10**4}
    assert state.in_regime and state.t0 == 2500 and not state.flags
    assert state.max_rounding_distance < Fraction(1, 2)
    fast, _ = reconstruct_degree_sequence(deck, 1)
    assert fast == hist


def test_degseq_forest_large():
    g = generate(GenSpec("random_forest", 3 * 10**4, 1, 5, {"edges": 14000}))
    deck = remove_cards(full_deck(g, with_subcards=True), 3, "max_edges_first")
    hist, state = reconstruct_degree_sequence(deck)
    assert hist == degree_histogram(g)
    assert state.in_regime and state.m == g.m and state.d == 1
    assert state.max_rounding_distance < Fraction(1, 2)
    data = state.to_json()
    assert data["histogram"] == [list(x) for x in hist.items()]
    assert set(data) >= {"n", "k", "d", "m", "t0", "histogram", "flags", "in_regime", "max_rounding_distance"}


def test_degseq_with_high_degree_vertex():
    # one hub above 100 d^2 forces the I1 branch through the reference card's sub-cards
    forest = generate(GenSpec("random_forest", 10**4, 1, 2, {"edges": 4800}))
    g = Graph(10**4, forest.edges() + [(0, v) for v in range(1, 121) if not forest.has_edge(0, v)])
    assert 2 * g.m <= g.n and g.degrees[0] > 100
    deck = remove_cards(full_deck(g, with_subcards=True), 1, "random", 1)
    hist, state = reconstruct_degree_sequence(deck, force_general=True)
    assert state.partition.i1_size == 1
    assert hist == degree_histogram(g) and state.in_regime


def test_degseq_out_of_regime_is_best_effort():
    rng = random.Random(4)
    outcomes = 0
    for _ in range(20):
        g = random_graph(rng, 60, 0.1)
        cut = remove_cards(full_deck(g, with_subcards=True, subcard_threshold=0), 4, "random", 1)
        try:
            hist, state = reconstruct_degree_sequence(cut, 6)
        except RegimeError:
            continue
        outcomes += 1
        assert not state.in_regime
    assert outcomes


def test_degseq_rejects_tiny_decks():
    with pytest.raises(InputError):
        reconstruct_degree_sequence(full_deck(Graph(2)))
    with pytest.raises(InputError):
        reconstruct_degree_sequence(PartialDeck(3, (), 3))
