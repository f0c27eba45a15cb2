"""Brute-force oracles and the extremal counterexample families.

Everything here works on full graphs through naive vertex deletion, never
through the streamed deck or the reconstruction code, so agreement between
the two is independent evidence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .canonical import DEFAULT_LIMIT, CanonicalCode, canonical_code
from .errors import InputError, UnsupportedSizeError
from .graph import (
    Graph,
    complete_bipartite,
    degree_histogram,
    delete_vertex,
    disjoint_union,
    star_graph,
)


@dataclass(frozen=True)
class CCResult:
    cc: int
    n: int
    shared: tuple[tuple[CanonicalCode, int], ...]

    def to_json(self) -> dict:
        return {"cc": self.cc, "n": self.n, "shared": [[c.hex(), mult] for c, mult in self.shared]}


@dataclass(frozen=True)
class CounterexamplePair:
    g: Graph
    h: Graph
    family: str
    p: int
    predicted_cc: int | None = None


def deck_codes(g: Graph, limit: int = DEFAULT_LIMIT) -> Counter:
    if g.n > limit:
        raise UnsupportedSizeError(f"deck oracle limited to n <= {limit}, got {g.n}")
    return Counter(canonical_code(delete_vertex(g, v), limit) for v in range(g.n))


def common_cards(g: Graph, h: Graph, limit: int = DEFAULT_LIMIT) -> CCResult:
    if g.n != h.n:
        raise InputError(f"common-card count needs equal orders, got {g.n} and {h.n}")
    dg, dh = deck_codes(g, limit), deck_codes(h, limit)
    shared = dg & dh
    ordered = tuple(sorted(shared.items(), key=lambda kv: kv[0].code))
    return CCResult(sum(shared.values()), g.n, ordered)


def is_isomorphic_bruteforce(g: Graph, h: Graph) -> bool:
    """Search all ``n!`` bijections; only meant for n <= 8."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    target = set(h.edges())
    edges = g.edges()
    for perm in permutations(range(g.n)):
        if all(((perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])) in target for u, v in edges):
            return True
    return False


def star_triple_pair(p: int) -> CounterexamplePair:
    """``K_{1,p+1} + K_{1,p+1} + K_{1,p-1}`` against ``K_{1,p+1} + K_{1,p} + K_{1,p}``."""
    if p < 2:
        raise InputError("star triples need p >= 2")
    g = disjoint_union(star_graph(p + 1), star_graph(p + 1), star_graph(p - 1))
    h = disjoint_union(star_graph(p + 1), star_graph(p), star_graph(p))
    return CounterexamplePair(g, h, "star_triple", p, 2 * p)


def biclique_pair(p: int) -> CounterexamplePair:
    """``K_{2,p} + K_{1,p}`` against ``K_{2,p+1} + K_{1,p-1}``; edge counts differ by one."""
    if p < 2:
        raise InputError("biclique pairs need p >= 2")
    g = disjoint_union(complete_bipartite(2, p), star_graph(p))
    h = disjoint_union(complete_bipartite(2, p + 1), star_graph(p - 1))
    return CounterexamplePair(g, h, "biclique", p, p)


def densified_pair(p: int, filler: Graph) -> CounterexamplePair:
    """Star triple pair with the same filler graph added to both sides."""
    if filler.n != 3 * p + 4:
        raise InputError(f"filler must have 3p + 4 = {3 * p + 4} vertices, got {filler.n}")
    base = star_triple_pair(p)
    return CounterexamplePair(disjoint_union(base.g, filler), disjoint_union(base.h, filler), "densified", p, None)


def verify_card_degree_identity(g: Graph) -> bool:
    """Check ``sum_i d_t(G - v_i) = (n-1-t) d_t(G) + (t+1) d_{t+1}(G)`` for all ``t``."""
    n = g.n
    own = degree_histogram(g)
    lhs: Counter = Counter()
    for v in range(n):
        lhs.update(degree_histogram(delete_vertex(g, v)).as_dict())
    return all(lhs[t] == (n - 1 - t) * own[t] + (t + 1) * own[t + 1] for t in range(n))


def verify_low_degree_counts(g: Graph, d: int) -> bool:
    """At least ``n/2`` vertices of degree <= 2d and ``n/(d+1)`` of degree <= d."""
    if d < 1:
        raise InputError("d must be a positive integer")
    if g.average_degree > d:
        raise InputError(f"average degree {g.average_degree} exceeds d={d}")
    n = g.n
    low2 = sum(1 for x in g.degrees if x <= 2 * d)
    low1 = sum(1 for x in g.degrees if x <= d)
    return low2 >= Fraction(n, 2) and low1 >= Fraction(n, d + 1)


def true_deck_sum(g: Graph, t: int) -> int:
    """``sum_i d_t(G_i)`` from the graph's own degree counts."""
    own = degree_histogram(g)
    return (g.n - 1 - t) * own[t] + (t + 1) * own[t + 1]
