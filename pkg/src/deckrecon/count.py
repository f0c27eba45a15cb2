"""Edge-count and clique-count reconstruction from a partial deck."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import ceil, comb

from .deck import PartialDeck
from .errors import InputError, InvariantViolation, RegimeError

THEOREMS = ("edge_count", "clique_count", "degree_sequence", "recognition", "estimate_st")


@dataclass(frozen=True)
class RegimeCheck:
    theorem: str
    n: int
    d: int
    k: int
    r: int | None
    max_k: int
    satisfied: bool


def regime_check(theorem: str, n: int, d: int, k: int, r: int | None = None) -> RegimeCheck:
    """Largest ``k`` for which ``theorem`` guarantees its conclusion, in integer arithmetic."""
    if d < 1 or n < 1:
        raise InputError("regime checks need d >= 1 and n >= 1")
    side = True
    if theorem == "edge_count":
        max_k = n // (4 * d + 6) - d - 5
        side = n >= 3
    elif theorem == "clique_count":
        if r is None or r < 2:
            raise InputError("clique_count regime needs r >= 2")
        # floor((n/2 - 1) / (1 + C) - d - 5)
        max_k = (n - 2) // (2 * (1 + comb(2 * (d + 1), r - 1))) - d - 5
    elif theorem == "degree_sequence":
        max_k = n // (10**4 * d**3)
        side = n >= 3
    elif theorem == "recognition":
        max_k = n // 4
        side = n >= 8
    elif theorem == "estimate_st":
        max_k = n // (1100 * d * d)
        side = n >= 10**4 * d**3
    else:
        raise InputError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    return RegimeCheck(theorem, n, d, k, r, max_k, side and 0 <= k <= max_k)


@dataclass(frozen=True)
class EdgeEstimate:
    m_tilde: Fraction
    d_tilde: Fraction
    k: int
    slack_bound: Fraction


@dataclass
class ReconTrace:
    theorem: str
    n: int
    k: int
    d: int
    r: int | None = None
    t: int | None = None
    j: int | None = None
    value: int | None = None
    in_regime: bool = False
    slack_bound: Fraction | None = None
    method: str = "sorted_cards"
    chosen_card_value: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        out["slack_bound"] = None if self.slack_bound is None else str(self.slack_bound)
        return out


def estimate_edges(deck: PartialDeck) -> EdgeEstimate:
    """``m~ = sum of given edge counts / (n - 2 - k)``.

    The given cards sum to ``(n-k-2) m + sum of missing degrees``, so the
    estimate overshoots by at most ``k(n-1)/(n-2-k)``.
    """
    n, k = deck.n, deck.k
    denom = n - 2 - k
    if denom <= 0:
        raise RegimeError(f"edge estimator needs n - 2 - k > 0 (n={n}, k={k})")
    m_tilde = Fraction(deck.edge_sum(), denom)
    return EdgeEstimate(m_tilde, 2 * m_tilde / n, k, Fraction(k * (n - 1), denom))


def recognize_avg_degree(deck: PartialDeck) -> EdgeEstimate:
    n, k = deck.n, deck.k
    if n < 8:
        raise RegimeError(f"average-degree recognition needs n >= 8, got n={n}")
    if 4 * k > n:
        raise RegimeError(f"average-degree recognition needs k <= n/4, got k={k}, n={n}")
    return estimate_edges(deck)


def infer_d(deck: PartialDeck) -> int:
    """Smallest integer guaranteed to bound the average degree: ``ceil(d~)``, at least 1.

    Outside the recognition regime falls back to ``n - 1``.
    """
    try:
        return max(1, ceil(recognize_avg_degree(deck).d_tilde))
    except RegimeError:
        return max(1, deck.n - 1)


def _check_avg_degree(deck: PartialDeck, d: int, trace: ReconTrace) -> None:
    try:
        est = recognize_avg_degree(deck)
    except RegimeError:
        return
    if est.d_tilde >= d + 1:
        trace.in_regime = False
        trace.notes.append(f"estimated average degree {est.d_tilde} >= d + 1: bound d={d} is false")


def reconstruct_edge_count(deck: PartialDeck, d: int | None = None) -> tuple[int, ReconTrace]:
    """Exact edge count from the ``(j+2)``-nd heaviest card.

    The heaviest card ``G_1`` has a degree bucket ``t <= 2(d+1)`` holding at
    least ``ceil((n/2 - 1)/(2d+3))`` vertices; with ``j = d_{<t}(G_1)`` the
    ``(j+2)``-nd card in edge-descending order was cut from a degree-``t``
    vertex, so ``m = |E(that card)| + t``.
    """
    n, k = deck.n, deck.k
    if n < 3:
        raise InputError("edge reconstruction needs n >= 3")
    if d is None:
        d = infer_d(deck)
    regime = regime_check("edge_count", n, d, k)
    trace = ReconTrace("edge_count", n, k, d, in_regime=regime.satisfied)
    if n - 2 - k > 0:
        trace.slack_bound = estimate_edges(deck).slack_bound
    _check_avg_degree(deck, d, trace)

    if k == 0:
        total = deck.edge_sum()
        if total % (n - 2):
            raise InvariantViolation(f"full deck edge sum {total} not divisible by n - 2 = {n - 2}")
        trace.method = "full_deck"
        trace.value = total // (n - 2)
        trace.in_regime = True
        return trace.value, trace

    cards = deck.sorted_by_edges()
    ref = cards[0].degrees
    need = ceil(Fraction(n - 2, 2 * (2 * d + 3)))
    t = next((s for s in range(2 * (d + 1) + 1) if ref[s] >= need), None)
    if t is None:
        raise RegimeError(f"no degree bucket of the heaviest card reaches {need}: average degree exceeds d={d}")
    if trace.in_regime and ref[t] < k + d + 4:
        raise InvariantViolation(f"bucket d_{t}(G_1)={ref[t]} below k + d + 4 = {k + d + 4} in regime")
    j = ref.prefix(t)
    if j + 2 > len(cards):
        raise RegimeError(f"card index j + 2 = {j + 2} exceeds the {len(cards)} given cards")
    chosen = cards[j + 1].edge_count
    trace.t, trace.j, trace.chosen_card_value = t, j, chosen
    trace.value = chosen + t
    return trace.value, trace


def reconstruct_clique_count(deck: PartialDeck, d: int | None = None, r: int = 3) -> tuple[int, ReconTrace]:
    """Exact ``r``-clique count, mirroring :func:`reconstruct_edge_count` with clique degrees.

    The bucket is read off the heaviest (max-edge) card; the answer comes from
    the ``(j+2)``-nd card in clique-count-descending order.
    """
    n, k = deck.n, deck.k
    if r < 2:
        raise InputError("clique size r must be at least 2")
    for c in deck.cards:
        if c.cliques is None or c.cliques.r != r:
            raise InputError(f"deck cards lack {r}-clique counts; rebuild the deck with r={r}")
    if d is None:
        d = infer_d(deck)
    regime = regime_check("clique_count", n, d, k, r)
    trace = ReconTrace("clique_count", n, k, d, r=r, in_regime=regime.satisfied)
    if n - 2 - k > 0:
        trace.slack_bound = estimate_edges(deck).slack_bound
    _check_avg_degree(deck, d, trace)

    if k == 0 and n > r:
        total = sum(c.cliques.total for c in deck.cards)
        if total % (n - r):
            raise InvariantViolation(f"full deck clique sum {total} not divisible by n - r = {n - r}")
        trace.method = "full_deck"
        trace.value = total // (n - r)
        trace.in_regime = True
        return trace.value, trace
    if not deck.cards:
        raise RegimeError("no cards given")

    cap = comb(2 * (d + 1), r - 1)
    ref = deck.reference_card().cliques.counts
    need = ceil(Fraction(n - 2, 2 * (1 + cap)))
    t = next((s for s in range(cap + 1) if ref[s] >= need), None)
    if t is None:
        raise RegimeError(f"no clique-degree bucket of the heaviest card reaches {need}")
    if trace.in_regime and ref[t] < k + d + 4:
        raise InvariantViolation(f"bucket c_{t}(G_1)={ref[t]} below k + d + 4 = {k + d + 4} in regime")
    j = ref.prefix(t)
    by_cliques = sorted(deck.cards, key=lambda c: -c.cliques.total)
    if j + 2 > len(by_cliques):
        raise RegimeError(f"card index j + 2 = {j + 2} exceeds the {len(by_cliques)} given cards")
    chosen = by_cliques[j + 1].cliques.total
    trace.t, trace.j, trace.chosen_card_value = t, j, chosen
    trace.value = chosen + t
    return trace.value, trace
