"""Degree-sequence reconstruction from a partial deck.

The pipeline recovers ``m``, estimates ``s_t = sum_i d_t(G_i)`` from a
three-way split of the cards, certifies a degree ``t0`` in ``[n/4, 3n/4]``
with ``d_{t0}(G) = 0`` and then solves

    s_t = (n - 1 - t) d_t(G) + (t + 1) d_{t+1}(G)

downwards and upwards from ``t0``, rounding each step.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .count import infer_d, reconstruct_edge_count, regime_check
from .deck import CardStats, PartialDeck
from .errors import InputError, InvariantViolation, RegimeError
from .graph import DegreeHistogram


@dataclass(frozen=True)
class CardPartition:
    i1_size: int
    i2_size: int
    i3_size: int
    i1_subhistograms: tuple[DegreeHistogram, ...]
    i2_card_refs: tuple[int, ...]
    threshold: int
    reference: DegreeHistogram
    i2_sum: dict[int, int] = field(repr=False)


def build_partition(deck: PartialDeck, m: int, d: int, threshold: int | None = None) -> CardPartition:
    """Split ``[n]`` into high-degree vertices of the reference card (I1),
    given cards of low deleted-vertex degree (I2) and the rest (I3).

    Only the reference card's multiset of sub-card histograms is consulted for
    I1; no vertex identity is shared between cards.
    """
    thr = 100 * d * d if threshold is None else threshold
    ref = deck.reference_card()
    high = sum(c for t, c in ref.degrees.items() if t > thr)
    subs: tuple[DegreeHistogram, ...] = ()
    if high:
        if ref.sub_card_histograms is None:
            raise InputError(
                f"reference card has {high} vertices above degree {thr} but no sub-card data; "
                "rebuild the deck with subcards enabled"
            )
        degs = ref.sub_card_degrees()
        subs = tuple(h for h, dw in zip(ref.sub_card_histograms, degs) if dw > thr)
        if len(subs) != high:
            raise InputError(
                f"reference card carries {len(subs)} sub-card histograms above degree {thr}, "
                f"needs {high}; rebuild the deck with a sub-card threshold <= {thr}"
            )
    i2 = tuple(i for i, c in enumerate(deck.cards) if m - c.edge_count <= thr)
    i3 = deck.n - high - len(i2)
    if i3 < 0:
        raise RegimeError(f"partition sizes exceed n ({high} + {len(i2)} > {deck.n}); edge count is wrong")
    agg: Counter = Counter()
    for i in i2:
        agg.update(deck.cards[i].degrees.as_dict())
    return CardPartition(high, len(i2), i3, subs, i2, thr, ref.degrees, dict(agg))


def estimate_st(deck: PartialDeck, partition: CardPartition, t: int) -> int:
    """``s~_t = sum_{I1} d_t(G_1 - w) + sum_{I2} d_t(G_i) + |I3| d_t(G_1)``."""
    if not 0 <= t <= deck.n:
        raise InputError(f"t={t} outside [0, {deck.n}]")
    s = partition.i2_sum.get(t, 0) + partition.i3_size * partition.reference[t]
    for h in partition.i1_subhistograms:
        s += h[t]
    return s


def find_zero_window(deck: PartialDeck) -> tuple[int, str]:
    """Smallest ``t0`` in ``[ceil(n/4), floor(3n/4)]`` certified to have ``d_{t0}(G) = 0``.

    A vertex of degree ``t0`` shows degree ``t0`` or ``t0 - 1`` on every card but
    its own, so two cards without either degree rule it out. Returns the rule
    that fired: ``"no_card"`` when no card shows either degree, else ``"two_cards"``.
    """
    n = deck.n
    if len(deck.cards) < 2:
        raise RegimeError("the zero-degree window needs at least two cards")
    covering: Counter = Counter()
    for c in deck.cards:
        keys = set(c.degrees.keys())
        covering.update(keys | {t + 1 for t in keys})
    for t in range(ceil(n / 4), 3 * n // 4 + 1):
        lacking = len(deck.cards) - covering[t]
        if lacking >= 2:
            return t, "no_card" if covering[t] == 0 else "two_cards"
    raise RegimeError("no degree in [n/4, 3n/4] is certified absent; input is outside the regime")


@dataclass
class DegSeqState:
    n: int
    k: int
    d: int | None = None
    m: int | None = None
    t0: int | None = None
    zero_rule: str | None = None
    reconstructed: DegreeHistogram | None = None
    provenance: dict[int, str] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    in_regime: bool = False
    max_rounding_distance: Fraction = Fraction(0)
    partition: CardPartition | None = field(default=None, repr=False)
    s_tilde: dict[int, int] = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        hist = self.reconstructed.items() if self.reconstructed is not None else ()
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "m": self.m,
            "t0": self.t0,
            "histogram": [[t, c] for t, c in hist],
            "flags": self.flags,
            "provenance": {str(t): self.provenance[t] for t, _ in hist if t in self.provenance},
            "in_regime": self.in_regime,
            "max_rounding_distance": str(self.max_rounding_distance),
        }


def _round_half_up(num: int, den: int) -> tuple[int, Fraction]:
    value = (2 * num + den) // (2 * den)
    return value, abs(Fraction(num, den) - value)


def _card_consistent(card: CardStats, target: Counter, delta: int) -> bool:
    """Can ``target`` arise from the card by bumping ``delta`` card vertices by one?"""
    bumped_prev = 0
    total = 0
    top = max(max(card.degrees.keys(), default=0), max(target, default=0))
    for t in range(top + 1):
        x = card.degrees[t] - target.get(t, 0) + bumped_prev
        if x < 0 or x > card.degrees[t]:
            return False
        total += x
        bumped_prev = x
    return bumped_prev == 0 and total == delta


def _degrees_from_m(deck: PartialDeck, m: int) -> list[int]:
    return [m - c.edge_count for c in deck.cards]


def _one_missing(deck: PartialDeck, d: int, state: DegSeqState) -> int:
    """Edge count when exactly one card is missing.

    Uses the sorted-card reconstruction in its regime; otherwise keeps the
    candidate ``m`` values compatible with the edge-sum bound and with every
    given card.
    """
    n = deck.n
    if regime_check("edge_count", n, d, 1).satisfied:
        return reconstruct_edge_count(deck, d)[0]
    s = deck.edge_sum()
    if n > 3:
        # s = (n-3) m + d(v_missing), 0 <= d(v_missing) <= n-1
        lo, hi = -(-(s - (n - 1)) // (n - 3)), s // (n - 3)
    else:
        lo, hi = 0, n * (n - 1) // 2
    candidates = []
    for m in range(max(lo, 0), hi + 1):
        degs = _degrees_from_m(deck, m)
        missing = 2 * m - sum(degs)
        if min(degs, default=0) < 0 or not 0 <= missing <= n - 1:
            continue
        full = Counter(degs)
        full[missing] += 1
        ok = True
        for c, dv in zip(deck.cards, degs):
            target = full.copy()
            target[dv] -= 1
            if not _card_consistent(c, target, dv):
                ok = False
                break
        if ok:
            candidates.append(m)
    if not candidates:
        raise RegimeError("no edge count is consistent with the given cards")
    if len(candidates) > 1:
        state.flags.append(f"ambiguous_m:{candidates}")
    return candidates[0]


def reconstruct_degree_sequence(
    deck: PartialDeck, d: int | None = None, force_general: bool = False
) -> tuple[DegreeHistogram, DegSeqState]:
    n, k = deck.n, deck.k
    if n < 3:
        raise InputError("degree-sequence reconstruction needs n >= 3")
    if not deck.cards:
        raise InputError("deck has no cards")
    state = DegSeqState(n, k)
    d0 = d if d is not None else infer_d(deck)

    if k <= 1 and not force_general:
        if k == 0:
            total = deck.edge_sum()
            if total % (n - 2):
                raise InvariantViolation(f"full deck edge sum {total} not divisible by n - 2")
            m = total // (n - 2)
        else:
            m = _one_missing(deck, d0, state)
        degs = _degrees_from_m(deck, m)
        if k == 1:
            degs.append(2 * m - sum(degs))
        state.m, state.d = m, d0
        state.in_regime = not any(f.startswith("ambiguous_m") for f in state.flags)
        if min(degs) < 0 or max(degs) > n - 1:
            state.flags.append("degree_out_of_range")
            state.in_regime = False
        hist = DegreeHistogram.of_values(max(0, x) for x in degs)
        state.provenance = {t: "fast-path" for t, _ in hist.items()}
        state.reconstructed = hist
        return hist, state

    m, edge_trace = reconstruct_edge_count(deck, d0)
    d_ref = max(1, -(-2 * m // n))
    state.m, state.d = m, d_ref
    state.in_regime = (
        edge_trace.in_regime
        and regime_check("degree_sequence", n, d_ref, k).satisfied
        and regime_check("estimate_st", n, d_ref, k).satisfied
    )
    part = build_partition(deck, m, d_ref)
    state.partition = part
    t0, rule = find_zero_window(deck)
    state.t0, state.zero_rule = t0, rule

    counts = [0] * (n + 1)
    prov = {t0: "zero-window"}

    def s_of(t: int) -> int:
        if t not in state.s_tilde:
            state.s_tilde[t] = estimate_st(deck, part, t)
        return state.s_tilde[t]

    def settle(t: int, num: int, den: int, how: str) -> None:
        value, dist = _round_half_up(num, den)
        if dist > state.max_rounding_distance:
            state.max_rounding_distance = dist
        if state.in_regime and dist >= Fraction(1, 2):
            raise InvariantViolation(f"rounding distance {dist} >= 1/2 at t={t} in regime")
        if value < 0:
            state.flags.append(f"clamped_negative:t={t}:{value}")
            value = 0
        counts[t] = value
        if value:
            prov[t] = how

    for t in range(t0 - 1, -1, -1):
        settle(t, s_of(t) - (t + 1) * counts[t + 1], n - 1 - t, "rounded-down")
    for t in range(t0, n - 1):
        settle(t + 1, s_of(t) - (n - 1 - t) * counts[t], t + 1, "rounded-up")

    hist = DegreeHistogram({t: c for t, c in enumerate(counts) if c})
    if hist.total != n or hist.weighted_sum != 2 * m:
        state.flags.append("consistency_failed")
    state.reconstructed = hist
    state.provenance = prov
    return hist, state
