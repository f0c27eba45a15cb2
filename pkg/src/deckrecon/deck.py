"""Decks as multisets of unlabelled card statistics.

Reconstruction code only ever sees :class:`PartialDeck`; cards carry no
vertex labels, so nothing links a card back to the original graph.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError, ParseError
from .graph import DegreeHistogram, Graph, clique_profile, degree_histogram, delete_vertex, enumerate_cliques

POLICIES = ("random", "max_edges_first", "min_edges_first", "target_degrees")


@dataclass(frozen=True)
class CliqueCounts:
    """Clique-degree buckets ``c_t`` and the ``r``-clique total of one card."""

    r: int
    counts: DegreeHistogram
    total: int


@dataclass(frozen=True)
class CardStats:
    vertex_count: int
    edge_count: int
    degrees: DegreeHistogram
    cliques: CliqueCounts | None = None
    # histograms of card - w for every card vertex w above the sub-card threshold
    sub_card_histograms: tuple[DegreeHistogram, ...] | None = None

    def __post_init__(self) -> None:
        if self.degrees.total != self.vertex_count:
            raise InputError(
                f"card histogram covers {self.degrees.total} vertices, expected {self.vertex_count}"
            )
        if self.degrees.weighted_sum != 2 * self.edge_count:
            raise InputError(
                f"card histogram degree sum {self.degrees.weighted_sum} != 2 * {self.edge_count}"
            )

    def sub_card_degrees(self) -> list[int]:
        """Card-degree of each vertex whose deletion produced a sub-card histogram."""
        return [self.edge_count - h.weighted_sum // 2 for h in self.sub_card_histograms or ()]


@dataclass(frozen=True)
class PartialDeck:
    n: int
    cards: tuple[CardStats, ...]
    k: int = field(default=0)

    def __post_init__(self) -> None:
        if self.k < 0:
            raise InputError("missing-card count must be non-negative")
        if len(self.cards) + self.k != self.n:
            raise InputError(f"{len(self.cards)} cards + {self.k} missing != n={self.n}")
        for c in self.cards:
            if c.vertex_count != self.n - 1:
                raise InputError(f"card on {c.vertex_count} vertices in a deck of order {self.n}")

    def __len__(self) -> int:
        return len(self.cards)

    def sorted_by_edges(self) -> list[CardStats]:
        """Cards by edge count, descending; ties keep insertion order."""
        return sorted(self.cards, key=lambda c: -c.edge_count)

    def reference_card(self) -> CardStats:
        if not self.cards:
            raise InputError("deck has no cards")
        return self.sorted_by_edges()[0]

    def edge_sum(self) -> int:
        return sum(c.edge_count for c in self.cards)

    def as_multiset(self) -> Counter:
        return Counter(self.cards)

    def to_text(self) -> str:
        lines = [f"deck {self.n} {self.k}"]
        for c in self.cards:
            lines.append(f"card {c.edge_count} {c.degrees.to_text()}")
            if c.cliques is not None:
                lines.append(f"cliques {c.cliques.r} {c.cliques.counts.to_text()} {c.cliques.total}")
            for h in c.sub_card_histograms or ():
                lines.append(f"subcard {h.to_text()}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> PartialDeck:
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0][0] != "deck" or len(lines[0]) != 3:
            raise ParseError("deck file must start with 'deck <n> <k>'")
        try:
            n, k = int(lines[0][1]), int(lines[0][2])
        except ValueError as exc:
            raise ParseError(f"malformed deck header {' '.join(lines[0])!r}") from exc
        pending: list[dict] = []
        for lineno, parts in enumerate(lines[1:], start=2):
            kind = parts[0]
            try:
                if kind == "card" and len(parts) == 3:
                    pending.append(
                        {"edges": int(parts[1]), "hist": DegreeHistogram.from_text(parts[2]), "cliques": None, "subs": None}
                    )
                elif kind == "cliques" and len(parts) == 4 and pending:
                    pending[-1]["cliques"] = CliqueCounts(
                        int(parts[1]), DegreeHistogram.from_text(parts[2]), int(parts[3])
                    )
                elif kind == "subcard" and len(parts) == 2 and pending:
                    subs = pending[-1]["subs"] or []
                    subs.append(DegreeHistogram.from_text(parts[1]))
                    pending[-1]["subs"] = subs
                else:
                    raise ParseError(f"line {lineno}: unexpected {' '.join(parts)!r}")
            except (ValueError, InputError) as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
        try:
            cards = tuple(
                CardStats(
                    n - 1, p["edges"], p["hist"], p["cliques"],
                    tuple(p["subs"]) if p["subs"] is not None else None,
                )
                for p in pending
            )
            return cls(n, cards, k)
        except InputError as exc:
            raise ParseError(str(exc)) from exc


def _sub_threshold_default(g: Graph) -> int:
    d = max(1, -(-2 * g.m // g.n)) if g.n else 1
    return 100 * d * d


def card_stats_naive(
    g: Graph, v: int, r: int | None = None, subcard_threshold: int | None = None
) -> CardStats:
    card = delete_vertex(g, v)
    cliques = None
    if r is not None:
        prof = clique_profile(card, r)
        cliques = CliqueCounts(r, prof.counts, prof.total)
    subs = None
    if subcard_threshold is not None:
        subs = tuple(
            sorted(
                (degree_histogram(delete_vertex(card, w)) for w in range(card.n) if card.degrees[w] > subcard_threshold),
                key=DegreeHistogram.items,
            )
        )
    return CardStats(card.n, card.m, degree_histogram(card), cliques, subs)


class _DeckStream:
    """Shared precomputation for delta-updating card statistics in O(d(v))."""

    def __init__(self, g: Graph, r: int | None, subcard_threshold: int | None):
        self.g = g
        self.base = Counter(g.degrees)
        self.r = r
        self.threshold = subcard_threshold
        if r is not None:
            self.cdeg = [0] * g.n
            self.shared: list[Counter] = [Counter() for _ in range(g.n)]
            self.total = 0
            for clique in enumerate_cliques(g, r):
                self.total += 1
                for a in clique:
                    self.cdeg[a] += 1
                    for b in clique:
                        if b != a:
                            self.shared[a][b] += 1
            self.cbase = Counter(self.cdeg)
        if subcard_threshold is not None:
            self.high = [w for w in range(g.n) if g.degrees[w] > subcard_threshold]

    def card(self, v: int) -> CardStats:
        g = self.g
        deg = g.degrees
        hist = dict(self.base)
        hist[deg[v]] -= 1
        for w in g.adj[v]:
            hist[deg[w]] -= 1
            hist[deg[w] - 1] = hist.get(deg[w] - 1, 0) + 1
        cliques = None
        if self.r is not None:
            ch = dict(self.cbase)
            ch[self.cdeg[v]] -= 1
            for w, s in self.shared[v].items():
                ch[self.cdeg[w]] -= 1
                ch[self.cdeg[w] - s] = ch.get(self.cdeg[w] - s, 0) + 1
            cliques = CliqueCounts(self.r, DegreeHistogram(ch), self.total - self.cdeg[v])
        subs = None
        if self.threshold is not None:
            nv = g.adj[v]
            subs_list = []
            for w in self.high:
                if w == v:
                    continue
                dw = deg[w] - (w in nv)
                if dw <= self.threshold:
                    continue
                sub = dict(hist)
                sub[dw] -= 1
                for x in g.adj[w]:
                    if x == v:
                        continue
                    dx = deg[x] - (x in nv)
                    sub[dx] -= 1
                    sub[dx - 1] = sub.get(dx - 1, 0) + 1
                subs_list.append(DegreeHistogram(sub))
            subs = tuple(sorted(subs_list, key=DegreeHistogram.items))
        return CardStats(g.n - 1, g.m - deg[v], DegreeHistogram(hist), cliques, subs)


def card_stats_streamed(
    g: Graph, v: int, r: int | None = None, subcard_threshold: int | None = None
) -> CardStats:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} not in graph of order {g.n}")
    return _DeckStream(g, r, subcard_threshold).card(v)


def full_deck(
    g: Graph,
    r: int | None = None,
    with_subcards: bool = False,
    subcard_threshold: int | None = None,
    naive: bool = False,
) -> PartialDeck:
    """All ``n`` cards of ``g`` as statistics, in vertex order.

    With ``with_subcards`` every card records the histograms of its one-vertex
    deletions for vertices of card-degree above ``subcard_threshold``
    (default ``100 * d**2`` with ``d = ceil(2m/n)``).
    """
    if g.n < 1:
        raise InputError("a deck needs at least one vertex")
    thr = None
    if with_subcards:
        thr = subcard_threshold if subcard_threshold is not None else _sub_threshold_default(g)
    if naive:
        cards = tuple(card_stats_naive(g, v, r, thr) for v in range(g.n))
    else:
        stream = _DeckStream(g, r, thr)
        cards = tuple(stream.card(v) for v in range(g.n))
    return PartialDeck(g.n, cards, 0)


def remove_cards(
    deck: PartialDeck,
    k: int,
    policy: str = "random",
    seed: int = 0,
    targets: Sequence[int] | None = None,
    true_m: int | None = None,
) -> PartialDeck:
    """Drop ``k`` cards under ``policy``; deterministic in ``(policy, seed)``.

    ``target_degrees`` is simulation-only: it needs the true edge count to
    read off each card's deleted-vertex degree ``m - edge_count``, and removes
    cards whose degree is in ``targets``, earlier-listed degrees first.
    """
    if k < 0 or k > len(deck.cards):
        raise InputError(f"cannot remove {k} of {len(deck.cards)} cards")
    idx = list(range(len(deck.cards)))
    if policy == "random":
        drop = set(random.Random(seed).sample(idx, k))
    elif policy == "max_edges_first":
        drop = set(sorted(idx, key=lambda i: -deck.cards[i].edge_count)[:k])
    elif policy == "min_edges_first":
        drop = set(sorted(idx, key=lambda i: deck.cards[i].edge_count)[:k])
    elif policy == "target_degrees":
        if true_m is None or not targets:
            raise InputError("target_degrees needs the true edge count and a non-empty target list")
        rank = {t: i for i, t in reversed(list(enumerate(targets)))}
        cand = [i for i in idx if true_m - deck.cards[i].edge_count in rank]
        if len(cand) < k:
            raise InputError(f"only {len(cand)} cards have a targeted degree, need {k}")
        rng = random.Random(seed)
        rng.shuffle(cand)
        cand.sort(key=lambda i: rank[true_m - deck.cards[i].edge_count])
        drop = set(cand[:k])
    else:
        raise InputError(f"unknown removal policy {policy!r}; choose from {', '.join(POLICIES)}")
    kept = tuple(c for i, c in enumerate(deck.cards) if i not in drop)
    return PartialDeck(deck.n, kept, deck.k + k)


def deck_from_cards(n: int, cards: Iterable[CardStats]) -> PartialDeck:
    cards = tuple(cards)
    return PartialDeck(n, cards, n - len(cards))
