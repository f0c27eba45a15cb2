"""Immutable simple graphs, degree and clique statistics, vertex deletion.

Vertices are the integers ``0..n-1``. Deleting a vertex relabels the
survivors order-preservingly so every card is again a graph on ``0..n-2``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import InputError, ParseError


class DegreeHistogram:
    """Sparse, immutable count map ``t -> d_t``.

    Also used for clique-degree buckets ``t -> c_t``; only positive counts are
    stored, so two histograms compare equal iff they describe the same multiset.
    """

    __slots__ = ("_counts", "_items", "_hash")

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        raw = dict(counts.items() if isinstance(counts, Mapping) else counts)
        for t, c in raw.items():
            if t < 0 or c < 0:
                raise InputError(f"histogram entries must be non-negative, got {t}:{c}")
        self._counts = {t: c for t, c in sorted(raw.items()) if c}
        self._items = tuple(self._counts.items())
        self._hash = hash(self._items)

    @classmethod
    def of_values(cls, values: Iterable[int]) -> DegreeHistogram:
        return cls(Counter(values))

    def __getitem__(self, t: int) -> int:
        return self._counts.get(t, 0)

    get = __getitem__

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def keys(self) -> Iterator[int]:
        return iter(self._counts)

    def __contains__(self, t: int) -> bool:
        return t in self._counts

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DegreeHistogram):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"DegreeHistogram({self._counts})"

    def as_dict(self) -> dict[int, int]:
        return dict(self._counts)

    def prefix(self, t: int) -> int:
        """``d_{<t}``: number of entries with value strictly below ``t``."""
        return sum(c for s, c in self._items if s < t)

    @property
    def total(self) -> int:
        return sum(c for _, c in self._items)

    @property
    def weighted_sum(self) -> int:
        return sum(t * c for t, c in self._items)

    @property
    def max_key(self) -> int:
        return self._items[-1][0] if self._items else -1

    def to_text(self) -> str:
        if not self._items:
            return "-"
        return ",".join(f"{t}:{c}" for t, c in self._items)

    @classmethod
    def from_text(cls, text: str) -> DegreeHistogram:
        if text == "-":
            return cls()
        counts: dict[int, int] = {}
        try:
            for part in text.split(","):
                t_s, c_s = part.split(":")
                t, c = int(t_s), int(c_s)
                if t in counts:
                    raise ParseError(f"duplicate histogram key {t} in {text!r}")
                counts[t] = c
        except ValueError as exc:
            raise ParseError(f"malformed histogram {text!r}") from exc
        if list(counts) != sorted(counts):
            raise ParseError(f"histogram keys not ascending in {text!r}")
        return cls(counts)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``. Immutable."""

    __slots__ = ("n", "adj", "degrees", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.degrees: tuple[int, ...] = tuple(len(s) for s in nbrs)
        self.m = sum(self.degrees) // 2

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def average_degree(self) -> Fraction:
        return Fraction(2 * self.m, self.n) if self.n else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def relabel(self, perm: list[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InputError("relabeling must be a permutation of the vertices")
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> Graph:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty edge list")
        try:
            n, m = (int(x) for x in lines[0].split())
            edges = []
            for ln in lines[1:]:
                u, v = (int(x) for x in ln.split())
                if u >= v:
                    raise ParseError(f"edge line {ln!r} must satisfy u < v")
                edges.append((u, v))
        except ValueError as exc:
            raise ParseError(f"malformed edge list: {exc}") from exc
        if len(edges) != m:
            raise ParseError(f"header declares {m} edges, found {len(edges)}")
        if len(set(edges)) != m:
            raise ParseError("duplicate edge")
        try:
            return cls(n, edges)
        except InputError as exc:
            raise ParseError(str(exc)) from exc


def degree_histogram(g: Graph) -> DegreeHistogram:
    return DegreeHistogram.of_values(g.degrees)


def delete_vertex(g: Graph, v: int) -> Graph:
    """The card ``G - v``: drop ``v`` and shift higher labels down by one."""
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} not in graph of order {g.n}")

    def shift(u: int) -> int:
        return u - 1 if u > v else u

    return Graph(g.n - 1, ((shift(a), shift(b)) for a, b in g.edges() if v not in (a, b)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, w + offset) for u, w in h.edges())
        offset += h.n
    return Graph(offset, edges)


# --- small named families -------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((u, a + w) for u in range(a) for w in range(b)))


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with the centre at vertex 0."""
    return complete_bipartite(1, leaves)


def matching_graph(n: int) -> Graph:
    return Graph(n, ((2 * i, 2 * i + 1) for i in range(n // 2)))


# --- cliques ----------------------------------------------------------------


class CliqueProfile:
    """Per-vertex ``r``-clique degrees ``c(v)`` with bucket counts and total."""

    __slots__ = ("r", "per_vertex", "counts", "total")

    def __init__(self, r: int, per_vertex: tuple[int, ...], total: int):
        self.r = r
        self.per_vertex = per_vertex
        self.counts = DegreeHistogram.of_values(per_vertex)
        self.total = total

    def __repr__(self) -> str:
        return f"CliqueProfile(r={self.r}, total={self.total}, counts={self.counts.as_dict()})"


def degeneracy_order(g: Graph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (ties: lowest id)."""
    deg = list(g.degrees)
    buckets: dict[int, set[int]] = {}
    for v, dv in enumerate(deg):
        buckets.setdefault(dv, set()).add(v)
    removed = [False] * g.n
    order = []
    low = 0
    for _ in range(g.n):
        while not buckets.get(low):
            low += 1
        v = min(buckets[low])
        buckets[low].discard(v)
        removed[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
        low = max(low - 1, 0)
    return order


def enumerate_cliques(g: Graph, r: int) -> Iterator[tuple[int, ...]]:
    """Yield every ``r``-clique exactly once.

    Edges are oriented along a degeneracy order, so each clique is found from
    its earliest vertex by extending only through later out-neighbours.
    """
    if r < 1:
        raise InputError("clique size must be positive")
    if r == 1:
        yield from ((v,) for v in range(g.n))
        return
    pos = {v: i for i, v in enumerate(degeneracy_order(g))}
    out = [frozenset(w for w in g.adj[v] if pos[w] > pos[v]) for v in range(g.n)]

    def extend(clique: tuple[int, ...], cand: frozenset[int]) -> Iterator[tuple[int, ...]]:
        if len(clique) == r:
            yield clique
            return
        for w in sorted(cand, key=pos.__getitem__):
            yield from extend(clique + (w,), cand & out[w])

    for v in range(g.n):
        if len(out[v]) >= r - 1:
            yield from extend((v,), out[v])


def clique_profile(g: Graph, r: int) -> CliqueProfile:
    if r < 2:
        raise InputError("clique size r must be at least 2")
    per_vertex = [0] * g.n
    total = 0
    for clique in enumerate_cliques(g, r):
        total += 1
        for v in clique:
            per_vertex[v] += 1
    return CliqueProfile(r, tuple(per_vertex), total)
