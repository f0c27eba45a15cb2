"""Seeded ground-truth graph families with an average-degree cap."""

from __future__ import annotations

import heapq
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import InputError
from .graph import Graph, clique_profile, cycle_graph, degree_histogram, disjoint_union, matching_graph, star_graph

FAMILIES = (
    "matching",
    "cycle",
    "random_forest",
    "erdos_renyi_capped",
    "disjoint_triangles",
    "star_union",
    "from_file",
)


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    d: int = 1
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)


def trim_to_cap(n: int, edges: list[tuple[int, int]], d: int) -> list[tuple[int, int]]:
    """Drop edges until ``2m <= d n``.

    Each step takes the maximum-degree vertex (lowest id on ties) and removes
    its edge to its highest-degree neighbour (lowest id on ties).
    """
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    m = len(edges)
    heap = [(-len(adj[v]), v) for v in range(n)]
    heapq.heapify(heap)
    while 2 * m > d * n:
        negdeg, u = heapq.heappop(heap)
        if -negdeg != len(adj[u]):
            continue
        w = min(adj[u], key=lambda x: (-len(adj[x]), x))
        adj[u].discard(w)
        adj[w].discard(u)
        m -= 1
        heapq.heappush(heap, (-len(adj[u]), u))
        heapq.heappush(heap, (-len(adj[w]), w))
    return [(u, v) for u in range(n) for v in sorted(adj[u]) if u < v]


def _random_forest(n: int, m: int, rng: random.Random) -> list[tuple[int, int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        parent[ru] = rv
        edges.append((min(u, v), max(u, v)))
    return edges


def _gnp(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    """G(n, p) by geometric skipping over the lower triangle."""
    if p <= 0:
        return []
    if p >= 1:
        return [(u, v) for v in range(n) for u in range(v)]
    edges = []
    log_q = math.log(1.0 - p)
    v, w = 1, -1
    while v < n:
        w += 1 + int(math.log(1.0 - rng.random()) / log_q)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.append((w, v))
    return edges


def _check_cap(g: Graph, d: int, family: str) -> Graph:
    if 2 * g.m > d * g.n:
        raise InputError(f"{family} on n={g.n} has average degree {g.average_degree} > d={d}")
    return g


def generate(spec: GenSpec) -> Graph:
    n, d, fam, params = spec.n, spec.d, spec.family, spec.params
    if n < 1 and fam != "from_file":
        raise InputError("generated graphs need n >= 1")
    if d < 1:
        raise InputError("average-degree cap d must be >= 1")
    rng = random.Random(spec.seed)
    if fam == "matching":
        return _check_cap(matching_graph(n), d, fam)
    if fam == "cycle":
        return _check_cap(cycle_graph(n), d, fam)
    if fam == "disjoint_triangles":
        if n % 3:
            raise InputError(f"disjoint_triangles needs n divisible by 3, got {n}")
        return _check_cap(Graph(n, [e for i in range(0, n, 3) for e in ((i, i + 1), (i + 1, i + 2), (i, i + 2))]), d, fam)
    if fam == "star_union":
        leaves = params.get("leaves")
        if isinstance(leaves, str):
            leaves = [int(x) for x in leaves.split(",") if x]
        if not leaves:
            raise InputError("star_union needs params.leaves, e.g. leaves=60")
        parts = [star_graph(l) for l in leaves]
        used = sum(l + 1 for l in leaves)
        if used > n:
            raise InputError(f"stars need {used} vertices, n={n}")
        return _check_cap(disjoint_union(*parts, Graph(n - used)), d, fam)
    if fam == "random_forest":
        m = int(params.get("edges", min(n - 1, d * n // 2)))
        if not 0 <= m <= max(n - 1, 0) or 2 * m > d * n:
            raise InputError(f"random_forest needs 0 <= edges <= min(n - 1, d n / 2), got {m}")
        return Graph(n, _random_forest(n, m, rng))
    if fam == "erdos_renyi_capped":
        p = float(params.get("p", d / max(n - 1, 1)))
        return Graph(n, trim_to_cap(n, _gnp(n, p, rng), d))
    if fam == "from_file":
        path = params.get("path")
        if not path:
            raise InputError("from_file needs params.path")
        g = Graph.from_edge_list(Path(path).read_text())
        return _check_cap(g, d, fam)
    raise InputError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")


def ground_truth(g: Graph) -> dict:
    return {
        "n": g.n,
        "m": g.m,
        "histogram": [[t, c] for t, c in degree_histogram(g).items()],
        "triangle_count": clique_profile(g, 3).total,
    }


def write_graph(g: Graph, path: Path) -> Path:
    """Write the edge list and a ``.truth.json`` sidecar next to it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(g.to_edge_list())
    sidecar = path.with_name(path.name + ".truth.json")
    sidecar.write_text(json.dumps(ground_truth(g), indent=2) + "\n")
    return sidecar
