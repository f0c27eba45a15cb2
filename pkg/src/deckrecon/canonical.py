"""Canonical codes for small graphs (n <= 64).

Each connected component is canonised separately by colour refinement
followed by individualisation/backtracking; the graph code is the sorted
concatenation of component codes. Branches equivalent under automorphisms
found so far (plus transpositions of twin vertices) are pruned.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import UnsupportedSizeError
from .graph import Graph

DEFAULT_LIMIT = 64


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes

    def hex(self) -> str:
        return self.code.hex()


def canonical_code(g: Graph, limit: int = DEFAULT_LIMIT) -> CanonicalCode:
    if g.n > limit:
        raise UnsupportedSizeError(f"canonical codes are limited to n <= {limit}, got n={g.n}")
    parts = sorted(_component_code(g, comp) for comp in _components(g))
    return CanonicalCode(bytes([g.n]) + b"".join(parts))


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _component_code(g: Graph, comp: list[int]) -> bytes:
    size = len(comp)
    local = {v: i for i, v in enumerate(comp)}
    adj = [frozenset(local[w] for w in g.adj[v]) for v in comp]
    cert = _Canoniser(adj).run()
    nbytes = (size * (size - 1) // 2 + 7) // 8
    return bytes([size]) + cert.to_bytes(nbytes, "big")


def _refine(cells: list[list[int]], adj: list[frozenset[int]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for i, c in enumerate(cells):
            for v in c:
                cell_of[v] = i
        new: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                sig = tuple(sorted(Counter(cell_of[w] for w in adj[v]).items()))
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            new.extend(groups[s] for s in sorted(groups))
        cells = new
        if not changed:
            return cells


class _Canoniser:
    def __init__(self, adj: list[frozenset[int]]):
        self.adj = adj
        self.n = len(adj)
        self.best: int | None = None
        self.best_order: list[int] | None = None
        self.generators: list[list[int]] = []
        self._add_twin_generators()

    def _add_twin_generators(self) -> None:
        classes: dict[tuple, list[int]] = {}
        for v in range(self.n):
            classes.setdefault(("open", self.adj[v]), []).append(v)
            classes.setdefault(("closed", self.adj[v] | {v}), []).append(v)
        for members in classes.values():
            for a, b in zip(members, members[1:]):
                perm = list(range(self.n))
                perm[a], perm[b] = b, a
                self.generators.append(perm)

    def run(self) -> int:
        self._search(_refine([list(range(self.n))], self.adj), [])
        assert self.best is not None
        return self.best

    def _certificate(self, order: list[int]) -> int:
        label = {v: i for i, v in enumerate(order)}
        n = self.n
        cert = 0
        for v in range(n):
            i = label[v]
            for w in self.adj[v]:
                j = label[w]
                if i < j:
                    # row-major upper-triangle position, most significant first
                    idx = i * n - i * (i + 1) // 2 + (j - i - 1)
                    cert |= 1 << (n * (n - 1) // 2 - 1 - idx)
        return cert

    def _orbit_roots(self, fixed: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            if all(gen[v] == v for v in fixed):
                for v in range(self.n):
                    a, b = find(v), find(gen[v])
                    if a != b:
                        parent[a] = b
        return [find(v) for v in range(self.n)]

    def _search(self, cells: list[list[int]], path: list[int]) -> None:
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            cert = self._certificate(order)
            if self.best is None or cert > self.best:
                self.best, self.best_order = cert, order
            elif cert == self.best:
                gamma = list(range(self.n))
                for a, b in zip(self.best_order, order):
                    gamma[a] = b
                self.generators.append(gamma)
            return
        size = min(len(c) for c in cells if len(c) > 1)
        pos = next(i for i, c in enumerate(cells) if len(c) == size)
        target = cells[pos]
        explored_roots: set[int] = set()
        for x in sorted(target):
            roots = self._orbit_roots(path)
            if roots[x] in {roots[y] for y in explored_roots}:
                continue
            explored_roots.add(x)
            rest = [v for v in target if v != x]
            child = cells[:pos] + [[x], rest] + cells[pos + 1 :]
            self._search(_refine(child, self.adj), path + [x])
