"""(k,l)-sparsity via the pebble game, circuit recognition and brute-force oracles."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import PreconditionError
from .graph_core import AnyGraph, Edge, Graph, MultiGraph, induced_edge_count

BRUTE_FORCE_CAP = 16


@dataclass(frozen=True)
class CriticalSet:
    vertices: frozenset[int]
    edge_count: int


class PebbleGame:
    """Incremental (k,l)-pebble game on a fixed vertex set.

    Every vertex starts with ``k`` pebbles. Accepted edges are oriented out of
    the vertex whose pebble covers them, so ``pebbles[v] + outdeg(v) == k``
    holds throughout.
    """

    def __init__(self, vertices: Iterable[int], k: int = 2, l: int = 2):
        if k < 1 or l < 0 or l >= 2 * k:
            raise PreconditionError(f"need k >= 1 and 0 <= l < 2k, got k={k}, l={l}")
        self.k = k
        self.l = l
        self.pebbles = {v: k for v in vertices}
        self.out: dict[int, Counter] = {v: Counter() for v in self.pebbles}
        self.accepted: list[Edge] = []

    def _fetch(self, root: int, blocked: int) -> bool:
        """Move one free pebble to ``root`` along a directed path, if any."""
        parent = {root: None, blocked: None}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent:
                    continue
                parent[y] = x
                if self.pebbles[y] > 0:
                    self.pebbles[y] -= 1
                    while parent[y] is not None:
                        p = parent[y]
                        self.out[p][y] -= 1
                        if not self.out[p][y]:
                            del self.out[p][y]
                        self.out[y][p] += 1
                        y = p
                    self.pebbles[root] += 1
                    return True
                stack.append(y)
        return False

    def _gather(self, u: int, v: int) -> int:
        need = self.l + 1
        while self.pebbles[u] + self.pebbles[v] < need:
            if self.pebbles[u] < self.k and self._fetch(u, v):
                continue
            if self.pebbles[v] < self.k and self._fetch(v, u):
                continue
            break
        return self.pebbles[u] + self.pebbles[v]

    def can_add(self, u: int, v: int) -> bool:
        """Whether edge uv keeps the accepted set sparse. Rearranges pebbles only."""
        if u == v:
            raise PreconditionError("loops are never (k,l)-sparse here")
        return self._gather(u, v) > self.l

    def add(self, u: int, v: int) -> bool:
        if not self.can_add(u, v):
            return False
        if self.pebbles[u] > 0:
            self.pebbles[u] -= 1
            self.out[u][v] += 1
        else:
            self.pebbles[v] -= 1
            self.out[v][u] += 1
        self.accepted.append((u, v) if u < v else (v, u))
        return True

    def _reach(self, sources: Iterable[int]) -> set[int]:
        seen = set(sources)
        stack = list(seen)
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def minimal_tight_set(self, u: int, v: int) -> frozenset[int]:
        """Smallest tight set containing u and v; requires that uv is blocked."""
        if self.can_add(u, v):
            raise PreconditionError(f"edge {u}{v} is not blocked")
        return frozenset(self._reach((u, v)))

    def maximal_tight_set(self, u: int, v: int) -> frozenset[int]:
        """Largest tight set containing u and v; requires that uv is blocked.

        A vertex lies outside every tight set through u, v exactly when it can
        reach a free pebble sitting somewhere other than u or v.
        """
        if self.can_add(u, v):
            raise PreconditionError(f"edge {u}{v} is not blocked")
        pred: dict[int, list[int]] = {x: [] for x in self.pebbles}
        for x, outs in self.out.items():
            for y in outs:
                pred[y].append(x)
        free = deque(x for x, p in self.pebbles.items() if p > 0 and x not in (u, v))
        escapes = set(free)
        while free:
            y = free.popleft()
            for x in pred[y]:
                if x not in escapes:
                    escapes.add(x)
                    free.append(x)
        assert u not in escapes and v not in escapes
        return frozenset(self.pebbles) - escapes


def _run(G: AnyGraph, k: int, l: int) -> tuple[PebbleGame, list[Edge]]:
    game = PebbleGame(G.vertices, k, l)
    rejected = [e for e in G.edge_list() if not game.add(*e)]
    return game, rejected


def pebble_rank(G: AnyGraph, k: int = 2, l: int = 2) -> tuple[int, list[Edge]]:
    """Rank of E(G) in the (k,l)-count matroid and an independent witness."""
    game, _ = _run(G, k, l)
    return len(game.accepted), list(game.accepted)


def edge_set_rank(vertices: Iterable[int], edges: Iterable[Edge], k: int = 2, l: int = 2) -> int:
    game = PebbleGame(vertices, k, l)
    return sum(game.add(*e) for e in sorted(edges))


def is_sparse(G: AnyGraph, k: int = 2, l: int = 2) -> bool:
    return pebble_rank(G, k, l)[0] == G.m


def is_tight(G: AnyGraph, k: int = 2, l: int = 2) -> bool:
    return G.m == k * G.n - l and is_sparse(G, k, l)


def f_value(G: AnyGraph) -> int:
    return 2 * G.n - G.m


def _is_circuit_counts(G: AnyGraph) -> bool:
    if G.m != 2 * G.n - 1:
        return False
    game, rejected = _run(G, 2, 2)
    if len(rejected) != 1:
        return False
    u, v = rejected[0]
    # The unique circuit in E is the span of the minimal tight set through u, v.
    return game.minimal_tight_set(u, v) == G.vertices


def is_circuit(G: Graph) -> bool:
    """Whether G is a circuit of the simple (2,2)-sparsity matroid."""
    if isinstance(G, MultiGraph):
        raise PreconditionError("is_circuit expects a simple graph; use is_multicircuit")
    return _is_circuit_counts(G)


def is_multicircuit(MG: MultiGraph) -> bool:
    return _is_circuit_counts(MG)


def blocking_tight_set(
    G: AnyGraph, u: int, w: int, k: int = 2, l: int = 2
) -> CriticalSet | None:
    """The maximal tight set through u, w that blocks adding uw, or None."""
    if G.has_edge(u, w) and isinstance(G, Graph):
        raise PreconditionError(f"edge {u}{w} already present")
    if u not in G.vertices or w not in G.vertices:
        raise PreconditionError("unknown vertex")
    game, rejected = _run(G, k, l)
    if rejected:
        raise PreconditionError("graph is not sparse")
    if game.can_add(u, w):
        return None
    X = game.maximal_tight_set(u, w)
    return CriticalSet(X, induced_edge_count(G, X))


# ---------------------------------------------------------------------------
# brute-force oracles (bitmask enumeration; exponential)


def _subset_counts(G: AnyGraph) -> tuple[list[int], list[int]]:
    """Vertex order and i(X) for every vertex subset X given as a bitmask."""
    order = G.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    adjw = [[0] * n for _ in range(n)]
    for v in order:
        for u in G._adj[v]:
            adjw[idx[v]][idx[u]] = G.weight(v, u)
    counts = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        row = adjw[low]
        c = counts[rest]
        r = rest
        while r:
            b = (r & -r).bit_length() - 1
            c += row[b]
            r &= r - 1
        counts[mask] = c
    return order, counts


def _check_cap(G: AnyGraph, cap: int) -> None:
    if G.n > cap:
        raise PreconditionError(f"brute force limited to {cap} vertices (got {G.n})")


def brute_force_is_circuit(G: AnyGraph, cap: int = BRUTE_FORCE_CAP) -> bool:
    _check_cap(G, cap)
    if G.m != 2 * G.n - 1:
        return False
    _, counts = _subset_counts(G)
    full = (1 << G.n) - 1
    for mask in range(1, full):
        if counts[mask] > 2 * mask.bit_count() - 2:
            return False
    return True


def brute_force_is_sparse(G: AnyGraph, k: int = 2, l: int = 2, cap: int = BRUTE_FORCE_CAP) -> bool:
    _check_cap(G, cap)
    _, counts = _subset_counts(G)
    return all(
        counts[mask] <= k * mask.bit_count() - l
        for mask in range(1, 1 << G.n)
        if mask.bit_count() >= 2
    )


def brute_force_rank(G: AnyGraph, k: int = 2, l: int = 2, cap: int = 8) -> int:
    """Size of a largest (k,l)-sparse edge sub-multiset, by exhaustive search."""
    _check_cap(G, cap)
    order = G.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    edges = G.edge_list()
    emask_of_vset = []
    for vmask in range(1 << len(order)):
        size = vmask.bit_count()
        if size < 2:
            continue
        em = 0
        for j, (a, b) in enumerate(edges):
            if vmask >> idx[a] & 1 and vmask >> idx[b] & 1:
                em |= 1 << j
        if em:
            emask_of_vset.append((em, k * size - l))
    for s in range(min(len(edges), max(k * len(order) - l, 0)), 0, -1):
        for combo in combinations(range(len(edges)), s):
            S = 0
            for j in combo:
                S |= 1 << j
            if all((S & em).bit_count() <= bound for em, bound in emask_of_vset):
                return s
    return 0


def brute_force_critical_sets(
    G: AnyGraph,
    contains: Iterable[int] = (),
    avoids: Iterable[int] = (),
    cap: int = BRUTE_FORCE_CAP,
) -> list[frozenset[int]]:
    """All proper X with i(X) = 2|X|-2, containing and avoiding the given vertices."""
    _check_cap(G, cap)
    order, counts = _subset_counts(G)
    idx = {v: i for i, v in enumerate(order)}
    need = sum(1 << idx[v] for v in contains)
    bad = sum(1 << idx[v] for v in avoids)
    full = (1 << len(order)) - 1
    out = []
    for mask in range(1, full):
        if mask & need != need or mask & bad:
            continue
        if counts[mask] == 2 * mask.bit_count() - 2:
            out.append(frozenset(order[i] for i in range(len(order)) if mask >> i & 1))
    return out
