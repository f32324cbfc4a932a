"""Connectivity structure of circuits: cutpairs, 3-edge cutsets, nodes, hanging K4s."""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError
from .graph_core import AnyGraph, Edge, MultiGraph, connected_components, is_connected


@dataclass(frozen=True)
class CutPair:
    a: int
    b: int
    sides: tuple[frozenset[int], frozenset[int]]
    ab_present: bool


@dataclass(frozen=True)
class EdgeCutset3:
    edges: tuple[Edge, Edge, Edge]
    sides: tuple[frozenset[int], frozenset[int]]
    trivial: bool

    @property
    def disjoint(self) -> bool:
        return len({x for e in self.edges for x in e}) == 6


@dataclass(frozen=True)
class NodeCensus:
    nodes: frozenset[int]
    starred: frozenset[int]
    leaf: frozenset[int]
    series: frozenset[int]
    branching: frozenset[int]


# ---------------------------------------------------------------------------
# vertex connectivity


def cut_vertices(G: AnyGraph) -> list[int]:
    base = len(connected_components(G))
    return [v for v in G.sorted_vertices() if len(connected_components(G, removed=[v])) > base]


def cutpairs(G: AnyGraph) -> list[CutPair]:
    """Every pair {a, b} whose removal disconnects G.

    Side A is the component holding the smallest remaining vertex; side B
    collects everything else.
    """
    if G.n < 4:
        raise PreconditionError("cutpairs needs at least 4 vertices")
    if not is_connected(G):
        raise PreconditionError("cutpairs needs a connected graph")
    out = []
    for a, b in combinations(G.sorted_vertices(), 2):
        comps = connected_components(G, removed=(a, b))
        if len(comps) >= 2:
            rest = frozenset().union(*comps[1:])
            out.append(CutPair(a, b, (comps[0], rest), G.has_edge(a, b)))
    return out


def is_2_connected(G: AnyGraph) -> bool:
    return G.n >= 3 and is_connected(G) and not cut_vertices(G)


def is_3_connected(G: AnyGraph) -> bool:
    if G.n < 4 or not is_2_connected(G):
        return False
    return not cutpairs(G)


# ---------------------------------------------------------------------------
# edge connectivity


def _max_flow(cap: dict[int, dict[int, int]], s: int, t: int, limit: int | None) -> int:
    res = {u: dict(nb) for u, nb in cap.items()}
    flow = 0
    while limit is None or flow < limit:
        parent = {s: None}
        q = deque([s])
        while q and t not in parent:
            x = q.popleft()
            for y, c in res[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    q.append(y)
        if t not in parent:
            break
        y = t
        while parent[y] is not None:
            x = parent[y]
            res[x][y] -= 1
            res[y][x] = res[y].get(x, 0) + 1
            y = x
        flow += 1
    return flow


def edge_connectivity(G: AnyGraph, limit: int | None = None) -> int:
    """Minimum number of edges whose removal disconnects G (capped at ``limit``)."""
    if G.n <= 1:
        return 0
    if not is_connected(G):
        return 0
    cap = {v: {u: G.weight(v, u) for u in G._adj[v]} for v in G.vertices}
    vs = G.sorted_vertices()
    s = vs[0]
    best = limit
    for t in vs[1:]:
        f = _max_flow(cap, s, t, best)
        best = f if best is None else min(best, f)
    return best


def _cut_labels(G: AnyGraph, edges: list[Edge], rng: random.Random) -> list[int]:
    """Random labels with XOR(S) == 0 whenever S is an edge cut.

    Non-tree edges get random 64-bit labels; a tree edge gets the XOR of the
    non-tree edges crossing its fundamental cut. The converse holds with high
    probability, so callers verify every candidate.
    """
    vs = G.sorted_vertices()
    inc = defaultdict(list)
    for i, (u, v) in enumerate(edges):
        inc[u].append((i, v))
        inc[v].append((i, u))
    root = vs[0]
    parent_edge = {root: None}
    order = [root]
    q = deque([root])
    while q:
        x = q.popleft()
        for i, y in inc[x]:
            if y not in parent_edge:
                parent_edge[y] = (i, x)
                order.append(y)
                q.append(y)
    tree = {pe[0] for pe in parent_edge.values() if pe is not None}
    labels = [0] * len(edges)
    acc = {v: 0 for v in vs}
    for i, (u, v) in enumerate(edges):
        if i not in tree:
            r = rng.getrandbits(64) or 1
            labels[i] = r
            acc[u] ^= r
            acc[v] ^= r
    for x in reversed(order):
        pe = parent_edge[x]
        if pe is None:
            continue
        i, p = pe
        labels[i] = acc[x]
        acc[p] ^= acc[x]
    return labels


def _components_without(G: AnyGraph, edges: list[Edge], drop: tuple[int, ...]) -> list[frozenset[int]]:
    removed = defaultdict(int)
    for i in drop:
        removed[edges[i]] += 1
    adj = defaultdict(list)
    for e, k in (G.multiplicity.items() if isinstance(G, MultiGraph) else ((e, 1) for e in G.edges)):
        if k - removed.get(e, 0) > 0:
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
    seen = set()
    comps = []
    for s in G.sorted_vertices():
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def three_edge_cutsets(G: AnyGraph, nontrivial_only: bool = True) -> list[EdgeCutset3]:
    """All 3-edge cutsets of a 3-edge-connected graph (multigraphs allowed)."""
    if edge_connectivity(G, limit=3) < 3:
        raise PreconditionError("graph is not 3-edge-connected")
    edges = G.edge_list()
    labels = _cut_labels(G, edges, random.Random(0x3C07))
    by_label = defaultdict(list)
    for i, lab in enumerate(labels):
        by_label[lab].append(i)
    found = {}
    for i, j in combinations(range(len(edges)), 2):
        for k in by_label.get(labels[i] ^ labels[j], ()):
            if k <= j:
                continue
            comps = _components_without(G, edges, (i, j, k))
            if len(comps) != 2:
                continue
            key = tuple(sorted((edges[i], edges[j], edges[k])))
            if key in found:
                continue
            trivial = min(len(c) for c in comps) == 1
            if nontrivial_only and trivial:
                continue
            found[key] = EdgeCutset3(key, (comps[0], comps[1]), trivial)
    return [found[k] for k in sorted(found)]


def nontrivial_3_edge_cutsets(G: AnyGraph) -> list[EdgeCutset3]:
    return three_edge_cutsets(G, nontrivial_only=True)


# ---------------------------------------------------------------------------
# nodes and hanging K4s


def in_k4(G: AnyGraph, v: int) -> bool:
    """Whether a degree-3 vertex lies in a copy of K4 (its neighbours form a triangle)."""
    nb = sorted(G.neighbors(v))
    if len(nb) != 3:
        return False
    return all(G.has_edge(x, y) for x, y in combinations(nb, 2))


def node_census(G: AnyGraph) -> NodeCensus:
    nodes = frozenset(v for v in G.vertices if G.degree(v) == 3)
    starred = frozenset(v for v in nodes if not in_k4(G, v))
    leaf, series, branching = set(), set(), set()
    for v in starred:
        d = sum(1 for u in G.neighbors(v) if u in starred)
        (leaf if d <= 1 else series if d == 2 else branching).add(v)
    return NodeCensus(nodes, starred, frozenset(leaf), frozenset(series), frozenset(branching))


def _is_k4(G: AnyGraph, X) -> bool:
    return all(G.has_edge(x, y) for x, y in combinations(sorted(X), 2))


def hanging_k4_cutpairs(G: AnyGraph) -> list[tuple[CutPair, tuple[int, int, int, int]]]:
    """Cutpairs {a, b} with a side {c, d} such that {a, b, c, d} induces K4.

    A cutpair with two such sides is reported once per side.
    """
    out = []
    for cp in cutpairs(G):
        if not cp.ab_present:
            continue
        for side in cp.sides:
            if len(side) == 2 and _is_k4(G, side | {cp.a, cp.b}):
                c, d = sorted(side)
                out.append((cp, (cp.a, cp.b, c, d)))
    return out


def contract_hanging_k4s(G: AnyGraph) -> MultiGraph:
    """Replace every hanging K4 by a parallel copy of its cutpair edge.

    All hanging sides are contracted at once; on two K4s sharing an edge
    both sides go, leaving a triple edge.
    """
    if G.n < 4:
        return G if isinstance(G, MultiGraph) else G.to_multigraph()
    cps = cutpairs(G)
    hanging = hanging_k4_cutpairs(G)
    with_side = {(cp.a, cp.b) for cp, _ in hanging}
    bad = [(cp.a, cp.b) for cp in cps if (cp.a, cp.b) not in with_side]
    if bad:
        raise PreconditionError(f"cutpairs without a hanging K4: {bad}")
    interiors = [frozenset(k4[2:]) for _, k4 in hanging]
    drop = set().union(*interiors) if interiors else set()
    if sum(len(x) for x in interiors) != len(drop) or any(
        cp.a in drop or cp.b in drop for cp, _ in hanging
    ):
        raise PreconditionError("hanging K4s overlap")
    M = G if isinstance(G, MultiGraph) else G.to_multigraph()
    return M.remove_vertices(drop).add_edges([(cp.a, cp.b) for cp, _ in hanging])
