"""Connectivity of the (2,2)-sparsity matroid on a graph's edges."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError
from .graph_core import Edge, Graph, MultiGraph, norm_edge
from .sparsity import PebbleGame, edge_set_rank, is_circuit

ORACLE_CAP = 8


@dataclass(frozen=True)
class MatroidComponents:
    partition: list[frozenset[Edge]]  # non-bridge components, ordered by smallest edge
    bridges: list[Edge]  # edges lying in no circuit

    def all_classes(self) -> list[frozenset[Edge]]:
        return sorted(self.partition + [frozenset([e]) for e in self.bridges], key=min)


@dataclass(frozen=True)
class RigidComponents:
    components: list[frozenset[Edge]]  # maximal redundantly rigid edge sets
    bridges: list[Edge]

    def all_classes(self) -> list[frozenset[Edge]]:
        return sorted(self.components + [frozenset([e]) for e in self.bridges], key=min)


def _simple(G) -> Graph:
    if isinstance(G, MultiGraph):
        raise PreconditionError("matroid connectivity is computed on simple graphs")
    return G


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def groups(self) -> list[frozenset]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(g) for g in out.values()), key=min)


def fundamental_circuit(G: Graph, basis, e: Edge) -> frozenset[Edge]:
    """The unique circuit inside basis + e, found by trying every single swap."""
    basis = {norm_edge(*b) for b in basis}
    e = norm_edge(*e)
    vs = G.vertices
    if edge_set_rank(vs, basis) != len(basis):
        raise PreconditionError("basis is not independent")
    if e in basis:
        raise PreconditionError("edge already in the basis")
    if edge_set_rank(vs, basis | {e}) > len(basis):
        raise PreconditionError(f"edge {e} is independent of the basis")
    out = {e}
    for b in basis:
        if edge_set_rank(vs, (basis - {b}) | {e}) == len(basis):
            out.add(b)
    return frozenset(out)


def _tight_set_circuits(G: Graph) -> tuple[list[Edge], list[frozenset[Edge]]]:
    """A pebble-game basis and the fundamental circuit of every rejected edge.

    The circuit of a rejected edge uv is uv together with the basis edges
    spanned by the smallest tight set through u and v.
    """
    game = PebbleGame(G.vertices)
    rejected = [e for e in G.sorted_edges() if not game.add(*e)]
    basis = list(game.accepted)
    circuits = []
    for u, v in rejected:
        X = game.minimal_tight_set(u, v)
        circuits.append(frozenset([(u, v)] + [b for b in basis if b[0] in X and b[1] in X]))
    return basis, circuits


def all_circuits(G: Graph, cap: int = ORACLE_CAP) -> list[frozenset[Edge]]:
    """Every circuit of the matroid restricted to E(G), by subset scan."""
    G = _simple(G)
    if G.n > cap:
        raise PreconditionError(f"circuit scan limited to {cap} vertices")
    out = []
    for size in range(5, G.n + 1):
        for X in combinations(G.sorted_vertices(), size):
            Xs = set(X)
            inside = [e for e in G.sorted_edges() if e[0] in Xs and e[1] in Xs]
            for C in combinations(inside, 2 * size - 1):
                if is_circuit(Graph(X, C)):
                    out.append(frozenset(C))
    return out


def matroid_components(G: Graph, oracle: bool = False) -> MatroidComponents:
    """Components of the matroid on E(G); ``oracle`` uses the definition directly."""
    G = _simple(G)
    edges = G.sorted_edges()
    circuits = all_circuits(G) if oracle else _tight_set_circuits(G)[1]
    uf = _UnionFind(edges)
    covered = set()
    for C in circuits:
        first, *rest = sorted(C)
        covered |= C
        for f in rest:
            uf.union(first, f)
    parts = [g for g in uf.groups() if len(g) > 1 or next(iter(g)) in covered]
    bridges = [e for e in edges if e not in covered]
    return MatroidComponents(parts, bridges)


def is_rm_connected(G: Graph, oracle: bool = False) -> bool:
    if G.m < 2:
        raise PreconditionError("need at least two edges")
    comps = matroid_components(G, oracle)
    return not comps.bridges and len(comps.partition) == 1


def is_redundantly_rigid(G: Graph) -> bool:
    """Rigid, and still rigid after deleting any single edge."""
    G = _simple(G)
    if G.n < 4:
        raise PreconditionError("redundant rigidity needs at least 4 vertices")
    full = 2 * G.n - 2
    edges = G.edges
    if edge_set_rank(G.vertices, edges) != full:
        return False
    return all(edge_set_rank(G.vertices, edges - {e}) == full for e in edges)


def redundantly_rigid_components(G: Graph) -> RigidComponents:
    """Maximal redundantly rigid edge sets, plus the edges in no circuit.

    Non-bridge matroid components are rigid on their vertex sets, and two
    rigid blocks sharing a vertex have a rigid union, so the answer groups
    the components that are linked through shared vertices.
    """
    mc = matroid_components(G)
    verts = [frozenset(x for e in part for x in e) for part in mc.partition]
    uf = _UnionFind(range(len(mc.partition)))
    owner: dict[int, int] = {}
    for i, vs in enumerate(verts):
        for v in vs:
            if v in owner:
                uf.union(owner[v], i)
            else:
                owner[v] = i
    comps = [frozenset().union(*(mc.partition[i] for i in g)) for g in uf.groups()]
    return RigidComponents(sorted(comps, key=min), mc.bridges)
