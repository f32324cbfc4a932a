"""Shared graph corpora and small oracles for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

import networkx as nx

from rigidcircuits.construction import BaseKind, base_graph, circuit_from_form, enumerate_circuits, random_circuit
from rigidcircuits.graph_core import Graph, canonical_form, complete_graph
from rigidcircuits.sparsity import is_circuit

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One labeled representative per isomorphism class, found by scanning every edge subset."""
    pairs = list(combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        G = Graph(range(n), [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        seen.setdefault(canonical_form(G), G)
    return tuple(seen[f] for f in sorted(seen))


def graphs_up_to(n: int) -> list[Graph]:
    return [G for k in range(1, n + 1) for G in all_graphs(k)]


@lru_cache(maxsize=None)
def enumerated(n: int) -> tuple[Graph, ...]:
    return tuple(circuit_from_form(f) for f in enumerate_circuits(n))


def enumerated_up_to(n: int) -> list[Graph]:
    return [G for k in range(5, n + 1) for G in enumerated(k)]


@lru_cache(maxsize=None)
def random_circuits(count: int, max_n: int, base_seed: int = 0) -> tuple[Graph, ...]:
    rng = random.Random(base_seed)
    return tuple(random_circuit(rng.randint(5, max_n), base_seed * 100_000 + s)[0] for s in range(count))


def circuit_corpus() -> list[Graph]:
    return list(base_graphs()) + enumerated_up_to(8) + list(random_circuits(60, 24, base_seed=7))


def base_graphs() -> list[Graph]:
    return [base_graph(k) for k in BaseKind]


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(range(n), [e for e in combinations(range(n), 2) if rng.random() < p])


def to_nx(G) -> nx.MultiGraph | nx.Graph:
    H = nx.MultiGraph() if not isinstance(G, Graph) else nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edge_list())
    return H


def brute_isomorphic(G1: Graph, G2: Graph) -> bool:
    if G1.n != G2.n or G1.m != G2.m:
        return False
    a, b = G1.sorted_vertices(), G2.sorted_vertices()
    target = G2.edges
    for perm in permutations(b):
        f = dict(zip(a, perm))
        if all(tuple(sorted((f[u], f[v]))) in target for u, v in G1.edges):
            return True
    return False


def hanging_gadget_variants(G: Graph) -> list[Graph]:
    """Circuits obtained by swapping a node v (with uw an edge) for a K4 hung on uw.

    Contracting the new K4 gives G - v plus a second copy of uw.
    """
    out = []
    for v in G.sorted_vertices():
        if G.degree(v) != 3:
            continue
        nb = sorted(G.neighbors(v))
        for u, w in combinations(nb, 2):
            if not G.has_edge(u, w):
                continue
            c, d = G.fresh_vertex(), G.fresh_vertex() + 1
            H = G.remove_vertices([v]).add_vertices([c, d])
            H = H.add_edges(complete_graph([u, w, c, d]).edges - {(min(u, w), max(u, w))})
            if is_circuit(H):
                out.append(H)
    return out
