"""End-to-end acceptance checks, one test per criterion.

Each test prints a PASS/FAIL line with its runtime and time limit; the same
lines are repeated in the terminal summary.
"""

import random
import time
from contextlib import contextmanager

import networkx as nx
import pytest

from helpers import (
    ACCEPTANCE_LINES,
    all_graphs,
    base_graphs,
    enumerated,
    enumerated_up_to,
    graphs_up_to,
    hanging_gadget_variants,
    random_circuits,
    random_graph,
    to_nx,
)
from rigidcircuits.construction import BaseKind, base_graph, classify_base, decompose, enumerate_circuits, random_circuit, replay
from rigidcircuits.cylinder import edge_matroid_rank
from rigidcircuits.graph_core import (
    Graph,
    canonical_form,
    complete_bipartite,
    induced_edge_count,
    induced_subgraph,
    is_isomorphic,
)
from rigidcircuits.matroid import is_redundantly_rigid, is_rm_connected, matroid_components
from rigidcircuits.moves import admissible_nodes, first_admissible, is_admissible_pair
from rigidcircuits.sparsity import (
    blocking_tight_set,
    brute_force_critical_sets,
    brute_force_is_circuit,
    brute_force_rank,
    is_circuit,
    is_multicircuit,
    pebble_rank,
)
from rigidcircuits.structure import (
    cutpairs,
    edge_connectivity,
    hanging_k4_cutpairs,
    is_2_connected,
    is_3_connected,
    contract_hanging_k4s,
    node_census,
    nontrivial_3_edge_cutsets,
)


@contextmanager
def criterion(capsys, number, title, limit=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = limit is None or elapsed < limit
        status = "PASS" if ok and in_time else "FAIL"
        budget = f"limit {limit:g}s" if limit is not None else "no limit"
        line = f"criterion {number:2d}: {status}  {title} ({elapsed:.1f}s, {budget})"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
    assert in_time, f"took {elapsed:.1f}s, limit {limit}s"


def well_connected(G):
    """3-connected, no nontrivial 3-edge cutset, at least 6 vertices."""
    return G.n >= 6 and is_3_connected(G) and not nontrivial_3_edge_cutsets(G)


def generated_circuits():
    return list(random_circuits(300, 30, base_seed=11))


def test_criterion_01_base_graphs(capsys):
    with criterion(capsys, 1, "base graphs are circuits", limit=1):
        sizes = {BaseKind.K5_MINUS_E: (5, 9), BaseKind.K4_EDGE_K4: (6, 11), BaseKind.K4_VERTEX_K4: (7, 13)}
        for kind, size in sizes.items():
            G = base_graph(kind)
            assert (G.n, G.m) == size
            assert is_circuit(G) and brute_force_is_circuit(G)


def test_criterion_02_unique_small_circuit(capsys):
    with criterion(capsys, 2, "K5 minus an edge is the only circuit on at most 5 vertices", limit=10):
        assert enumerate_circuits(4) == []
        assert enumerate_circuits(5) == [canonical_form(base_graph(BaseKind.K5_MINUS_E))]


def test_criterion_03_pebble_rank_on_all_six_vertex_graphs(capsys):
    with criterion(capsys, 3, "pebble rank matches exhaustive search on every 6-vertex graph", limit=300):
        classes = all_graphs(6)
        assert len(classes) == sum(1 for g in nx.graph_atlas_g() if g.number_of_nodes() == 6)
        for G in classes:
            assert pebble_rank(G)[0] == brute_force_rank(G)


def test_criterion_04_forward_closure(capsys):
    with criterion(capsys, 4, "1000 random traces replay with every component a circuit", limit=120):
        rng = random.Random(4)
        for seed in range(1000):
            n = rng.randint(5, 30)
            G, trace = random_circuit(n, seed)
            assert replay(trace, check=True) == G


def test_criterion_05_round_trip(capsys):
    with criterion(capsys, 5, "decompose then replay rebuilds the circuit", limit=600):
        corpus = enumerated_up_to(7) + list(random_circuits(200, 30, base_seed=5))
        for G in corpus:
            trace = decompose(G, check=True)
            for leaf in trace.leaves:
                assert classify_base(leaf.graph()) is leaf.base
            H = replay(trace, check=True)
            assert H == G or is_isomorphic(H, G)


def test_criterion_06_two_admissible_nodes(capsys):
    with criterion(capsys, 6, "well-connected circuits have two admissible nodes"):
        checked = 0
        for G in enumerated_up_to(8) + generated_circuits():
            if well_connected(G):
                checked += 1
                assert len(admissible_nodes(G)) >= 2, G
        assert checked > 300


def test_criterion_07_structure_of_circuits(capsys):
    with criterion(capsys, 7, "circuits are 2-connected, 3-edge-connected, starred nodes form a forest"):
        forests = 0
        for G in base_graphs() + enumerated_up_to(8) + generated_circuits():
            assert is_2_connected(G)
            assert edge_connectivity(G) >= 3
            if well_connected(G):
                starred = node_census(G).starred
                assert len(starred) >= 2
                assert nx.is_forest(to_nx(induced_subgraph(G, starred)))
                forests += 1
        assert forests > 300


def test_criterion_08_blocking_sets_explain_non_admissibility(capsys):
    with criterion(capsys, 8, "non-admissible pairs are exactly those blocked by a critical set"):
        pairs = blocked = 0
        for G in enumerated_up_to(8):
            for v in G.sorted_vertices():
                if G.degree(v) != 3:
                    continue
                nb = sorted(G.neighbors(v))
                for u, w in [(a, b) for i, a in enumerate(nb) for b in nb[i + 1 :]]:
                    if G.has_edge(u, w):
                        continue
                    (z,) = set(nb) - {u, w}
                    pairs += 1
                    scan = brute_force_critical_sets(G, contains=(u, w), avoids=(v, z))
                    assert (not is_admissible_pair(G, v, (u, w))) == bool(scan)
                    found = blocking_tight_set(G.remove_vertices([v, z]), u, w)
                    if scan:
                        blocked += 1
                        assert found is not None
                        assert {u, w} <= found.vertices and not {v, z} & found.vertices
                        assert induced_edge_count(G, found.vertices) == 2 * len(found.vertices) - 2
        assert pairs > 1000 and blocked > 0


def test_criterion_09_k36(capsys):
    with criterion(capsys, 9, "K3,6 is 3-connected but not a circuit, nor is any K3,6 minus an edge", limit=1):
        K = complete_bipartite(3, 6)
        assert not is_circuit(K)
        assert is_3_connected(K) and nontrivial_3_edge_cutsets(K) == []
        for e in K.sorted_edges():
            H = K.remove_edges([e])
            assert H.m == 2 * H.n - 1 == 17
            assert not is_circuit(H)


def test_criterion_10_cylinder_rank(capsys):
    with criterion(capsys, 10, "cylinder rigidity rank equals pebble rank", limit=900):
        rng = random.Random(10)
        corpus = graphs_up_to(6)
        corpus += [random_graph(rng.randint(2, 10), rng.uniform(0.2, 0.9), 1000 + i) for i in range(100)]
        for i, G in enumerate(corpus):
            report = edge_matroid_rank(G, seed=i)
            assert report.agrees, (G, report)
            assert report.samples_used <= 2


def _edge_induced(G):
    return Graph({x for e in G.edges for x in e}, G.edges)


def test_criterion_11_matroid_connectivity(capsys):
    with criterion(capsys, 11, "2-connected and redundantly rigid iff matroid-connected", limit=600):
        rng = random.Random(11)
        randoms = [_edge_induced(random_graph(rng.randint(4, 12), rng.uniform(0.3, 0.95), 2000 + i)) for i in range(100)]
        positives = 0
        for G in graphs_up_to(6) + randoms:
            if G.n < 4 or G.m < 2 or any(G.degree(v) == 0 for v in G.vertices):
                continue
            lhs = is_2_connected(G) and is_redundantly_rigid(G)
            assert lhs == is_rm_connected(G), G
            positives += lhs
        assert positives > 10
        for G in graphs_up_to(6):
            assert matroid_components(G) == matroid_components(G, oracle=True)


def _all_cutpairs_hanging(G):
    pairs = {(cp.a, cp.b) for cp in cutpairs(G)}
    hanging = {(cp.a, cp.b) for cp, _ in hanging_k4_cutpairs(G)}
    return bool(pairs) and pairs == hanging


def test_criterion_12_contracted_multicircuits(capsys):
    with criterion(capsys, 12, "contracted multicircuits have an admissible node"):
        sources = list(enumerated(7)) + list(enumerated(8)) + [G for G in generated_circuits() if G.n <= 20]
        corpus = []
        for G in sources:
            first = hanging_gadget_variants(G)
            corpus += first
            for H in first[:2]:
                corpus += hanging_gadget_variants(H)[:2]
        corpus += [G for G in generated_circuits() if _all_cutpairs_hanging(G)]
        checked = 0
        for G in corpus:
            if not _all_cutpairs_hanging(G):
                continue
            M = contract_hanging_k4s(G)
            if M.n < 6 or not is_multicircuit(M) or not is_3_connected(M) or nontrivial_3_edge_cutsets(M):
                continue
            if any(M.degree(v) == 3 and len(M.neighbors(v)) != 3 for v in M.vertices):
                continue
            checked += 1
            assert first_admissible(M) is not None, M
        assert checked > 100


@pytest.mark.parametrize("n", [6, 7, 8])
def test_enumerated_circuit_counts_are_frozen(n):
    assert len(enumerated(n)) == {6: 5, 7: 30, 8: 300}[n]
