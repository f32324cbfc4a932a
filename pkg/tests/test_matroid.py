import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import enumerated_up_to, random_graph
from rigidcircuits.construction import BaseKind, base_graph
from rigidcircuits.errors import PreconditionError
from rigidcircuits.graph_core import Graph, complete_bipartite, complete_graph
from rigidcircuits.matroid import (
    _tight_set_circuits,
    all_circuits,
    fundamental_circuit,
    is_redundantly_rigid,
    is_rm_connected,
    matroid_components,
    redundantly_rigid_components,
)
from rigidcircuits.sparsity import is_circuit, pebble_rank

K5E = base_graph(BaseKind.K5_MINUS_E)


def glued_pair(extra_edge=False):
    """Two copies of K5 minus an edge sharing vertex 0."""
    right = K5E.relabel({0: 0, 1: 5, 2: 6, 3: 7, 4: 8})
    G = Graph(range(9), K5E.edges | right.edges)
    return G.add_edges([(1, 5)]) if extra_edge else G


def bridged_pair():
    right = K5E.relabel({v: v + 10 for v in range(5)})
    G = Graph(list(range(5)) + list(range(10, 15)) + [20], K5E.edges | right.edges)
    return G.add_edges([(0, 20), (20, 10)])


def test_fundamental_circuit_of_k5e_is_everything():
    _, basis = pebble_rank(K5E)
    (e,) = K5E.edges - set(basis)
    assert fundamental_circuit(K5E, basis, e) == K5E.edges


def test_fundamental_circuit_stays_inside_a_block():
    G = bridged_pair()
    _, basis = pebble_rank(G)
    for e in G.edges - set(basis):
        C = fundamental_circuit(G, basis, e)
        block = {x for f in C for x in f}
        assert block <= set(range(5)) or block <= set(range(10, 15))
        assert is_circuit(Graph(block, C))


def test_fundamental_circuit_errors():
    G = K5E.add_vertices([9]).add_edges([(0, 9)])
    _, basis = pebble_rank(G)
    with pytest.raises(PreconditionError):
        fundamental_circuit(G, [b for b in basis if b != (0, 9)], (0, 9))
    with pytest.raises(PreconditionError):
        fundamental_circuit(K5E, K5E.edges, (0, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 9), st.floats(0.4, 0.9), st.integers(0, 10**6))
def test_tight_set_circuits_match_single_swap_definition(n, p, seed):
    G = random_graph(n, p, seed)
    basis, circuits = _tight_set_circuits(G)
    rejected = sorted(G.edges - set(basis))
    assert len(rejected) == len(circuits)
    for e, C in zip(rejected, circuits):
        assert C == fundamental_circuit(G, basis, e)


def test_components_examples():
    for G in enumerated_up_to(6):
        mc = matroid_components(G)
        assert mc.partition == [G.edges] and mc.bridges == []
    G = K5E.add_vertices([9]).add_edges([(0, 9)])
    mc = matroid_components(G)
    assert mc.partition == [K5E.edges] and mc.bridges == [(0, 9)]


def test_components_agree_with_circuit_scan_on_random_graphs():
    for seed in range(25):
        G = random_graph(7, 0.65, seed)
        assert matroid_components(G) == matroid_components(G, oracle=True)


def test_all_circuits_of_k5():
    circuits = all_circuits(complete_graph(range(5)))
    assert len(circuits) == 10 and all(len(C) == 9 for C in circuits)


def test_rm_connected_examples():
    assert is_rm_connected(K5E)
    assert not is_rm_connected(complete_graph(range(4)))
    assert not is_rm_connected(glued_pair())
    assert is_rm_connected(glued_pair(extra_edge=True))
    with pytest.raises(PreconditionError):
        is_rm_connected(Graph([0, 1], [(0, 1)]))


def test_redundant_rigidity_examples():
    for G in enumerated_up_to(7):
        assert is_redundantly_rigid(G)
    assert not is_redundantly_rigid(complete_graph(range(4)))
    B = complete_bipartite(3, 6)
    assert B.m == 18 and pebble_rank(B)[0] == 16 and is_redundantly_rigid(B)
    assert is_redundantly_rigid(glued_pair())
    with pytest.raises(PreconditionError):
        is_redundantly_rigid(complete_graph(range(3)))


def test_redundantly_rigid_components_examples():
    rc = redundantly_rigid_components(K5E)
    assert rc.components == [K5E.edges] and rc.bridges == []
    # sharing one vertex keeps the union rigid, so the glued pair is a single component
    G = glued_pair()
    assert redundantly_rigid_components(G).components == [G.edges]
    assert len(matroid_components(G).partition) == 2
    tight_tree = Graph(range(6), [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5)])
    rc = redundantly_rigid_components(tight_tree)
    assert rc.components == [] and len(rc.bridges) == tight_tree.m
    rc = redundantly_rigid_components(bridged_pair())
    assert len(rc.components) == 2 and rc.bridges == [(0, 20), (10, 20)]


def _maximal_rr_sets(G):
    good = []
    edges = G.sorted_edges()
    for r in range(len(edges), 0, -1):
        for F in combinations(edges, r):
            F = frozenset(F)
            if any(F <= H for H in good):
                continue
            vs = {x for e in F for x in e}
            if len(vs) >= 4 and is_redundantly_rigid(Graph(vs, F)):
                good.append(F)
    return sorted(good, key=min)


@pytest.mark.parametrize("seed", range(6))
def test_redundantly_rigid_components_are_the_maximal_sets(seed):
    rng = random.Random(seed)
    n = 6
    pairs = list(combinations(range(n), 2))
    G = Graph(range(n), rng.sample(pairs, rng.randint(9, 12)))
    rc = redundantly_rigid_components(G)
    assert rc.components == _maximal_rr_sets(G)
    mc = matroid_components(G)
    for part in mc.partition:
        assert any(part <= C for C in rc.components)
    assert set(mc.bridges) == set(rc.bridges)
