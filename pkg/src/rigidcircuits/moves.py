"""Henneberg 2 moves, the three sums and the three separations.

Label conventions (relied on by trace replay):

* the sums keep every label of the left operand; surviving vertices of the
  right operand keep their labels unless one collides with a left label, in
  which case all of them are renumbered in ascending order from
  ``max(V1 | V2) + 1``;
* separations allocate fresh vertices as ``max(V) + 1`` and ``max(V) + 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable

from .errors import PreconditionError
from .graph_core import AnyGraph, Edge, Graph, MultiGraph, connected_components, induced_subgraph, norm_edge
from .sparsity import f_value, is_circuit, is_multicircuit
from .structure import CutPair, EdgeCutset3, in_k4


class MoveKind(str, Enum):
    HENNEBERG2 = "Henneberg2"
    INV_HENNEBERG2 = "InvHenneberg2"
    SUM1 = "Sum1"
    SUM2 = "Sum2"
    SUM3 = "Sum3"
    SEP1 = "Sep1"
    SEP2 = "Sep2"
    SEP3 = "Sep3"


FORWARD = {MoveKind.HENNEBERG2, MoveKind.SUM1, MoveKind.SUM2, MoveKind.SUM3}


@dataclass(frozen=True)
class MoveRecord:
    kind: MoveKind
    params: dict = field(default_factory=dict)
    fresh_labels: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "params": self.params, "fresh_labels": list(self.fresh_labels)}

    @classmethod
    def from_json(cls, obj: dict) -> MoveRecord:
        return cls(MoveKind(obj["kind"]), dict(obj.get("params", {})), tuple(obj.get("fresh_labels", ())))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _require_circuit(G: Graph, name: str) -> None:
    _require(isinstance(G, Graph) and is_circuit(G), f"{name} is not a circuit")


# ---------------------------------------------------------------------------
# Henneberg 2


def henneberg2(G: Graph, edge: Edge, z: int, v_label: int | None = None) -> Graph:
    """Subdivide ``edge`` by a new vertex and join it to ``z``."""
    u, w = edge
    _require(G.has_edge(u, w), f"edge {u}{w} not in graph")
    _require(z in G.vertices and z not in (u, w), "z must be a third existing vertex")
    v = G.fresh_vertex() if v_label is None else v_label
    _require(v not in G.vertices, f"label {v} already used")
    return Graph(G.vertices | {v}, (G.edges - {norm_edge(u, w)}) | {norm_edge(v, u), norm_edge(v, w), norm_edge(v, z)})


def inverse_henneberg2(G: AnyGraph, v: int, pair: tuple[int, int]) -> AnyGraph:
    """Delete the degree-3 vertex v and join the neighbours in ``pair``.

    On multigraphs v must have three distinct neighbours and the new edge may
    not duplicate an existing one.
    """
    u, w = pair
    _require(v in G.vertices, f"unknown vertex {v}")
    nb = G.neighbors(v)
    _require(G.degree(v) == 3 and len(nb) == 3, f"vertex {v} is not a node with 3 distinct neighbours")
    _require(u != w and u in nb and w in nb, "pair must be two distinct neighbours of v")
    _require(not G.has_edge(u, w), f"edge {u}{w} already present")
    return G.remove_vertices([v]).add_edges([(u, w)])


def _circuit_test(G: AnyGraph) -> bool:
    return is_multicircuit(G) if isinstance(G, MultiGraph) else is_circuit(G)


def is_admissible_pair(G: AnyGraph, v: int, pair: tuple[int, int]) -> bool:
    try:
        H = inverse_henneberg2(G, v, pair)
    except PreconditionError:
        return False
    return _circuit_test(H)


def _pairs(G: AnyGraph, v: int) -> list[tuple[int, int]]:
    return list(combinations(sorted(G.neighbors(v)), 2))


def admissible_pairs(G: AnyGraph, v: int) -> list[tuple[int, int]]:
    if G.degree(v) != 3:
        return []
    return [p for p in _pairs(G, v) if is_admissible_pair(G, v, p)]


def admissible_nodes(G: AnyGraph) -> list[tuple[int, list[tuple[int, int]]]]:
    """Every node with at least one admissible pair, ascending by vertex id."""
    out = []
    for v in G.sorted_vertices():
        pairs = admissible_pairs(G, v)
        if pairs:
            out.append((v, pairs))
    return out


def first_admissible(G: AnyGraph) -> tuple[int, tuple[int, int]] | None:
    for v in G.sorted_vertices():
        if G.degree(v) != 3:
            continue
        for p in _pairs(G, v):
            if is_admissible_pair(G, v, p):
                return v, p
    return None


# ---------------------------------------------------------------------------
# sums


def _right_labels(V1: frozenset[int], V2: frozenset[int], identify: dict[int, int], drop: Iterable[int]) -> dict[int, int]:
    survivors = sorted(V2 - set(drop) - set(identify))
    mapping = dict(identify)
    if any(x in V1 for x in survivors):
        nxt = max(V1 | V2) + 1
        for x in survivors:
            mapping[x] = nxt
            nxt += 1
    else:
        mapping.update({x: x for x in survivors})
    return mapping


def is_hanging_k4(G: Graph, k4: tuple[int, int, int, int]) -> bool:
    """Whether {a, b} separates {c, d} from the rest with {a, b, c, d} inducing K4."""
    a, b, c, d = k4
    if len(set(k4)) != 4 or not set(k4) <= G.vertices or G.n <= 4:
        return False
    if not all(G.has_edge(x, y) for x, y in combinations(k4, 2)):
        return False
    return G.degree(c) == 3 and G.degree(d) == 3


def one_sum(G1: Graph, edge: Edge, G2: Graph, k4: tuple[int, int, int, int], check: bool = True) -> Graph:
    """Replace edge a1b1 of G1 by G2 minus its hanging K4 interior and edge a2b2."""
    a1, b1 = edge
    a2, b2, c2, d2 = k4
    if check:
        _require_circuit(G1, "G1")
        _require_circuit(G2, "G2")
    _require(G1.has_edge(a1, b1), f"edge {a1}{b1} not in G1")
    _require(is_hanging_k4(G2, k4), f"{k4} is not a hanging K4 of G2")
    f = _right_labels(G1.vertices, G2.vertices, {a2: a1, b2: b1}, (c2, d2))
    kept2 = [
        (f[x], f[y])
        for x, y in G2.edges
        if x not in (c2, d2) and y not in (c2, d2) and {x, y} != {a2, b2}
    ]
    return Graph(G1.vertices | {f[x] for x in G2.vertices - {c2, d2}}, (G1.edges - {norm_edge(a1, b1)}) | {norm_edge(*e) for e in kept2})


def two_sum(G1: Graph, k4_1: tuple[int, int, int, int], G2: Graph, k4_2: tuple[int, int, int, int], check: bool = True) -> Graph:
    """Glue G1 and G2 along ab after deleting both hanging K4 interiors."""
    a1, b1, c1, d1 = k4_1
    a2, b2, c2, d2 = k4_2
    if check:
        _require_circuit(G1, "G1")
        _require_circuit(G2, "G2")
    _require(is_hanging_k4(G1, k4_1), f"{k4_1} is not a hanging K4 of G1")
    _require(is_hanging_k4(G2, k4_2), f"{k4_2} is not a hanging K4 of G2")
    f = _right_labels(G1.vertices, G2.vertices, {a2: a1, b2: b1}, (c2, d2))
    H1 = G1.remove_vertices([c1, d1])
    kept2 = [
        norm_edge(f[x], f[y])
        for x, y in G2.edges
        if x not in (c2, d2) and y not in (c2, d2) and {x, y} != {a2, b2}
    ]
    return Graph(H1.vertices | {f[x] for x in G2.vertices - {c2, d2}}, H1.edges | set(kept2))


def three_sum(G1: Graph, v1: int, G2: Graph, v2: int, matching: Iterable[tuple[int, int]], check: bool = True) -> Graph:
    """Delete nodes v1, v2 and join their neighbourhoods by ``matching``."""
    matching = [tuple(p) for p in matching]
    if check:
        _require_circuit(G1, "G1")
        _require_circuit(G2, "G2")
    _require(v1 in G1.vertices and G1.degree(v1) == 3, f"v1={v1} is not a node of G1")
    _require(v2 in G2.vertices and G2.degree(v2) == 3, f"v2={v2} is not a node of G2")
    _require(
        len(matching) == 3
        and {x for x, _ in matching} == set(G1.neighbors(v1))
        and {y for _, y in matching} == set(G2.neighbors(v2)),
        "matching must pair N(v1) with N(v2)",
    )
    f = _right_labels(G1.vertices - {v1}, G2.vertices, {}, (v2,))
    H1 = G1.remove_vertices([v1])
    H2 = G2.remove_vertices([v2]).relabel(f)
    return Graph(H1.vertices | H2.vertices, H1.edges | H2.edges | {norm_edge(x, f[y]) for x, y in matching})


# ---------------------------------------------------------------------------
# separations


def fresh_pair(G: AnyGraph) -> tuple[int, int]:
    m = G.fresh_vertex()
    return m, m + 1


def _sides(G: Graph, cutpair) -> tuple[frozenset[int], frozenset[int]]:
    """The bipartition carried by a CutPair, or the canonical one for a bare pair."""
    a, b = _cut_ends(cutpair)
    if isinstance(cutpair, CutPair):
        A, B = cutpair.sides
        _require(A and B and not A & B and A | B == G.vertices - {a, b}, "sides must split V - {a, b}")
        _require(not any(G.neighbors(x) & B for x in A), "an edge joins the two sides")
        return A, B
    comps = connected_components(G, removed=(a, b))
    _require(len(comps) >= 2, f"{{{a},{b}}} is not a cutpair")
    return comps[0], frozenset().union(*comps[1:])


def _cut_ends(cp) -> tuple[int, int]:
    return (cp.a, cp.b) if isinstance(cp, CutPair) else tuple(cp)


def _glue_k4(H: Graph, a: int, b: int, c: int, d: int) -> Graph:
    extra = {norm_edge(x, y) for x, y in combinations((a, b, c, d), 2)}
    return Graph(H.vertices | {c, d}, H.edges | extra)


def one_separation(G: Graph, cutpair, check: bool = True) -> tuple[Graph, Graph]:
    """Split over a cutpair {a, b} with ab not an edge.

    Returns ``(edge_piece, k4_piece)``: the side with f = 2 plus edge ab, and
    the side with f = 3 plus K4(a, b, c, d) on fresh c, d.
    """
    a, b = _cut_ends(cutpair)
    if check:
        _require_circuit(G, "G")
    _require(not G.has_edge(a, b), "one_separation needs ab not in E")
    A, B = _sides(G, cutpair)
    GA = induced_subgraph(G, A | {a, b})
    GB = induced_subgraph(G, B | {a, b})
    fa, fb = f_value(GA), f_value(GB)
    _require({fa, fb} == {2, 3}, f"side f-values are {fa}, {fb}; need {{2, 3}}")
    two, three = (GA, GB) if fa == 2 else (GB, GA)
    c, d = fresh_pair(G)
    return two.add_edges([(a, b)]), _glue_k4(three, a, b, c, d)


def two_separation(G: Graph, cutpair, check: bool = True) -> tuple[Graph, Graph]:
    """Split over a cutpair {a, b} with ab an edge; both sides get K4(a, b, c, d)."""
    a, b = _cut_ends(cutpair)
    if check:
        _require_circuit(G, "G")
    _require(G.has_edge(a, b), "two_separation needs ab in E")
    A, B = _sides(G, cutpair)
    GA = induced_subgraph(G, A | {a, b})
    GB = induced_subgraph(G, B | {a, b})
    _require(f_value(GA) == 2 and f_value(GB) == 2, "both sides must have f = 2")
    c, d = fresh_pair(G)
    return _glue_k4(GA, a, b, c, d), _glue_k4(GB, a, b, c, d)


def orient_cutset(cutset: EdgeCutset3) -> list[tuple[int, int]]:
    """Cut edges as (end in side A, end in side B)."""
    A, B = cutset.sides
    out = []
    for x, y in cutset.edges:
        if x in A and y in B:
            out.append((x, y))
        elif y in A and x in B:
            out.append((y, x))
        else:
            raise PreconditionError(f"edge {x}{y} does not cross the cutset sides")
    return out


def three_separation(G: Graph, cutset: EdgeCutset3, check: bool = True) -> tuple[Graph, Graph]:
    """Split over a non-trivial 3-edge cutset; each side gets a new node."""
    if check:
        _require_circuit(G, "G")
    A, B = cutset.sides
    _require(min(len(A), len(B)) >= 2, "cutset is trivial")
    _require(A | B == G.vertices and not A & B, "sides must partition V")
    crossing = {e for e in G.edges if (e[0] in A) != (e[1] in A)}
    _require(crossing == {norm_edge(*e) for e in cutset.edges} and len(crossing) == 3, "not a 3-edge cutset of G")
    ends = orient_cutset(cutset)
    _require(len({x for x, _ in ends}) == 3 and len({y for _, y in ends}) == 3, "cut edges share an endpoint")
    v1, v2 = fresh_pair(G)
    left = induced_subgraph(G, A).add_vertices([v1]).add_edges([(v1, x) for x, _ in ends])
    right = induced_subgraph(G, B).add_vertices([v2]).add_edges([(v2, y) for _, y in ends])
    return left, right


__all__ = [
    "MoveKind",
    "MoveRecord",
    "FORWARD",
    "henneberg2",
    "inverse_henneberg2",
    "is_admissible_pair",
    "admissible_pairs",
    "admissible_nodes",
    "first_admissible",
    "is_hanging_k4",
    "one_sum",
    "two_sum",
    "three_sum",
    "one_separation",
    "two_separation",
    "three_separation",
    "orient_cutset",
    "fresh_pair",
    "in_k4",
]
