"""Labeled undirected graphs and multigraphs.

Both kinds are immutable. Vertices are non-negative integers that need not be
contiguous; edges are stored as sorted pairs ``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

import json
from collections import Counter
from itertools import combinations
from typing import Iterable, Mapping

from .errors import GraphFormatError, PreconditionError

Edge = tuple[int, int]

CANONICAL_CAP = 16


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise PreconditionError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class _Base:
    __slots__ = ("_vertices", "_adj")

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self._adj[v])

    def degree(self, v: int) -> int:
        return sum(self._adj[v].values())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def weight(self, u: int, v: int) -> int:
        return self._adj.get(u, {}).get(v, 0)

    def fresh_vertex(self) -> int:
        return max(self._vertices, default=-1) + 1

    def degree_sequence(self) -> list[int]:
        return sorted((self.degree(v) for v in self._vertices), reverse=True)


class Graph(_Base):
    """A simple graph: no loops, no parallel edges."""

    __slots__ = ("_edges",)

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()):
        es = [norm_edge(int(u), int(v)) for u, v in edges]
        eset = frozenset(es)
        if len(eset) != len(es):
            raise PreconditionError("duplicate edge in simple graph")
        vs = {int(v) for v in vertices}
        for u, v in eset:
            vs.add(u)
            vs.add(v)
        if any(v < 0 for v in vs):
            raise PreconditionError("vertex ids must be non-negative")
        self._vertices = frozenset(vs)
        self._edges = eset
        adj: dict[int, dict[int, int]] = {v: {} for v in vs}
        for u, v in eset:
            adj[u][v] = 1
            adj[v][u] = 1
        self._adj = adj

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def edge_list(self) -> list[Edge]:
        return sorted(self._edges)

    def add_edges(self, edges: Iterable[Edge]) -> Graph:
        return Graph(self._vertices, list(self._edges) + [tuple(e) for e in edges])

    def remove_edges(self, edges: Iterable[Edge]) -> Graph:
        drop = {norm_edge(*e) for e in edges}
        missing = drop - self._edges
        if missing:
            raise PreconditionError(f"edges not present: {sorted(missing)}")
        return Graph(self._vertices, self._edges - drop)

    def add_vertices(self, vertices: Iterable[int]) -> Graph:
        return Graph(self._vertices | set(vertices), self._edges)

    def remove_vertices(self, vertices: Iterable[int]) -> Graph:
        drop = set(vertices)
        return Graph(
            self._vertices - drop,
            [e for e in self._edges if e[0] not in drop and e[1] not in drop],
        )

    def relabel(self, mapping: Mapping[int, int]) -> Graph:
        """Rename vertices; ids absent from ``mapping`` keep their name."""
        f = lambda x: mapping.get(x, x)  # noqa: E731
        vs = [f(v) for v in self._vertices]
        if len(set(vs)) != len(vs):
            raise PreconditionError("relabeling is not injective")
        return Graph(vs, [(f(u), f(v)) for u, v in self._edges])

    def to_multigraph(self) -> MultiGraph:
        return MultiGraph(self._vertices, {e: 1 for e in self._edges})

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


class MultiGraph(_Base):
    """A loopless multigraph; each stored edge has multiplicity >= 1."""

    __slots__ = ("_mult",)

    def __init__(self, vertices: Iterable[int] = (), edges=()):
        mult: Counter[Edge] = Counter()
        if isinstance(edges, Mapping):
            for (u, v), k in edges.items():
                k = int(k)
                if k < 0:
                    raise PreconditionError("negative multiplicity")
                if k:
                    mult[norm_edge(int(u), int(v))] += k
        else:
            for u, v in edges:
                mult[norm_edge(int(u), int(v))] += 1
        vs = {int(v) for v in vertices}
        for u, v in mult:
            vs.add(u)
            vs.add(v)
        if any(v < 0 for v in vs):
            raise PreconditionError("vertex ids must be non-negative")
        self._vertices = frozenset(vs)
        self._mult = dict(mult)
        adj: dict[int, dict[int, int]] = {v: {} for v in vs}
        for (u, v), k in self._mult.items():
            adj[u][v] = k
            adj[v][u] = k
        self._adj = adj

    @property
    def multiplicity(self) -> dict[Edge, int]:
        return dict(self._mult)

    @property
    def m(self) -> int:
        return sum(self._mult.values())

    def edge_list(self) -> list[Edge]:
        """Sorted edges, repeated according to multiplicity."""
        out = []
        for e in sorted(self._mult):
            out.extend([e] * self._mult[e])
        return out

    def is_simple(self) -> bool:
        return all(k == 1 for k in self._mult.values())

    def underlying(self) -> Graph:
        return Graph(self._vertices, self._mult.keys())

    def to_graph(self) -> Graph:
        if not self.is_simple():
            raise PreconditionError("multigraph has parallel edges")
        return self.underlying()

    def add_edges(self, edges: Iterable[Edge]) -> MultiGraph:
        mult = Counter(self._mult)
        for u, v in edges:
            mult[norm_edge(u, v)] += 1
        return MultiGraph(self._vertices, mult)

    def remove_vertices(self, vertices: Iterable[int]) -> MultiGraph:
        drop = set(vertices)
        return MultiGraph(
            self._vertices - drop,
            {e: k for e, k in self._mult.items() if e[0] not in drop and e[1] not in drop},
        )

    def relabel(self, mapping: Mapping[int, int]) -> MultiGraph:
        f = lambda x: mapping.get(x, x)  # noqa: E731
        vs = [f(v) for v in self._vertices]
        if len(set(vs)) != len(vs):
            raise PreconditionError("relabeling is not injective")
        return MultiGraph(vs, {(f(u), f(v)): k for (u, v), k in self._mult.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._mult == other._mult

    def __hash__(self):
        return hash((self._vertices, frozenset(self._mult.items())))

    def __repr__(self):
        return f"MultiGraph(n={self.n}, multiplicity={dict(sorted(self._mult.items()))})"


AnyGraph = Graph | MultiGraph


def as_multigraph(G: AnyGraph) -> MultiGraph:
    return G if isinstance(G, MultiGraph) else G.to_multigraph()


# ---------------------------------------------------------------------------
# basic operations


def induced_subgraph(G: AnyGraph, X: Iterable[int]) -> AnyGraph:
    X = set(X)
    unknown = X - G.vertices
    if unknown:
        raise PreconditionError(f"unknown vertices {sorted(unknown)}")
    if isinstance(G, MultiGraph):
        return MultiGraph(X, {e: k for e, k in G.multiplicity.items() if e[0] in X and e[1] in X})
    return Graph(X, [e for e in G.edges if e[0] in X and e[1] in X])


def induced_edge_count(G: AnyGraph, X: Iterable[int]) -> int:
    """Number of edges (with multiplicity) having both ends in ``X``."""
    X = set(X)
    return sum(G.weight(u, v) for u in X for v in G._adj[u] if v in X and u < v)


def connected_components(G: AnyGraph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Components of ``G`` minus ``removed``, ordered by smallest vertex."""
    gone = set(removed)
    seen = set(gone)
    comps = []
    for s in G.sorted_vertices():
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        comp = [s]
        while stack:
            x = stack.pop()
            for y in G._adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(G: AnyGraph) -> bool:
    return len(connected_components(G)) <= 1


# ---------------------------------------------------------------------------
# canonical labeling
#
# Individualization-refinement: equitable colour refinement, then branch on
# the first non-singleton cell. Vertices that are twins (identical rows of
# the weighted adjacency matrix outside the pair) are interchangeable by an
# automorphism, so only one twin per class is branched on.


def _refine(colors: list[int], adj: list[dict[int, int]]) -> list[int]:
    ncells = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], w) for u, w in adj[v].items())))
            for v in range(len(colors))
        ]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == ncells:
            return new
        colors, ncells = new, len(order)


def _twin_classes(adj: list[dict[int, int]]) -> list[int]:
    n = len(adj)
    rep = list(range(n))
    for u in range(n):
        if rep[u] != u:
            continue
        for v in range(u + 1, n):
            if rep[v] != v:
                continue
            ru = {x: w for x, w in adj[u].items() if x != v}
            rv = {x: w for x, w in adj[v].items() if x != u}
            if ru == rv:
                rep[v] = u
    return rep


def _canonical_search(adj: list[dict[int, int]]) -> tuple[tuple, list[int]]:
    """Minimum certificate over the search tree and the leaf colouring giving it."""
    n = len(adj)
    twin = _twin_classes(adj)
    edges = [(u, v, w) for u in range(n) for v, w in adj[u].items() if u < v]
    best = None
    best_colors = list(range(n))
    stack = [[0] * n]
    while stack:
        colors = _refine(stack.pop(), adj)
        counts = Counter(colors)
        target = min((c for c, k in counts.items() if k > 1), default=None)
        if target is None:
            cert = tuple(
                sorted(
                    (min(colors[u], colors[v]), max(colors[u], colors[v]), w)
                    for u, v, w in edges
                )
            )
            if best is None or cert < best:
                best, best_colors = cert, colors
            continue
        tried = set()
        for v in range(n):
            if colors[v] != target or twin[v] in tried:
                continue
            tried.add(twin[v])
            stack.append([2 * c + (0 if (x == v or c != target) else 1) for x, c in enumerate(colors)])
    return best or (), best_colors


def _index_adjacency(G: AnyGraph) -> tuple[list[int], list[dict[int, int]]]:
    order = G.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    adj = [{idx[u]: w for u, w in G._adj[v].items()} for v in order]
    return order, adj


def canonical_form(G: AnyGraph, cap: int | None = CANONICAL_CAP) -> tuple:
    """Isomorphism-invariant form ``(n, edges)`` on vertices ``0..n-1``.

    For a simple graph ``edges`` is a sorted tuple of pairs; for a
    multigraph it holds ``(i, j, multiplicity)`` triples.
    """
    if cap is not None and G.n > cap:
        raise PreconditionError(f"canonical_form limited to {cap} vertices (got {G.n})")
    _, adj = _index_adjacency(G)
    cert, _ = _canonical_search(adj)
    if isinstance(G, MultiGraph):
        return (G.n, cert)
    return (G.n, tuple((u, v) for u, v, _ in cert))


def graph_from_form(form: tuple) -> AnyGraph:
    n, edges = form
    if edges and len(edges[0]) == 3:
        return MultiGraph(range(n), {(u, v): w for u, v, w in edges})
    return Graph(range(n), edges)


def is_isomorphic(G1: AnyGraph, G2: AnyGraph) -> bool:
    if type(G1) is not type(G2):
        return False
    if G1.n != G2.n or G1.m != G2.m or G1.degree_sequence() != G2.degree_sequence():
        return False
    return canonical_form(G1, cap=None) == canonical_form(G2, cap=None)


def isomorphism(G1: Graph, G2: Graph) -> dict[int, int] | None:
    """An explicit vertex bijection ``V(G1) -> V(G2)`` or ``None``."""
    if not is_isomorphic(G1, G2):
        return None
    m1 = _canonical_labeling(G1)
    m2 = _canonical_labeling(G2)
    inv2 = {i: v for v, i in m2.items()}
    return {v: inv2[i] for v, i in m1.items()}


def _canonical_labeling(G: AnyGraph) -> dict[int, int]:
    order, adj = _index_adjacency(G)
    _, colors = _canonical_search(adj)
    return {order[i]: colors[i] for i in range(len(order))}


# ---------------------------------------------------------------------------
# small constructors


def complete_graph(vertices: Iterable[int]) -> Graph:
    vs = sorted(vertices)
    return Graph(vs, combinations(vs, 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(G1: Graph, G2: Graph) -> tuple[Graph, dict[int, int]]:
    """Union with ``G2`` shifted past ``max(V(G1))``; returns the shift map."""
    off = G1.fresh_vertex()
    shift = {v: v + off for v in G2.vertices}
    H = G2.relabel(shift)
    return Graph(G1.vertices | H.vertices, G1.edges | H.edges), shift


# ---------------------------------------------------------------------------
# serialization


def to_json_obj(G: AnyGraph) -> dict:
    obj = {"vertices": G.sorted_vertices()}
    if isinstance(G, MultiGraph):
        mult = G.multiplicity
        obj["edges"] = [list(e) for e in sorted(mult)]
        obj["multiplicity"] = {f"{u}-{v}": k for (u, v), k in sorted(mult.items())}
    else:
        obj["edges"] = [list(e) for e in G.sorted_edges()]
    return obj


def from_json_obj(obj) -> AnyGraph:
    try:
        vertices = [int(v) for v in obj.get("vertices", [])]
        edges = [(int(e[0]), int(e[1])) for e in obj.get("edges", [])]
        mult_raw = obj.get("multiplicity")
    except (AttributeError, TypeError, ValueError, IndexError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from exc
    if mult_raw is None:
        return Graph(vertices, edges)
    mult = Counter({norm_edge(u, v): 1 for u, v in edges})
    try:
        for key, k in mult_raw.items():
            a, b = key.split("-")
            mult[norm_edge(int(a), int(b))] = int(k)
    except (AttributeError, ValueError) as exc:
        raise GraphFormatError(f"malformed multiplicity map: {exc}") from exc
    if any(k < 1 for k in mult.values()):
        raise PreconditionError("multiplicities must be positive")
    return MultiGraph(vertices, mult)


def parse_graph6(text: str) -> Graph:
    import networkx as nx

    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    try:
        H = nx.from_graph6_bytes(data.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
        raise GraphFormatError(f"invalid graph6 string: {exc}") from exc
    return Graph(H.nodes, H.edges)


def to_graph6(G: Graph) -> str:
    import networkx as nx

    order = G.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    H = nx.Graph()
    H.add_nodes_from(range(len(order)))
    H.add_edges_from((idx[u], idx[v]) for u, v in G.edges)
    return nx.to_graph6_bytes(H, header=False).decode("ascii").strip()


def read_graph(text: str) -> AnyGraph:
    """Parse JSON or graph6, chosen by the first non-blank character."""
    s = text.strip()
    if not s:
        raise GraphFormatError("empty graph input")
    if s[0] == "{":
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
        return from_json_obj(obj)
    return parse_graph6(s)
