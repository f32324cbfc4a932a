"""Decomposition of circuits into base graphs, trace replay, generation and enumeration."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .errors import GraphFormatError, PreconditionError, TheoremViolation
from .graph_core import Graph, canonical_form, complete_graph, is_isomorphic, isomorphism
from .moves import (
    MoveKind,
    MoveRecord,
    first_admissible,
    fresh_pair,
    henneberg2,
    inverse_henneberg2,
    is_hanging_k4,
    one_separation,
    one_sum,
    orient_cutset,
    three_separation,
    three_sum,
    two_separation,
    two_sum,
)
from .sparsity import brute_force_is_circuit, is_circuit, is_sparse
from .structure import cutpairs, hanging_k4_cutpairs, is_3_connected, nontrivial_3_edge_cutsets, three_edge_cutsets

ENUMERATION_CAP = 8


class BaseKind(str, Enum):
    K5_MINUS_E = "K5minusE"
    K4_EDGE_K4 = "K4edgeK4"
    K4_VERTEX_K4 = "K4vertexK4"


def base_graph(kind: BaseKind) -> Graph:
    """The base graph on vertices 0..n-1 in a fixed labeling."""
    kind = BaseKind(kind)
    if kind is BaseKind.K5_MINUS_E:
        return complete_graph(range(5)).remove_edges([(3, 4)])
    if kind is BaseKind.K4_EDGE_K4:
        return Graph(range(6), complete_graph([0, 1, 2, 3]).edges | complete_graph([0, 1, 4, 5]).edges)
    return Graph(range(7), complete_graph([0, 1, 2, 3]).edges | complete_graph([0, 4, 5, 6]).edges | {(1, 4)})


_BASE_SIZES = {BaseKind.K5_MINUS_E: (5, 9), BaseKind.K4_EDGE_K4: (6, 11), BaseKind.K4_VERTEX_K4: (7, 13)}


def classify_base(G: Graph) -> BaseKind | None:
    for kind, (n, m) in _BASE_SIZES.items():
        if G.n == n and G.m == m and is_isomorphic(G, base_graph(kind)):
            return kind
    return None


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class Leaf:
    component: int
    base: BaseKind
    labels: tuple[int, ...]  # labels[i] is the id given to vertex i of base_graph(base)

    def graph(self) -> Graph:
        G = base_graph(self.base)
        if len(self.labels) != G.n or len(set(self.labels)) != G.n:
            raise PreconditionError(f"leaf {self.component}: bad label list")
        return G.relabel(dict(enumerate(self.labels)))


@dataclass(frozen=True)
class TraceStep:
    """A forward move; Henneberg2 acts on one component, sums merge two."""

    record: MoveRecord
    inputs: tuple[int, ...]
    out: int

    def to_json(self) -> dict:
        obj = {"kind": self.record.kind.value}
        if self.record.kind is MoveKind.HENNEBERG2:
            obj["component"] = self.inputs[0]
        else:
            obj["left"], obj["right"] = self.inputs
            obj["out"] = self.out
        obj["params"] = self.record.params
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> TraceStep:
        kind = MoveKind(obj["kind"])
        rec = MoveRecord(kind, dict(obj.get("params", {})))
        if kind is MoveKind.HENNEBERG2:
            c = int(obj["component"])
            return cls(rec, (c,), c)
        return cls(rec, (int(obj["left"]), int(obj["right"])), int(obj["out"]))


@dataclass
class ConstructionTrace:
    leaves: list[Leaf] = field(default_factory=list)
    steps: list[TraceStep] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "leaves": [{"component": l.component, "base": l.base.value, "labels": list(l.labels)} for l in self.leaves],
            "steps": [s.to_json() for s in self.steps],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> ConstructionTrace:
        try:
            leaves = []
            for l in obj["leaves"]:
                kind = BaseKind(l["base"])
                labels = tuple(int(x) for x in l.get("labels", range(_BASE_SIZES[kind][0])))
                leaves.append(Leaf(int(l["component"]), kind, labels))
            steps = [TraceStep.from_json(s) for s in obj.get("steps", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"malformed trace: {exc}") from exc
        return cls(leaves, steps)

    @classmethod
    def loads(cls, text: str) -> ConstructionTrace:
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc

    def count(self, kind: MoveKind) -> int:
        return sum(1 for s in self.steps if s.record.kind is kind)


def _pairs(seq) -> list[tuple[int, int]]:
    return [(int(a), int(b)) for a, b in seq]


def apply_step(step: TraceStep, operands: list[Graph], check: bool = True) -> Graph:
    p = step.record.params
    kind = step.record.kind
    if kind is MoveKind.HENNEBERG2:
        (G,) = operands
        return henneberg2(G, tuple(p["edge"]), int(p["z"]), int(p["v"]))
    G1, G2 = operands
    if kind is MoveKind.SUM1:
        return one_sum(G1, tuple(p["edge"]), G2, tuple(p["k4"]), check=check)
    if kind is MoveKind.SUM2:
        return two_sum(G1, tuple(p["k4_left"]), G2, tuple(p["k4_right"]), check=check)
    if kind is MoveKind.SUM3:
        return three_sum(G1, int(p["v_left"]), G2, int(p["v_right"]), _pairs(p["matching"]), check=check)
    raise PreconditionError(f"{kind.value} is not a forward move")


def replay(trace: ConstructionTrace, check: bool = True) -> Graph:
    """Rebuild the labeled graph a trace describes.

    With ``check`` every intermediate component is tested with is_circuit;
    a failure there is a theorem violation, since each forward move maps
    circuits to circuits.
    """
    comps: dict[int, Graph] = {}
    for leaf in trace.leaves:
        if leaf.component in comps:
            raise PreconditionError(f"duplicate component id {leaf.component}")
        comps[leaf.component] = leaf.graph()
    for i, step in enumerate(trace.steps):
        missing = [c for c in step.inputs if c not in comps]
        if missing or len(set(step.inputs)) != len(step.inputs):
            raise PreconditionError(f"step {i}: unknown or repeated component {step.inputs}")
        operands = [comps.pop(c) for c in step.inputs]
        out = apply_step(step, operands, check=check)
        if step.out in comps:
            raise PreconditionError(f"step {i}: output id {step.out} already in use")
        if check and not is_circuit(out):
            raise TheoremViolation(f"step {i} ({step.record.kind.value}) produced a non-circuit", out)
        comps[step.out] = out
    if len(comps) != 1:
        raise PreconditionError(f"trace leaves {len(comps)} components, expected 1")
    return next(iter(comps.values()))


# ---------------------------------------------------------------------------
# decomposition


def _is_k4_side(G: Graph, side, a: int, b: int) -> bool:
    return len(side) == 2 and all(G.has_edge(x, y) for x, y in combinations(sorted(side | {a, b}), 2))


def _plan(H: Graph):
    """Choose a reduction for a circuit H that is not a base graph."""
    if is_3_connected(H):
        cuts = nontrivial_3_edge_cutsets(H)
        if not cuts:
            hit = first_admissible(H)
            if hit is None:
                raise TheoremViolation("3-connected circuit without non-trivial 3-edge cutset has no admissible node", H)
            return ("H2",) + hit
        if not cuts[0].disjoint:
            raise TheoremViolation("3-connected circuit has a 3-edge cutset with shared endpoints", H)
        return ("S3", cuts[0])
    cps = cutpairs(H)
    for cp in cps:
        if not cp.ab_present:
            return ("S1", cp)
    for cp in cps:
        if not any(_is_k4_side(H, s, cp.a, cp.b) for s in cp.sides):
            return ("S2", cp)
    # Every cutpair has a hanging K4: search all shrinking moves.
    hit = first_admissible(H)
    if hit is not None:
        return ("H2",) + hit
    for cut in three_edge_cutsets(H, nontrivial_only=True):
        ends = orient_cutset(cut)
        if len({x for x, _ in ends}) == 3 and len({y for _, y in ends}) == 3:
            return ("S3", cut)
    raise TheoremViolation("no admissible node or shrinking separation found", H)


def decompose(G: Graph, check: bool = False) -> ConstructionTrace:
    """A construction trace for the circuit G whose replay reproduces G exactly.

    Reductions are tried in a fixed order: base graph, inverse Henneberg 2 on
    a 3-connected graph without non-trivial 3-edge cutsets, 3-separation,
    1-separation, 2-separation away from hanging K4s, then an exhaustive
    search over the remaining shrinking moves.
    """
    if not isinstance(G, Graph) or not is_circuit(G):
        raise PreconditionError("decompose needs a circuit")
    trace = ConstructionTrace()
    backwards: list[TraceStep] = []
    next_id = 1
    stack = [(0, G)]
    while stack:
        cid, H = stack.pop()
        if check and not is_circuit(H):
            raise TheoremViolation("intermediate graph is not a circuit", H)
        kind = classify_base(H)
        if kind is not None:
            iso = isomorphism(base_graph(kind), H)
            trace.leaves.append(Leaf(cid, kind, tuple(iso[i] for i in range(H.n))))
            continue
        plan = _plan(H)
        if plan[0] == "H2":
            _, v, (u, w) = plan
            (z,) = H.neighbors(v) - {u, w}
            child = inverse_henneberg2(H, v, (u, w))
            rec = MoveRecord(MoveKind.HENNEBERG2, {"edge": [u, w], "z": z, "v": v}, (v,))
            backwards.append(TraceStep(rec, (cid,), cid))
            stack.append((cid, child))
            continue
        left_id, right_id = next_id, next_id + 1
        next_id += 2
        if plan[0] == "S3":
            cut = plan[1]
            left, right = three_separation(H, cut, check=check)
            v1, v2 = fresh_pair(H)
            params = {"v_left": v1, "v_right": v2, "matching": [list(p) for p in orient_cutset(cut)]}
            rec = MoveRecord(MoveKind.SUM3, params)
        elif plan[0] == "S1":
            cp = plan[1]
            left, right = one_separation(H, cp, check=check)
            c, d = fresh_pair(H)
            rec = MoveRecord(MoveKind.SUM1, {"edge": [cp.a, cp.b], "k4": [cp.a, cp.b, c, d]})
        else:
            cp = plan[1]
            left, right = two_separation(H, cp, check=check)
            c, d = fresh_pair(H)
            k4 = [cp.a, cp.b, c, d]
            rec = MoveRecord(MoveKind.SUM2, {"k4_left": k4, "k4_right": list(k4)})
        if not (left.n < H.n and right.n < H.n):
            raise TheoremViolation("separation did not shrink the graph", H)
        backwards.append(TraceStep(rec, (left_id, right_id), cid))
        stack.append((right_id, right))
        stack.append((left_id, left))
    trace.steps = backwards[::-1]
    return trace


# ---------------------------------------------------------------------------
# random generation


class _Builder:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.trace = ConstructionTrace()
        self.comps: dict[int, Graph] = {}
        self.next_id = 0
        self.next_label = 0

    def leaf(self, kind: BaseKind) -> int:
        n = _BASE_SIZES[kind][0]
        labels = tuple(range(self.next_label, self.next_label + n))
        self.next_label += n
        cid = self.next_id
        self.next_id += 1
        leaf = Leaf(cid, kind, labels)
        self.trace.leaves.append(leaf)
        self.comps[cid] = leaf.graph()
        return cid

    def step(self, record: MoveRecord, inputs: tuple[int, ...]) -> int:
        out = inputs[0] if len(inputs) == 1 else self.next_id
        if len(inputs) == 2:
            self.next_id += 1
        ts = TraceStep(record, inputs, out)
        G = apply_step(ts, [self.comps.pop(c) for c in inputs], check=False)
        self.trace.steps.append(ts)
        self.comps[out] = G
        return out

    def henneberg(self, cid: int) -> int:
        G = self.comps[cid]
        u, w = self.rng.choice(G.sorted_edges())
        z = self.rng.choice(sorted(G.vertices - {u, w}))
        v = self.next_label
        self.next_label += 1
        return self.step(MoveRecord(MoveKind.HENNEBERG2, {"edge": [u, w], "z": z, "v": v}, (v,)), (cid,))

    def hanging(self, cid: int) -> list[tuple[int, int, int, int]]:
        G = self.comps[cid]
        return [k4 for _, k4 in hanging_k4_cutpairs(G) if is_hanging_k4(G, k4)]

    def _k4(self, k4s):
        a, b, c, d = self.rng.choice(k4s)
        if self.rng.random() < 0.5:
            a, b = b, a
        return [a, b, c, d]

    def sum1(self, c1: int, c2: int) -> int:
        edge = list(self.rng.choice(self.comps[c1].sorted_edges()))
        self.rng.shuffle(edge)
        return self.step(MoveRecord(MoveKind.SUM1, {"edge": edge, "k4": self._k4(self.hanging(c2))}), (c1, c2))

    def sum2(self, c1: int, c2: int) -> int:
        k1, k2 = self._k4(self.hanging(c1)), self._k4(self.hanging(c2))
        return self.step(MoveRecord(MoveKind.SUM2, {"k4_left": k1, "k4_right": k2}), (c1, c2))

    def sum3(self, c1: int, c2: int) -> int:
        G1, G2 = self.comps[c1], self.comps[c2]
        v1 = self.rng.choice([v for v in G1.sorted_vertices() if G1.degree(v) == 3])
        v2 = self.rng.choice([v for v in G2.sorted_vertices() if G2.degree(v) == 3])
        right = sorted(G2.neighbors(v2))
        self.rng.shuffle(right)
        matching = [[x, y] for x, y in zip(sorted(G1.neighbors(v1)), right)]
        return self.step(MoveRecord(MoveKind.SUM3, {"v_left": v1, "v_right": v2, "matching": matching}), (c1, c2))


def _grow(b: _Builder, n: int, depth: int = 0) -> int:
    rng = b.rng
    kinds = [k for k in BaseKind if _BASE_SIZES[k][0] <= n]
    main = b.leaf(rng.choice(kinds))
    while b.comps[main].n < n:
        size = b.comps[main].n
        rem = n - size
        options = [("H2", None)] * 3
        # partner graphs: fresh base graphs, or a grown component for variety
        for kind in BaseKind:
            s = _BASE_SIZES[kind][0]
            if s - 2 <= rem:
                options.append(("S3", kind))
            if kind is not BaseKind.K5_MINUS_E and s - 4 <= rem:
                options.append(("S1", kind))
            if kind is BaseKind.K4_VERTEX_K4 and s - 6 <= rem:
                options.append(("S2", kind))
            if kind is BaseKind.K5_MINUS_E and 1 <= rem:
                options.append(("S1r", kind))
        if depth < 2 and rem >= 4:
            options.append(("S3g", None))
            options.append(("S1g", None))
        op, kind = rng.choice(options)
        if op == "H2":
            main = b.henneberg(main)
        elif op == "S3":
            other = b.leaf(kind)
            main = b.sum3(main, other) if rng.random() < 0.5 else b.sum3(other, main)
        elif op == "S1":
            main = b.sum1(main, b.leaf(kind))
        elif op == "S1r":
            if b.hanging(main):
                main = b.sum1(b.leaf(kind), main)
            else:
                main = b.henneberg(main)
        elif op == "S2":
            if b.hanging(main):
                main = b.sum2(main, b.leaf(kind))
            else:
                main = b.henneberg(main)
        elif op == "S3g":
            m = rng.randint(5, min(rem + 2, 12))
            main = b.sum3(main, _grow(b, m, depth + 1))
        else:
            # keep m - 2 <= rem so the 3-sum fallback cannot overshoot
            m = rng.randint(6, min(rem + 2, 12))
            other = _grow(b, m, depth + 1)
            main = b.sum1(main, other) if b.hanging(other) else b.sum3(main, other)
    return main


def random_circuit(n: int, seed: int = 0) -> tuple[Graph, ConstructionTrace]:
    """A random circuit on exactly n vertices together with the trace that built it."""
    if n < 5:
        raise PreconditionError("circuits have at least 5 vertices")
    b = _Builder(random.Random(seed))
    main = _grow(b, n)
    G = b.comps[main]
    assert G.n == n
    return G, b.trace


# ---------------------------------------------------------------------------
# enumeration


def _check_enum_cap(n: int, cap: int) -> None:
    if n > cap:
        raise PreconditionError(f"enumeration limited to n <= {cap}")


def _subsets(vs: list[int]):
    for r in range(len(vs) + 1):
        yield from combinations(vs, r)


def enumerate_sparse(n: int) -> list[tuple]:
    """Canonical forms of all (2,2)-sparse graphs on n vertices."""
    level = {canonical_form(Graph([0]))} if n >= 1 else {canonical_form(Graph())}
    for i in range(2, n + 1):
        nxt = set()
        for form in level:
            H = Graph(range(i - 1), form[1])
            for S in _subsets(list(range(i - 1))):
                if H.m + len(S) > 2 * i - 2:
                    continue
                G = Graph(range(i), H.edges | {(s, i - 1) for s in S})
                if is_sparse(G):
                    nxt.add(canonical_form(G))
        level = nxt
    return sorted(level)


def enumerate_circuits(n: int, method: str = "augment") -> list[tuple]:
    """Canonical forms of all circuits on exactly n vertices, sorted.

    ``augment`` extends every sparse graph on n-1 vertices by one vertex of
    degree >= 3; ``subsets`` scans every labeled edge set of size 2n-1.
    """
    _check_enum_cap(n, ENUMERATION_CAP)
    if n < 5:
        return []
    found = set()
    if method == "augment":
        for form in enumerate_sparse(n - 1):
            H = Graph(range(n - 1), form[1])
            d = 2 * n - 1 - H.m
            if d < 3 or d > n - 1:
                continue
            for S in combinations(range(n - 1), d):
                G = Graph(range(n), H.edges | {(s, n - 1) for s in S})
                if is_circuit(G):
                    found.add(canonical_form(G))
        for form in found:
            if not brute_force_is_circuit(Graph(range(n), form[1])):
                raise TheoremViolation("pebble-game circuit rejected by brute force", Graph(range(n), form[1]))
    elif method == "subsets":
        _check_enum_cap(n, 7)
        pairs = list(combinations(range(n), 2))
        for es in combinations(pairs, 2 * n - 1):
            deg = [0] * n
            for u, v in es:
                deg[u] += 1
                deg[v] += 1
            if min(deg) < 3:
                continue
            G = Graph(range(n), es)
            if brute_force_is_circuit(G):
                found.add(canonical_form(G))
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(found)


def circuit_from_form(form: tuple) -> Graph:
    return Graph(range(form[0]), form[1])
