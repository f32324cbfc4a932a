"""Exact rigidity matrices for frameworks on the unit circular cylinder."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import PreconditionError
from .graph_core import AnyGraph
from .sparsity import pebble_rank

COORD_BOUND = 10**4


@dataclass(frozen=True)
class CylinderPoint:
    """A point on x^2 + y^2 = 1 from the rational parameter t."""

    t: Fraction
    z: Fraction

    @property
    def x(self) -> Fraction:
        return (1 - self.t**2) / (1 + self.t**2)

    @property
    def y(self) -> Fraction:
        return 2 * self.t / (1 + self.t**2)

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    @property
    def normal(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, Fraction(0))


Realization = dict[int, CylinderPoint]


def _rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-COORD_BOUND, COORD_BOUND), rng.randint(1, COORD_BOUND))


def sample_generic_realization(G: AnyGraph, seed: int | str = 0) -> Realization:
    """Random rational points with pairwise distinct t (and z) values."""
    rng = random.Random(seed)
    ts, zs = set(), set()
    p = {}
    for v in G.sorted_vertices():
        t = _rational(rng)
        while t in ts:
            t = _rational(rng)
        z = _rational(rng)
        while z in zs:
            z = _rational(rng)
        ts.add(t)
        zs.add(z)
        p[v] = CylinderPoint(t, z)
    return p


@dataclass(frozen=True)
class RigidityMatrix:
    rows: list[list[Fraction]]  # edge rows first, then one normal row per vertex
    n_edge_rows: int
    columns: list[int]  # the vertex owning each block of three columns

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), 3 * len(self.columns)


def rigidity_matrix(G: AnyGraph, p: Realization) -> RigidityMatrix:
    vs = G.sorted_vertices()
    missing = [v for v in vs if v not in p]
    if missing:
        raise PreconditionError(f"realization misses vertices {missing}")
    col = {v: 3 * i for i, v in enumerate(vs)}
    width = 3 * len(vs)
    rows = []
    for u, v in G.edge_list():
        row = [Fraction(0)] * width
        for i, (a, b) in enumerate(zip(p[u].coords, p[v].coords)):
            row[col[u] + i] = a - b
            row[col[v] + i] = b - a
        rows.append(row)
    for v in vs:
        row = [Fraction(0)] * width
        row[col[v] : col[v] + 3] = p[v].normal
        rows.append(row)
    return RigidityMatrix(rows, G.m, vs)


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
    return out


def exact_rank(M: RigidityMatrix | list[list]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows = M.rows if isinstance(M, RigidityMatrix) else M
    A = _integer_rows([[Fraction(x) for x in r] for r in rows])
    if not A:
        return 0
    width = len(A[0])
    rank = 0
    prev = 1
    for c in range(width):
        live = [i for i in range(rank, len(A)) if A[i][c] != 0]
        if not live:
            continue
        piv = min(live, key=lambda i: abs(A[i][c]))
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for i in range(rank + 1, len(A)):
            a = A[i][c]
            A[i] = [(p * A[i][j] - a * A[rank][j]) // prev for j in range(width)]
        prev = p
        rank += 1
        if rank == len(A):
            break
    return rank


@dataclass(frozen=True)
class RankReport:
    numeric_rank: int
    combinatorial_rank: int
    agrees: bool
    samples_used: int

    def to_json(self) -> dict:
        return {
            "numeric_rank": self.numeric_rank,
            "combinatorial_rank": self.combinatorial_rank,
            "agrees": self.agrees,
            "samples_used": self.samples_used,
        }


def _edge_rank(G: AnyGraph, seed) -> int:
    return exact_rank(rigidity_matrix(G, sample_generic_realization(G, seed))) - G.n


def edge_matroid_rank(G: AnyGraph, seed: int = 0) -> RankReport:
    """Rank of E(G) in the cylinder rigidity matroid against the (2,2) count.

    A random point can only fall short of the generic rank, so on a mismatch
    one fresh sample is drawn and the larger rank kept.
    """
    target = pebble_rank(G, 2, 2)[0]
    numeric = _edge_rank(G, seed)
    samples = 1
    if numeric != target:
        numeric = max(numeric, _edge_rank(G, f"{seed}:resample"))
        samples = 2
    return RankReport(numeric, target, numeric == target, samples)


def is_inf_rigid(G: AnyGraph, seed: int = 0) -> bool:
    if G.n < 4:
        raise PreconditionError("needs at least 4 vertices")
    want = 3 * G.n - 2
    for s in (seed, f"{seed}:resample"):
        if exact_rank(rigidity_matrix(G, sample_generic_realization(G, s))) == want:
            return True
    return False
