"""Command-line front end: ``rigidcircuits <command> ...``; JSON on stdout."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construction import ConstructionTrace, decompose, enumerate_circuits, random_circuit, replay
from .cylinder import edge_matroid_rank
from .errors import GraphFormatError, PreconditionError, TheoremViolation
from .graph_core import Graph, MultiGraph, is_isomorphic, read_graph, to_json_obj
from .matroid import is_rm_connected, matroid_components, redundantly_rigid_components
from .sparsity import (
    brute_force_is_circuit,
    brute_force_is_sparse,
    is_circuit,
    is_multicircuit,
    is_sparse,
    is_tight,
)
from .structure import edge_connectivity, is_2_connected, is_3_connected, node_census, three_edge_cutsets

DEFAULT_SEED = 2024

EXIT_PARSE, EXIT_PRECONDITION, EXIT_THEOREM = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    if path.exists():
        return path.read_text()
    return source  # inline JSON or graph6


def _load_graph(source: str):
    return read_graph(_read_text(source))


def _edges(es) -> list[list[int]]:
    return [list(e) for e in sorted(es)]


def cmd_check(args) -> dict:
    G = _load_graph(args.graph)
    multi = isinstance(G, MultiGraph)
    out = {"n": G.n, "m": G.m, "multigraph": multi}
    if args.oracle:
        out["is_sparse"] = brute_force_is_sparse(G, args.k, args.l)
        out["is_tight"] = out["is_sparse"] and G.m == args.k * G.n - args.l
        out["is_circuit"] = brute_force_is_circuit(G)
    else:
        out["is_sparse"] = is_sparse(G, args.k, args.l)
        out["is_tight"] = is_tight(G, args.k, args.l)
        out["is_circuit"] = is_multicircuit(G) if multi else is_circuit(G)
    if multi:
        out["is_multicircuit"] = out.pop("is_circuit")
    out["two_connected"] = is_2_connected(G)
    out["three_connected"] = is_3_connected(G)
    lam = edge_connectivity(G)
    out["edge_connectivity"] = lam
    if lam >= 3:
        out["nontrivial_3_edge_cutsets"] = [_edges(c.edges) for c in three_edge_cutsets(G)]
    census = node_census(G)
    out["nodes"] = {
        name: sorted(getattr(census, name)) for name in ("nodes", "starred", "leaf", "series", "branching")
    }
    if args.iso:
        out["isomorphic"] = is_isomorphic(G, _load_graph(args.iso))
    return out


def cmd_decompose(args) -> dict:
    G = _load_graph(args.graph)
    if not isinstance(G, Graph):
        raise PreconditionError("decompose needs a simple graph")
    return decompose(G).to_json()


def cmd_build(args) -> dict:
    return to_json_obj(replay(ConstructionTrace.loads(_read_text(args.trace))))


def cmd_generate(args) -> dict:
    G, trace = random_circuit(args.n, args.seed)
    return {"graph": to_json_obj(G), "trace": trace.to_json()}


def cmd_enumerate(args) -> dict:
    forms = enumerate_circuits(args.n)
    return {"n": args.n, "count": len(forms), "circuits": [_edges(f[1]) for f in forms]}


def cmd_components(args) -> dict:
    G = _load_graph(args.graph)
    mc = matroid_components(G, oracle=args.oracle)
    rc = redundantly_rigid_components(G)
    return {
        "matroid_components": [_edges(p) for p in mc.partition],
        "bridges": _edges(mc.bridges),
        "redundantly_rigid_components": [_edges(c) for c in rc.components],
        "rm_connected": G.m >= 2 and is_rm_connected(G, oracle=args.oracle),
    }


def cmd_rank(args) -> dict:
    return edge_matroid_rank(_load_graph(args.graph), args.seed).to_json()


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rigidcircuits", description="Circuits of the simple (2,2)-sparsity matroid.")
    p.add_argument("--out", help="write JSON here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="sparsity, circuit and connectivity facts")
    c.add_argument("graph", help="file, inline JSON/graph6, or - for stdin")
    c.add_argument("--iso", help="second graph to test for isomorphism")
    c.add_argument("--oracle", action="store_true", help="use brute-force subset scans")
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--l", type=int, default=2)
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decompose", help="construction trace of a circuit")
    d.add_argument("graph")
    d.set_defaults(func=cmd_decompose)

    b = sub.add_parser("build", help="replay a construction trace")
    b.add_argument("trace")
    b.set_defaults(func=cmd_build)

    g = sub.add_parser("generate", help="random circuit with its trace")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("enumerate", help="all circuits on n vertices up to isomorphism")
    e.add_argument("--n", type=int, required=True)
    e.set_defaults(func=cmd_enumerate)

    m = sub.add_parser("components", help="matroid and redundantly rigid components")
    m.add_argument("graph")
    m.add_argument("--oracle", action="store_true")
    m.set_defaults(func=cmd_components)

    r = sub.add_parser("rank", help="exact cylinder rank against the (2,2) count")
    r.add_argument("graph")
    r.add_argument("--seed", type=int, default=DEFAULT_SEED)
    r.set_defaults(func=cmd_rank)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
        code = 0
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        graph = to_json_obj(exc.graph) if exc.graph is not None else None
        result = {"theorem_violation": str(exc), "graph": graph}
        code = EXIT_THEOREM
    text = json.dumps(result)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
