"""Circuits of the simple (2,2)-sparsity matroid: recognition, construction, rigidity on the cylinder."""

from .construction import BaseKind, ConstructionTrace, classify_base, decompose, enumerate_circuits, random_circuit, replay
from .cylinder import edge_matroid_rank, is_inf_rigid
from .errors import GraphFormatError, PreconditionError, TheoremViolation
from .graph_core import Graph, MultiGraph, canonical_form, is_isomorphic, read_graph
from .matroid import is_redundantly_rigid, is_rm_connected, matroid_components, redundantly_rigid_components
from .sparsity import blocking_tight_set, is_circuit, is_multicircuit, is_sparse, is_tight, pebble_rank

__all__ = [
    "BaseKind",
    "ConstructionTrace",
    "Graph",
    "GraphFormatError",
    "MultiGraph",
    "PreconditionError",
    "TheoremViolation",
    "blocking_tight_set",
    "canonical_form",
    "classify_base",
    "decompose",
    "edge_matroid_rank",
    "enumerate_circuits",
    "is_circuit",
    "is_inf_rigid",
    "is_isomorphic",
    "is_multicircuit",
    "is_redundantly_rigid",
    "is_rm_connected",
    "is_sparse",
    "is_tight",
    "matroid_components",
    "pebble_rank",
    "random_circuit",
    "read_graph",
    "redundantly_rigid_components",
    "replay",
]
