"""Screewidth, scramble number and chip-firing gonality.

Exact solvers at desk scale, certificate verifiers at any scale, and a
regression corpus of known values.
"""

from . import errors
from .graphs import (
    Multigraph,
    VertexSet,
    build,
    cartesian_product,
    edge_connectivity,
    family,
    independence_number,
    rooted_product,
)
from .treecut import TreeCutDecomposition, WidthReport, validate, width
from .scrambles import OrderReport, Scramble, order, validate_scramble
from .chipfiring import Divisor, gonality, has_positive_rank, q_reduce

__all__ = [
    "errors",
    "Multigraph",
    "VertexSet",
    "build",
    "family",
    "cartesian_product",
    "rooted_product",
    "edge_connectivity",
    "independence_number",
    "TreeCutDecomposition",
    "WidthReport",
    "validate",
    "width",
    "Scramble",
    "OrderReport",
    "validate_scramble",
    "order",
    "Divisor",
    "q_reduce",
    "has_positive_rank",
    "gonality",
]

__version__ = "0.1.0"

SCHEMA_VERSIONS = {
    "graph": 1,
    "tree_cut_certificate": 1,
    "scramble_certificate": 1,
    "divisor": 1,
    "bounds_ledger": 1,
    "corpus_record": 1,
}
