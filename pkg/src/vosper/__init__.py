"""Vosperian and superconnected digraphs: connectivity, symmetry and
Cayley-digraph classifiers, with brute-force oracles to check them against."""

from .connectivity import (
    connectivity_profile,
    is_superconnected,
    is_vosperian,
    isoperimetric_connectivity,
    k_atoms,
    k_fragments,
    vertex_connectivity,
)
from .digraph import Digraph, cayley_digraph, from_edge_list, parse_edge_list, reverse
from .errors import BudgetExceeded, ParseError, PreconditionError, VosperError
from .groups import FiniteGroup, parse_group_spec, parse_subset, small_group_catalog

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Digraph",
    "FiniteGroup",
    "ParseError",
    "PreconditionError",
    "VosperError",
    "cayley_digraph",
    "connectivity_profile",
    "from_edge_list",
    "is_superconnected",
    "is_vosperian",
    "isoperimetric_connectivity",
    "k_atoms",
    "k_fragments",
    "parse_edge_list",
    "parse_group_spec",
    "parse_subset",
    "reverse",
    "small_group_catalog",
    "vertex_connectivity",
]
