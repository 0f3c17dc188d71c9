"""Minimum spectral radius of connected graphs with a given domination number.

Exact characteristic polynomials, Sturm-certified root comparisons,
isomorph-free enumeration and the checks that tie them together.
"""
from .domination import DominationCertificate, domination_number, domination_number_tree
from .enumeration import ClassQuery, class_members, connected_graphs, free_trees
from .exactpoly import IntPoly, Ordering, RootInterval, compare_largest_roots, isolate_largest_root
from .families import FamilySpec, make
from .graph import Graph, GraphError, build_graph, emit_graph6, parse_graph6
from .canon import canonical_code
from .spectral import SpectralResult, char_poly, char_poly_general, char_poly_tree, spectral_radius
from .verify import MinimizerReport, VerificationReport, find_minimizers

__version__ = "0.1.0"

__all__ = [
    "ClassQuery", "DominationCertificate", "FamilySpec", "Graph", "GraphError", "IntPoly",
    "MinimizerReport", "Ordering", "RootInterval", "SpectralResult", "VerificationReport",
    "build_graph", "canonical_code", "char_poly", "char_poly_general", "char_poly_tree",
    "class_members", "compare_largest_roots", "connected_graphs", "domination_number",
    "domination_number_tree", "emit_graph6", "find_minimizers", "free_trees",
    "isolate_largest_root", "make", "parse_graph6", "spectral_radius",
]
