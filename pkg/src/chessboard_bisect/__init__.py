"""Chessboard bisections of point measures by parallel hyperplanes.

Two halves: an exact F2 side that decides which (d, k, m) carry a
topological guarantee, and a numerical side that searches for and
validates the bisecting configurations.
"""

from .certifier import Certificate, IndexProblem, certify, parity_table
from .grasscoh import build_presentation
from .grasssearch import ProjectionAssignment, assign_search
from .measures import WeightedCloud, load_instance, save_instance
from .solver import SolveConfig, solve, validate
from .testmap import BisectionResult, TestPoint, decode_zero, eval_test_map

__version__ = "0.1.0"

__all__ = [
    "BisectionResult", "Certificate", "IndexProblem", "ProjectionAssignment", "SolveConfig",
    "TestPoint", "WeightedCloud", "assign_search", "build_presentation", "certify",
    "decode_zero", "eval_test_map", "load_instance", "parity_table", "save_instance",
    "solve", "validate",
]
