"""Sparse LP representation, embedded simplex, oracle and MPS I/O."""

from .check import ResidualReport, check_solution
from .mps import export_mps, parse_mps
from .oracle import OracleResult, vertex_enumeration_oracle
from .simplex import SimplexOptions, Solution, solve_simplex
from .sparse import SparseLP, canonicalize, lp_equal

__all__ = [
    "ResidualReport", "check_solution", "export_mps", "parse_mps", "OracleResult",
    "vertex_enumeration_oracle", "SimplexOptions", "Solution", "solve_simplex",
    "SparseLP", "canonicalize", "lp_equal",
]
