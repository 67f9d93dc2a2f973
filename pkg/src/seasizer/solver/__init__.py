"""Deterministic MILP machinery: simplex, branch-and-bound, enumeration."""

from ._kernels import available_backends, get_backend, set_backend, simplex_iterate
from .branch_bound import MilpResult, NodeRecord, solve_milp
from .oracle import ENUMERATION_BUDGET, enumerate_optimal, enumeration_size
from .simplex import LpSolution, SolverOptions, solve_lp

__all__ = [
    "ENUMERATION_BUDGET",
    "LpSolution",
    "MilpResult",
    "NodeRecord",
    "SolverOptions",
    "available_backends",
    "enumerate_optimal",
    "enumeration_size",
    "get_backend",
    "set_backend",
    "simplex_iterate",
    "solve_lp",
    "solve_milp",
]
