"""Exhaustive reference solver: enumerate every integer assignment.

For each combination of integer-variable values the remaining continuous
problem is a plain LP, so within a budget this computes the exact optimum
with no branching logic involved — an independent check for the search.
Rows whose support is purely integer (mode-exclusivity rows, for example)
are evaluated directly to discard combinations without an LP solve.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..errors import OracleBudgetError
from ..model import MilpProblem
from .branch_bound import MilpResult
from .simplex import SolverOptions, solve_lp

ENUMERATION_BUDGET = 10_000_000


def enumeration_size(problem: MilpProblem) -> int:
    """Number of integer assignments exhaustive enumeration would visit."""
    size = 1
    for j in np.nonzero(problem.integrality > 0)[0]:
        lo, hi = problem.lower_bounds[j], problem.upper_bounds[j]
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise OracleBudgetError(math.inf, ENUMERATION_BUDGET)
        count = math.floor(hi + 1e-9) - math.ceil(lo - 1e-9) + 1
        size *= max(count, 0)
    return size


def enumerate_optimal(
    problem: MilpProblem, options: SolverOptions = SolverOptions()
) -> MilpResult:
    """Solve the problem by brute force over all integer assignments."""
    size = enumeration_size(problem)
    if size > ENUMERATION_BUDGET:
        raise OracleBudgetError(size, ENUMERATION_BUDGET)

    int_cols = [int(j) for j in np.nonzero(problem.integrality > 0)[0]]
    value_ranges = []
    for j in int_cols:
        lo = math.ceil(problem.lower_bounds[j] - 1e-9)
        hi = math.floor(problem.upper_bounds[j] + 1e-9)
        if hi < lo:
            return MilpResult("infeasible", None, None, None, 0, 0, None)
        value_ranges.append(range(lo, hi + 1))

    # Rows touching only integer columns can veto a combination outright.
    int_set = set(int_cols)
    position = {j: k for k, j in enumerate(int_cols)}
    pure_rows = []
    for i in range(problem.n_rows):
        support = np.nonzero(problem.matrix[i])[0]
        if len(support) and all(int(j) in int_set for j in support):
            pure_rows.append((
                [position[int(j)] for j in support],
                [float(problem.matrix[i, j]) for j in support],
                float(problem.rhs[i]),
                bool(problem.row_is_equality[i]),
            ))

    best_x: np.ndarray | None = None
    best_objective = math.inf
    lps = 0
    iterations = 0
    for combo in itertools.product(*value_ranges):
        rejected = False
        for positions, coefficients, rhs, is_eq in pure_rows:
            lhs = sum(a * combo[k] for k, a in zip(positions, coefficients))
            slack_tol = 1e-9 * (1.0 + abs(rhs))
            if is_eq:
                if abs(lhs - rhs) > slack_tol:
                    rejected = True
                    break
            elif lhs > rhs + slack_tol:
                rejected = True
                break
        if rejected:
            continue

        lower = problem.lower_bounds.copy()
        upper = problem.upper_bounds.copy()
        for j, value in zip(int_cols, combo):
            lower[j] = upper[j] = float(value)
        solution = solve_lp(
            problem.objective, problem.matrix, problem.rhs,
            problem.row_is_equality, lower, upper, options,
        )
        lps += 1
        iterations += solution.iterations
        if solution.status == "optimal" and solution.objective < best_objective:
            best_objective = solution.objective
            best_x = solution.x

    if best_x is None:
        return MilpResult("infeasible", None, None, None, lps, iterations, None)
    return MilpResult("optimal", best_x, float(best_objective), float(best_objective),
                      lps, iterations, 0.0)
