"""High-level entry points: size a system for a scenario, or audit one."""

from __future__ import annotations

from .model import (
    MilpProblem,
    SizingScenario,
    SizingSolution,
    SolveDiagnostics,
    assemble_milp,
    infeasible_solution,
    solution_from_assignment,
)
from .solver import SolverOptions, enumerate_optimal, get_backend, solve_milp
from .solver.branch_bound import MilpResult


def _package(
    scenario: SizingScenario, problem: MilpProblem, result: MilpResult
) -> SizingSolution:
    diagnostics = SolveDiagnostics(
        nodes_explored=result.nodes,
        simplex_iterations=result.iterations,
        best_bound=result.best_bound,
        relative_gap=result.gap,
        backend=get_backend(),
        seeded_incumbent=result.seeded,
    )
    if result.status in ("optimal", "limit") and result.x is not None:
        return solution_from_assignment(
            scenario, problem, result.x, status=result.status, diagnostics=diagnostics
        )
    return infeasible_solution(scenario, status=result.status, diagnostics=diagnostics)


def solve_scenario(
    scenario: SizingScenario, options: SolverOptions = SolverOptions()
) -> SizingSolution:
    """Assemble the sizing problem and solve it with branch-and-bound."""
    problem = assemble_milp(scenario)
    return _package(scenario, problem, solve_milp(problem, options))


def enumerate_scenario(
    scenario: SizingScenario, options: SolverOptions = SolverOptions()
) -> SizingSolution:
    """Solve the sizing problem by exhaustive enumeration (within budget)."""
    problem = assemble_milp(scenario)
    return _package(scenario, problem, enumerate_optimal(problem, options))
