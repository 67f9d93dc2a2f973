"""Branch-and-bound over LP relaxations for mixed-integer problems.

Search order is best-bound first (ties broken toward deeper nodes, then
insertion order), branching splits the most fractional integer column on
its floor and ceiling, and an optional seeding pass builds an early
incumbent by pinning the general integers up from the root relaxation and
then diving on the binaries with rounding.  Everything is deterministic:
identical inputs walk identical trees.
"""

from __future__ import annotations

import dataclasses
import heapq
import math
import time

import numpy as np

from ..errors import SolverError
from ..model import MilpProblem
from ._kernels import get_backend
from .simplex import LpSolution, SolverOptions, solve_lp


@dataclasses.dataclass(frozen=True)
class NodeRecord:
    """One explored node, for search-shape assertions in tests."""

    seq: int
    depth: int
    parent_bound: float
    lp_status: str
    lp_objective: float | None
    n_fractional: int
    outcome: str  # branched | incumbent | pruned | infeasible


@dataclasses.dataclass(frozen=True)
class MilpResult:
    """Outcome of an integer solve (search or exhaustive enumeration)."""

    status: str  # optimal | infeasible | unbounded | limit
    x: np.ndarray | None
    objective: float | None
    best_bound: float | None
    nodes: int
    iterations: int
    gap: float | None
    seeded: bool = False
    tree: tuple[NodeRecord, ...] | None = None


def _fractional_columns(x: np.ndarray, int_cols: np.ndarray, tol: float) -> list[int]:
    return [int(j) for j in int_cols if abs(x[j] - round(x[j])) > tol]


def _most_fractional(x: np.ndarray, candidates: list[int]) -> int:
    return min(candidates, key=lambda j: (abs(x[j] - math.floor(x[j]) - 0.5), j))


def _snap(x: np.ndarray, int_cols: np.ndarray, lb: np.ndarray, ub: np.ndarray) -> np.ndarray:
    y = x.copy()
    y[int_cols] = np.round(y[int_cols])
    np.clip(y, lb, ub, out=y)
    return y


def solve_milp(problem: MilpProblem, options: SolverOptions = SolverOptions()) -> MilpResult:
    """Minimize the problem's objective over its mixed-integer feasible set."""
    c = problem.objective
    lb0 = problem.lower_bounds.copy()
    ub0 = problem.upper_bounds.copy()
    int_cols = np.nonzero(problem.integrality > 0)[0]
    tol = options.integrality_tol
    started = time.monotonic()

    tree: list[NodeRecord] | None = [] if options.collect_tree else None
    total_iterations = 0

    def lp(lower: np.ndarray, upper: np.ndarray) -> LpSolution:
        nonlocal total_iterations
        solution = solve_lp(
            c, problem.matrix, problem.rhs, problem.row_is_equality,
            lower, upper, options,
        )
        total_iterations += solution.iterations
        return solution

    root = lp(lb0, ub0)
    if root.status in ("infeasible", "unbounded"):
        return MilpResult(root.status, None, None, None, 1, total_iterations, None,
                          tree=tuple(tree) if tree is not None else None)
    if root.status == "iteration_limit":
        return MilpResult("limit", None, None, None, 1, total_iterations, None,
                          tree=tuple(tree) if tree is not None else None)

    incumbent: np.ndarray | None = None
    incumbent_obj = math.inf
    seeded = False

    root_fractional = _fractional_columns(root.x, int_cols, tol)
    if not root_fractional:
        y = _snap(root.x, int_cols, lb0, ub0)
        objective = float(c @ y)
        if tree is not None:
            tree.append(NodeRecord(0, 0, -math.inf, "optimal", root.objective, 0, "incumbent"))
        return MilpResult("optimal", y, objective, root.objective, 1,
                          total_iterations, 0.0, tree=tuple(tree) if tree is not None else None)

    # --- seeding: pin general integers up from the relaxation, then round
    # the binaries one at a time, re-solving after each pin ---
    if options.seed_incumbent:
        general = [int(j) for j in int_cols if problem.integrality[j] == 1]
        binaries = [int(j) for j in int_cols if problem.integrality[j] == 2]
        lb_s, ub_s = lb0.copy(), ub0.copy()
        for j in general:
            pinned = math.ceil(root.x[j] - tol)
            pinned = min(max(pinned, int(lb0[j])), int(ub0[j]))
            lb_s[j] = ub_s[j] = float(pinned)
        candidate = lp(lb_s, ub_s)
        budget = 2 * len(binaries) + 5
        while candidate.status == "optimal" and budget > 0:
            fractional = _fractional_columns(candidate.x, np.asarray(binaries, dtype=int), tol) \
                if binaries else []
            if not fractional:
                break
            j = _most_fractional(candidate.x, fractional)
            value = float(round(candidate.x[j]))
            lb_s[j] = ub_s[j] = value
            trial = lp(lb_s, ub_s)
            if trial.status != "optimal":
                lb_s[j] = ub_s[j] = 1.0 - value
                trial = lp(lb_s, ub_s)
                if trial.status != "optimal":
                    candidate = trial
                    break
            candidate = trial
            budget -= 1
        if candidate.status == "optimal" and not _fractional_columns(candidate.x, int_cols, tol):
            incumbent = _snap(candidate.x, int_cols, lb0, ub0)
            incumbent_obj = float(c @ incumbent)
            seeded = True

    def prune_threshold() -> float:
        return incumbent_obj - options.relative_gap * max(1.0, abs(incumbent_obj))

    # Heap entries: (bound, -depth, sequence, lower, upper). The root was
    # already solved, so it is expanded inline below.
    heap: list[tuple[float, int, int, np.ndarray, np.ndarray]] = []
    sequence = 1
    nodes = 1
    limit_hit = False

    def branch(x: np.ndarray, bound: float, depth: int,
               lower: np.ndarray, upper: np.ndarray, fractional: list[int]) -> None:
        nonlocal sequence
        j = _most_fractional(x, fractional)
        down_upper = upper.copy()
        down_upper[j] = math.floor(x[j])
        heapq.heappush(heap, (bound, -(depth + 1), sequence, lower.copy(), down_upper))
        sequence += 1
        up_lower = lower.copy()
        up_lower[j] = math.ceil(x[j])
        heapq.heappush(heap, (bound, -(depth + 1), sequence, up_lower, upper.copy()))
        sequence += 1

    if tree is not None:
        tree.append(NodeRecord(0, 0, -math.inf, "optimal", root.objective,
                               len(root_fractional), "branched"))
    branch(root.x, root.objective, 0, lb0, ub0, root_fractional)

    while heap:
        if incumbent is not None and heap[0][0] >= prune_threshold():
            break  # every open node is dominated by the incumbent
        if options.node_limit is not None and nodes >= options.node_limit:
            limit_hit = True
            break
        if options.time_limit is not None and time.monotonic() - started > options.time_limit:
            limit_hit = True
            break
        bound_key, neg_depth, seq, lower, upper = heapq.heappop(heap)
        depth = -neg_depth
        solution = lp(lower, upper)
        nodes += 1

        if solution.status == "infeasible":
            if tree is not None:
                tree.append(NodeRecord(seq, depth, bound_key, "infeasible", None, 0, "infeasible"))
            continue
        if solution.status == "unbounded":
            raise SolverError("a bounded node relaxation reported unbounded")
        if solution.status == "iteration_limit":
            limit_hit = True
            if tree is not None:
                tree.append(NodeRecord(seq, depth, bound_key, "iteration_limit", None, 0, "pruned"))
            break

        fractional = _fractional_columns(solution.x, int_cols, tol)
        if incumbent is not None and solution.objective >= prune_threshold():
            if tree is not None:
                tree.append(NodeRecord(seq, depth, bound_key, "optimal",
                                       solution.objective, len(fractional), "pruned"))
            continue
        if not fractional:
            y = _snap(solution.x, int_cols, lb0, ub0)
            objective = float(c @ y)
            if objective < incumbent_obj:
                incumbent = y
                incumbent_obj = objective
            if tree is not None:
                tree.append(NodeRecord(seq, depth, bound_key, "optimal",
                                       solution.objective, 0, "incumbent"))
            continue
        if tree is not None:
            tree.append(NodeRecord(seq, depth, bound_key, "optimal",
                                   solution.objective, len(fractional), "branched"))
        branch(solution.x, solution.objective, depth, lower, upper, fractional)

    tree_out = tuple(tree) if tree is not None else None
    if incumbent is None:
        if limit_hit:
            return MilpResult("limit", None, None,
                              heap[0][0] if heap else None,
                              nodes, total_iterations, None, seeded, tree_out)
        return MilpResult("infeasible", None, None, None,
                          nodes, total_iterations, None, seeded, tree_out)

    open_bound = heap[0][0] if heap else incumbent_obj
    best_bound = min(open_bound, incumbent_obj)
    gap = (incumbent_obj - best_bound) / max(1e-12, abs(incumbent_obj))
    status = "limit" if limit_hit else "optimal"
    return MilpResult(status, incumbent, incumbent_obj, best_bound,
                      nodes, total_iterations, gap, seeded, tree_out)
