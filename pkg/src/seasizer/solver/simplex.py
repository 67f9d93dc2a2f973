"""Two-phase dense simplex over general bounds.

``solve_lp`` accepts a problem in row form (equalities and ``<=`` rows,
per-variable lower/upper bounds, minimization) and reduces it to the
standard equality form the pivot kernel understands:

* columns fixed by ``lower == upper`` are folded out by substitution,
* finite lower bounds are shifted to zero,
* columns with only an upper bound are mirrored,
* free columns are split into positive and negative parts,
* remaining finite upper bounds become explicit ``<=`` rows,
* rows are equilibrated to unit max coefficient and the objective is
  normalized by its largest entry, so tolerances act on O(1) numbers.

Phase 1 minimizes artificial variables on rows without a usable slack;
leftover basic artificials are pivoted out or their rows dropped as
redundant before phase 2 optimizes the true objective.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from ..errors import ConfigError, PivotError, SolverError
from . import _kernels


@dataclasses.dataclass(frozen=True)
class SolverOptions:
    """Tolerances and limits shared by the LP and branch-and-bound layers."""

    feasibility_tol: float = 1e-7
    optimality_tol: float = 1e-9
    integrality_tol: float = 1e-6
    relative_gap: float = 1e-6
    pivot_tol: float = 1e-9
    stall_limit: int = 500
    max_iterations: int | None = None
    node_limit: int | None = None
    time_limit: float | None = None
    seed_incumbent: bool = True
    deterministic: bool = True
    collect_tree: bool = False

    def __post_init__(self) -> None:
        for name in ("feasibility_tol", "optimality_tol", "integrality_tol",
                     "relative_gap", "pivot_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ConfigError(f"{name} must be in (0, 1), got {value!r}")
        if self.stall_limit < 1:
            raise ConfigError("stall_limit must be at least 1")
        for name in ("max_iterations", "node_limit"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be positive when set")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ConfigError("time_limit must be positive when set")
        if not self.deterministic:
            raise ConfigError("only deterministic mode is supported")


@dataclasses.dataclass(frozen=True)
class LpSolution:
    """Outcome of one linear program solve in the original variable space."""

    status: str  # optimal | infeasible | unbounded | iteration_limit
    x: np.ndarray | None
    objective: float | None
    iterations: int


def _apply_pivot(tab: np.ndarray, basis: np.ndarray, r: int, j: int) -> None:
    piv = tab[r, j]
    tab[r, :] /= piv
    factors = tab[:, j].copy()
    factors[r] = 0.0
    tab -= factors[:, None] * tab[r, :][None, :]
    basis[r] = j


def solve_lp(
    objective,
    matrix,
    rhs,
    row_is_equality,
    lower,
    upper,
    options: SolverOptions = SolverOptions(),
) -> LpSolution:
    """Minimize ``objective @ x`` subject to row constraints and bounds."""
    c = np.asarray(objective, dtype=np.float64)
    A = np.asarray(matrix, dtype=np.float64)
    b = np.asarray(rhs, dtype=np.float64)
    eq = np.asarray(row_is_equality, dtype=bool)
    lb = np.asarray(lower, dtype=np.float64)
    ub = np.asarray(upper, dtype=np.float64)
    m, n = A.shape

    if np.any(lb > ub):
        return LpSolution("infeasible", None, None, 0)

    # --- substitution of fixed columns, shift/mirror/split of the rest ---
    offsets = np.zeros(n)
    fixed = np.isfinite(lb) & (lb == ub)
    offsets[fixed] = lb[fixed]
    entries: list[tuple[int, float]] = []  # (original column, sign)
    columns: list[np.ndarray] = []
    c_std: list[float] = []
    upper_rows: list[tuple[int, float]] = []  # (standard column, residual bound)
    for j in range(n):
        if fixed[j]:
            continue
        if math.isfinite(lb[j]):
            offsets[j] = lb[j]
            idx = len(entries)
            entries.append((j, 1.0))
            columns.append(A[:, j])
            c_std.append(float(c[j]))
            residual = ub[j] - lb[j]
            if math.isfinite(residual):
                upper_rows.append((idx, residual))
        elif math.isfinite(ub[j]):
            offsets[j] = ub[j]
            entries.append((j, -1.0))
            columns.append(-A[:, j])
            c_std.append(-float(c[j]))
        else:
            entries.append((j, 1.0))
            columns.append(A[:, j])
            c_std.append(float(c[j]))
            entries.append((j, -1.0))
            columns.append(-A[:, j])
            c_std.append(-float(c[j]))

    b_eff = b - A @ offsets
    n_std = len(entries)

    if n_std == 0:
        # Everything is pinned; the rows decide feasibility on their own.
        reference = 1.0 + (float(np.max(np.abs(b))) if m else 0.0)
        for i in range(m):
            if eq[i]:
                if abs(b_eff[i]) > options.feasibility_tol * reference:
                    return LpSolution("infeasible", None, None, 0)
            elif b_eff[i] < -options.feasibility_tol * reference:
                return LpSolution("infeasible", None, None, 0)
        x = offsets.copy()
        return LpSolution("optimal", x, float(c @ x), 0)

    A_std = np.column_stack(columns) if columns else np.zeros((m, 0))
    if upper_rows:
        extra = np.zeros((len(upper_rows), n_std))
        extra_rhs = np.empty(len(upper_rows))
        for k, (idx, value) in enumerate(upper_rows):
            extra[k, idx] = 1.0
            extra_rhs[k] = value
        A_all = np.vstack([A_std, extra])
        b_all = np.concatenate([b_eff, extra_rhs])
        eq_all = np.concatenate([eq, np.zeros(len(upper_rows), dtype=bool)])
    else:
        A_all = A_std.copy()
        b_all = b_eff.copy()
        eq_all = eq.copy()
    m_all = A_all.shape[0]

    # --- row equilibration ---
    if m_all:
        row_scale = np.max(np.abs(A_all), axis=1)
        row_scale[row_scale == 0.0] = 1.0
        A_all /= row_scale[:, None]
        b_all /= row_scale

    # --- tableau with slacks, sign-fixed rows, and artificials ---
    ineq_rows = np.nonzero(~eq_all)[0]
    n_slack = len(ineq_rows)
    negative = b_all < 0.0
    needs_artificial = eq_all | negative
    art_rows = np.nonzero(needs_artificial)[0]
    n_art = len(art_rows)
    first_art = n_std + n_slack
    n_total = first_art + n_art

    tab = np.zeros((m_all + 1, n_total + 1))
    tab[:m_all, :n_std] = A_all
    slack_of_row = {}
    for k, i in enumerate(ineq_rows):
        tab[i, n_std + k] = 1.0
        slack_of_row[int(i)] = n_std + k
    tab[:m_all, n_total] = b_all
    tab[np.nonzero(negative)[0], :] *= -1.0

    basis = np.empty(m_all, dtype=np.int64)
    for k, i in enumerate(art_rows):
        tab[i, first_art + k] = 1.0
    for i in range(m_all):
        if needs_artificial[i]:
            basis[i] = first_art + int(np.nonzero(art_rows == i)[0][0])
        else:
            basis[i] = slack_of_row[i]

    rhs_reference = (
        float(np.max(np.abs(tab[art_rows, n_total]))) if n_art else 0.0
    )
    max_iter = options.max_iterations or (50 * (m_all + n_total) + 10000)
    total_iterations = 0

    # --- phase 1: drive the artificials to zero ---
    if n_art:
        objrow = np.zeros(n_total + 1)
        objrow[first_art:n_total] = 1.0
        for i in art_rows:
            objrow -= tab[i, :]
        tab[m_all, :] = objrow
        enterable = np.ones(n_total, dtype=bool)
        status, iters, info_r, info_c = _kernels.simplex_iterate(
            tab, basis, enterable,
            options.optimality_tol, options.pivot_tol,
            options.stall_limit, max_iter,
        )
        total_iterations += int(iters)
        if status == _kernels.STATUS_PIVOT_FAILURE:
            raise PivotError(int(info_r), int(info_c))
        if status == _kernels.STATUS_ITERATION_LIMIT:
            return LpSolution("iteration_limit", None, None, total_iterations)
        if status == _kernels.STATUS_UNBOUNDED:
            raise SolverError("artificial objective cannot be unbounded")
        if -tab[m_all, n_total] > options.feasibility_tol * (1.0 + rhs_reference):
            return LpSolution("infeasible", None, None, total_iterations)

        # Pivot leftover artificials out of the basis, or drop their rows
        # as redundant when no structural coefficient remains.
        drop: list[int] = []
        for i in range(m_all):
            if basis[i] < first_art:
                continue
            pivot_col = -1
            for j in range(first_art):
                if abs(tab[i, j]) > options.pivot_tol:
                    pivot_col = j
                    break
            if pivot_col >= 0:
                _apply_pivot(tab, basis, i, pivot_col)
            else:
                drop.append(i)
        keep = [i for i in range(m_all) if i not in set(drop)]
    else:
        keep = list(range(m_all))

    kept_rows = keep + [m_all]
    kept_cols = list(range(first_art)) + [n_total]
    tab2 = np.ascontiguousarray(tab[np.ix_(kept_rows, kept_cols)])
    basis2 = np.ascontiguousarray(basis[keep])
    m2 = len(keep)

    # --- phase 2: the real objective, normalized, priced out over the basis ---
    scale = max(1.0, max((abs(v) for v in c_std), default=0.0))
    tab2[m2, :] = 0.0
    tab2[m2, :n_std] = np.asarray(c_std) / scale
    for i in range(m2):
        coefficient = tab2[m2, basis2[i]]
        if coefficient != 0.0:
            tab2[m2, :] -= coefficient * tab2[i, :]

    enterable2 = np.ones(first_art, dtype=bool)
    status, iters, info_r, info_c = _kernels.simplex_iterate(
        tab2, basis2, enterable2,
        options.optimality_tol, options.pivot_tol,
        options.stall_limit, max_iter,
    )
    total_iterations += int(iters)
    if status == _kernels.STATUS_PIVOT_FAILURE:
        raise PivotError(int(info_r), int(info_c))
    if status == _kernels.STATUS_ITERATION_LIMIT:
        return LpSolution("iteration_limit", None, None, total_iterations)
    if status == _kernels.STATUS_UNBOUNDED:
        return LpSolution("unbounded", None, None, total_iterations)

    y = np.zeros(first_art)
    for i in range(m2):
        y[basis2[i]] = tab2[i, first_art]
    x = offsets.copy()
    for idx, (j, sign) in enumerate(entries):
        x[j] += sign * y[idx]
    np.clip(x, lb, ub, out=x)
    return LpSolution("optimal", x, float(c @ x), total_iterations)
