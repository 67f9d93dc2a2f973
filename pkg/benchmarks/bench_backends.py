#!/usr/bin/env python3
"""Compare the compiled and pure-numpy pivot kernels on identical work.

Three workloads, each solved on every available backend:

* ``root-lp``  — the continuous relaxation of the built-in sizing scenario
  (150 columns, 171 rows), the single biggest LP the search solves.
* ``lp-batch`` — a batch of small random box-constrained LPs, the shape of
  work the branch-and-bound tree generates at its nodes.
* ``full-milp`` — the complete sizing solve, search and all.

Backends are warmed before timing so compilation cost is excluded; the
best of ``--repeats`` wall times is reported per cell.  Run from a
checkout with the package installed::

    python benchmarks/bench_backends.py
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from seasizer.model import assemble_milp
from seasizer.scenario import builtin_scenario
from seasizer.solver import (
    SolverOptions,
    available_backends,
    set_backend,
    solve_lp,
    solve_milp,
)


def _random_lp(rng: np.random.Generator, n_rows: int, n_cols: int):
    """A bounded random LP: minimize c.x over A x <=/== b, l <= x <= u."""
    matrix = rng.normal(size=(n_rows, n_cols))
    x_interior = rng.uniform(0.5, 1.5, size=n_cols)
    rhs = matrix @ x_interior + rng.uniform(0.1, 2.0, size=n_rows)
    is_eq = np.zeros(n_rows, dtype=bool)
    objective = rng.normal(size=n_cols)
    lower = np.zeros(n_cols)
    upper = np.full(n_cols, 10.0)
    return objective, matrix, rhs, is_eq, lower, upper


def time_best(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions per cell (best is kept)")
    parser.add_argument("--batch", type=int, default=200,
                        help="number of random LPs in the batch workload")
    parser.add_argument("--seed", type=int, default=20_240_817)
    args = parser.parse_args()

    problem = assemble_milp(builtin_scenario("baseline_offshore"))
    options = SolverOptions()
    rng = np.random.default_rng(args.seed)
    batch = [_random_lp(rng, n_rows=12, n_cols=18) for _ in range(args.batch)]

    def run_root_lp():
        return solve_lp(
            problem.objective, problem.matrix, problem.rhs,
            problem.row_is_equality, problem.lower_bounds,
            problem.upper_bounds, options,
        )

    def run_batch():
        return [solve_lp(*lp, options) for lp in batch]

    def run_milp():
        return solve_milp(problem, options)

    workloads = (
        ("root-lp", run_root_lp),
        (f"lp-batch x{args.batch}", run_batch),
        ("full-milp", run_milp),
    )

    backends = available_backends()
    if "numba" not in backends:
        print("note: numba is not importable here; timing the numpy kernel only")

    results: dict[tuple[str, str], float] = {}
    anchors: dict[str, object] = {}
    for backend in backends:
        set_backend(backend)
        run_root_lp()  # warm: triggers compilation on the numba path
        for label, fn in workloads:
            results[(label, backend)] = time_best(fn, args.repeats)
        anchors[backend] = (run_root_lp().objective, run_milp().objective)
    set_backend("auto")

    if len(backends) == 2 and anchors["numpy"] != anchors["numba"]:
        print("WARNING: backends disagree on objectives:", anchors)

    width = max(len(label) for label, _ in workloads)
    header = f"{'workload':<{width}}" + "".join(f"  {b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, _ in workloads:
        row = f"{label:<{width}}"
        for backend in backends:
            row += f"  {results[(label, backend)] * 1000.0:>10.2f}ms"
        if len(backends) == 2:
            ratio = results[(label, "numpy")] / results[(label, "numba")]
            row += f"  {ratio:>8.2f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
