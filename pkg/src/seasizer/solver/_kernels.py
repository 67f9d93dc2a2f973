"""Simplex pivot kernels: a compiled loop version and a vectorized twin.

Both kernels operate in place on the same tableau layout and must make
bit-identical pivot decisions: same entering column, same leaving row,
same arithmetic per element.  The compiled version is plain loops so it
stays inside the numba nopython subset; the numpy version expresses the
same scans as array reductions whose tie-breaking (first minimum) matches
the loop order.

Tableau layout for ``m`` constraint rows and ``n`` columns: shape
``(m + 1, n + 1)``.  Row ``m`` holds the reduced-cost row with the
negated objective value in its last cell; column ``n`` holds the
right-hand sides.  ``basis`` maps each constraint row to its basic
column.  ``enterable`` marks columns the pricing step may select.

Backend selection: the ``SEASIZER_NUMBA`` environment variable ("1"/"on"
to require the compiled kernel, "0"/"off" to force pure numpy, unset or
"auto" to use the compiled kernel when numba is importable), overridable
at runtime with :func:`set_backend`.
"""

from __future__ import annotations

import importlib.util
import os
from typing import Callable

import numpy as np

from ..errors import ConfigError

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_ITERATION_LIMIT = 2
STATUS_PIVOT_FAILURE = 3

_RATIO_TIE_REL = 1e-9
_STALL_IMPROVE_REL = 1e-12
_BIG_KEY = 2**63 - 1

_ENV_FLAG = "SEASIZER_NUMBA"

_backend: str | None = None
_compiled: Callable | None = None


def _iterate_loops(tab, basis, enterable, opt_tol, pivot_tol, stall_limit, max_iter):
    m = tab.shape[0] - 1
    n = tab.shape[1] - 1
    iters = 0
    stalled = 0
    bland = False
    last_obj = -tab[m, n]
    while iters < max_iter:
        # Pricing: most negative reduced cost, or first negative under
        # Bland's rule once progress has stalled.
        j = -1
        if bland:
            for k in range(n):
                if enterable[k] and tab[m, k] < -opt_tol:
                    j = k
                    break
        else:
            best = np.inf
            for k in range(n):
                if enterable[k]:
                    value = tab[m, k]
                    if value < best:
                        best = value
                        j = k
            if j >= 0 and not (best < -opt_tol):
                j = -1
        if j < 0:
            return STATUS_OPTIMAL, iters, -1, -1

        # Two-pass ratio test: find the tightest ratio, then break ties
        # toward the smallest basis index within a relative window.
        best_ratio = np.inf
        for i in range(m):
            if tab[i, j] > pivot_tol:
                ratio = tab[i, n] / tab[i, j]
                if ratio < 0.0:
                    ratio = 0.0
                if ratio < best_ratio:
                    best_ratio = ratio
        if best_ratio == np.inf:
            return STATUS_UNBOUNDED, iters, -1, j
        tie = best_ratio + _RATIO_TIE_REL * (1.0 + abs(best_ratio))
        r = -1
        best_key = _BIG_KEY
        for i in range(m):
            if tab[i, j] > pivot_tol:
                ratio = tab[i, n] / tab[i, j]
                if ratio < 0.0:
                    ratio = 0.0
                if ratio <= tie and basis[i] < best_key:
                    best_key = basis[i]
                    r = i
        if r < 0:
            return STATUS_PIVOT_FAILURE, iters, -1, j

        piv = tab[r, j]
        if not (abs(piv) > pivot_tol):
            return STATUS_PIVOT_FAILURE, iters, r, j
        for k in range(n + 1):
            tab[r, k] = tab[r, k] / piv
        for i in range(m + 1):
            if i == r:
                continue
            factor = tab[i, j]
            if factor != 0.0:
                for k in range(n + 1):
                    prod = factor * tab[r, k]
                    tab[i, k] = tab[i, k] - prod
        basis[r] = j
        iters += 1

        obj = -tab[m, n]
        if last_obj - obj < _STALL_IMPROVE_REL * (1.0 + abs(last_obj)):
            stalled += 1
            if stalled >= stall_limit:
                bland = True
        else:
            stalled = 0
        last_obj = obj
    return STATUS_ITERATION_LIMIT, iters, -1, -1


def _iterate_numpy(tab, basis, enterable, opt_tol, pivot_tol, stall_limit, max_iter):
    m = tab.shape[0] - 1
    n = tab.shape[1] - 1
    iters = 0
    stalled = 0
    bland = False
    last_obj = -tab[m, n]
    while iters < max_iter:
        reduced = tab[m, :n]
        if bland:
            eligible = np.nonzero(enterable & (reduced < -opt_tol))[0]
            if eligible.size == 0:
                return STATUS_OPTIMAL, iters, -1, -1
            j = int(eligible[0])
        else:
            masked = np.where(enterable, reduced, np.inf)
            j = int(np.argmin(masked))
            if not (masked[j] < -opt_tol):
                return STATUS_OPTIMAL, iters, -1, -1

        column = tab[:m, j]
        positive = column > pivot_tol
        if not positive.any():
            return STATUS_UNBOUNDED, iters, -1, j
        ratios = np.full(m, np.inf)
        ratios[positive] = tab[:m, n][positive] / column[positive]
        np.maximum(ratios, 0.0, out=ratios)
        best_ratio = float(ratios.min())
        tie = best_ratio + _RATIO_TIE_REL * (1.0 + abs(best_ratio))
        keys = np.where(positive & (ratios <= tie), basis, _BIG_KEY)
        r = int(np.argmin(keys))
        if keys[r] == _BIG_KEY:
            return STATUS_PIVOT_FAILURE, iters, -1, j

        piv = tab[r, j]
        if not (abs(piv) > pivot_tol):
            return STATUS_PIVOT_FAILURE, iters, r, j
        tab[r, :] /= piv
        factors = tab[:, j].copy()
        factors[r] = 0.0
        tab -= factors[:, None] * tab[r, :][None, :]
        basis[r] = j
        iters += 1

        obj = -tab[m, n]
        if last_obj - obj < _STALL_IMPROVE_REL * (1.0 + abs(last_obj)):
            stalled += 1
            if stalled >= stall_limit:
                bland = True
        else:
            stalled = 0
        last_obj = obj
    return STATUS_ITERATION_LIMIT, iters, -1, -1


def _numba_available() -> bool:
    return importlib.util.find_spec("numba") is not None


def _load_compiled() -> Callable:
    global _compiled
    if _compiled is None:
        from numba import njit

        _compiled = njit(cache=True)(_iterate_loops)
    return _compiled


def _normalize(value: str) -> str:
    norm = value.strip().lower()
    if norm in ("", "auto"):
        return "auto"
    if norm in ("0", "off", "false", "no", "numpy"):
        return "numpy"
    if norm in ("1", "on", "true", "yes", "numba"):
        return "numba"
    raise ConfigError(
        f"unrecognized backend selector {value!r}; "
        "use 'auto', 'numpy'/'0'/'off', or 'numba'/'1'/'on'"
    )


def available_backends() -> tuple[str, ...]:
    if _numba_available():
        return ("numpy", "numba")
    return ("numpy",)


def set_backend(name: str) -> str:
    """Pick the pivot kernel: 'numpy', 'numba', or 'auto'. Returns the choice."""
    global _backend
    norm = _normalize(name)
    if norm == "auto":
        _backend = "numba" if _numba_available() else "numpy"
    elif norm == "numba":
        if not _numba_available():
            raise ConfigError("numba backend requested but numba is not installed")
        _backend = "numba"
    else:
        _backend = "numpy"
    return _backend


def get_backend() -> str:
    """The active kernel backend, resolving the environment flag on first use."""
    global _backend
    if _backend is None:
        set_backend(os.environ.get(_ENV_FLAG, "auto"))
    return _backend


def simplex_iterate(tab, basis, enterable, opt_tol, pivot_tol, stall_limit, max_iter):
    """Run pivots in place until optimal/unbounded/limit; see module docs.

    Returns ``(status, iterations, info_row, info_col)``.
    """
    if get_backend() == "numba":
        fn = _load_compiled()
    else:
        fn = _iterate_numpy
    return fn(tab, basis, enterable, opt_tol, pivot_tol, stall_limit, max_iter)
