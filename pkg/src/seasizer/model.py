"""Sizing model: lifetime costs, MILP assembly, solutions, and validation.

The decision problem selects integer unit counts for up to four marine
generation resources plus a continuously sized battery, minimizing total
lifetime cost subject to hourly load balance over a typical day, battery
energy bookkeeping with charge/discharge losses, state-of-charge limits,
a cyclic end-of-day condition, and mutual exclusion of simultaneous
charging and discharging enforced with binary mode flags.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import AssemblyError, ConfigError, ParameterError

RESOURCE_ORDER = ("wec", "tec", "owt", "fpv")

CONTINUOUS = 0
INTEGER = 1
BINARY = 2


# ---------------------------------------------------------------------------
# Costs
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SubsystemCost:
    """Per-unit cost components in dollars (per kWh for storage)."""

    precommissioning: float
    capital: float
    om_per_year: float
    decommissioning: float

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not math.isfinite(value) or value < 0:
                raise ParameterError(
                    f"{field.name} must be a finite non-negative number, got {value!r}"
                )

    def scale(self, factor: float) -> "SubsystemCost":
        """Return a copy with every component multiplied by ``factor``."""
        if not math.isfinite(factor) or factor < 0:
            raise ParameterError(f"scale factor must be non-negative, got {factor!r}")
        return SubsystemCost(
            precommissioning=self.precommissioning * factor,
            capital=self.capital * factor,
            om_per_year=self.om_per_year * factor,
            decommissioning=self.decommissioning * factor,
        )


def subsystem_lifetime_cost(
    quantity: float,
    cost: SubsystemCost,
    lifetime_years: float,
    degradation_rate: float | None = None,
) -> float:
    """Total cost of owning ``quantity`` units over the project lifetime.

    ``degradation_rate`` inflates the capital component by
    ``1 + rate * lifetime_years`` to fund replacement of capacity fade;
    it applies to storage and is omitted for generation resources.
    """
    if quantity < 0:
        raise ParameterError(f"quantity must be non-negative, got {quantity!r}")
    if lifetime_years <= 0:
        raise ParameterError(f"lifetime_years must be positive, got {lifetime_years!r}")
    capital = cost.capital
    if degradation_rate is not None:
        if degradation_rate < 0:
            raise ParameterError(
                f"degradation_rate must be non-negative, got {degradation_rate!r}"
            )
        capital = capital * (1.0 + degradation_rate * lifetime_years)
    per_unit = (
        cost.precommissioning
        + capital
        + cost.om_per_year * lifetime_years
        + cost.decommissioning
    )
    return quantity * per_unit


@dataclasses.dataclass(frozen=True)
class CostBook:
    """Unit costs for every subsystem plus lifetime economics."""

    resources: Mapping[str, SubsystemCost]
    storage_per_kwh: SubsystemCost
    lifetime_years: float = 20.0
    storage_degradation_rate: float = 0.0485

    def __post_init__(self) -> None:
        if self.lifetime_years <= 0:
            raise ParameterError("lifetime_years must be positive")
        if self.storage_degradation_rate < 0:
            raise ParameterError("storage_degradation_rate must be non-negative")
        for name in self.resources:
            if name not in RESOURCE_ORDER:
                raise ParameterError(
                    f"unknown resource {name!r}; expected one of {RESOURCE_ORDER}"
                )
        object.__setattr__(self, "resources", dict(self.resources))

    @classmethod
    def defaults(cls) -> "CostBook":
        """Baseline offshore cost assumptions in dollars."""
        return cls(
            resources={
                "wec": SubsystemCost(126_000.0, 6_300_000.0, 272_000.0, 1_000_000.0),
                "tec": SubsystemCost(126_000.0, 6_598_500.0, 259_047.0, 0.0),
                "owt": SubsystemCost(367_200.0, 16_038_767.0, 259_047.0, 1_123_333.0),
                "fpv": SubsystemCost(132.0, 520.0, 18.0, 35.0),
            },
            storage_per_kwh=SubsystemCost(310.0, 150.0, 10.0, 100.0),
        )

    def unit_cost(self, resource: str) -> float:
        """Lifetime cost of one unit of ``resource``."""
        if resource not in self.resources:
            raise ConfigError(f"no cost entry for resource {resource!r}")
        return subsystem_lifetime_cost(1.0, self.resources[resource], self.lifetime_years)

    def storage_cost_per_kwh(self) -> float:
        """Lifetime cost of one kWh of storage, degradation included."""
        return subsystem_lifetime_cost(
            1.0,
            self.storage_per_kwh,
            self.lifetime_years,
            degradation_rate=self.storage_degradation_rate,
        )


# ---------------------------------------------------------------------------
# Scenario
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class BessParams:
    """Battery behaviour: efficiencies, state-of-charge window, power caps."""

    charge_efficiency: float = 0.80
    discharge_efficiency: float = 0.95
    soc_min: float = 0.1
    soc_max: float = 0.9
    max_charge_kw: float = 0.0
    max_discharge_kw: float = 0.0
    enabled: bool = True
    max_energy_kwh: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.charge_efficiency <= 1.0:
            raise ParameterError("charge_efficiency must be in (0, 1]")
        if not 0.0 < self.discharge_efficiency <= 1.0:
            raise ParameterError("discharge_efficiency must be in (0, 1]")
        if not 0.0 <= self.soc_min < self.soc_max <= 1.0:
            raise ParameterError("state-of-charge window must satisfy 0 <= min < max <= 1")
        if self.enabled:
            if self.max_charge_kw <= 0 or self.max_discharge_kw <= 0:
                raise ParameterError(
                    "max_charge_kw and max_discharge_kw must be positive when storage is enabled"
                )
        if self.max_energy_kwh is not None and self.max_energy_kwh < 0:
            raise ParameterError("max_energy_kwh must be non-negative")

    @classmethod
    def disabled(cls) -> "BessParams":
        return cls(enabled=False)


@dataclasses.dataclass(frozen=True)
class SizingScenario:
    """One complete sizing problem instance.

    ``unit_generation_kw`` maps each candidate resource to its per-unit
    hourly output over the design day; ``load_kw`` is the demand over the
    same hours.
    """

    name: str
    load_kw: tuple[float, ...]
    unit_generation_kw: Mapping[str, tuple[float, ...]]
    max_units: Mapping[str, int]
    cost_book: CostBook
    bess: BessParams

    def __post_init__(self) -> None:
        if not self.name:
            raise ParameterError("scenario name must be non-empty")
        load = tuple(float(v) for v in self.load_kw)
        if len(load) < 1:
            raise ParameterError("load profile must contain at least one hour")
        if any(not math.isfinite(v) or v < 0 for v in load):
            raise ParameterError("load values must be finite and non-negative")
        generation: dict[str, tuple[float, ...]] = {}
        for resource in self.unit_generation_kw:
            if resource not in RESOURCE_ORDER:
                raise ParameterError(
                    f"unknown resource {resource!r}; expected one of {RESOURCE_ORDER}"
                )
        for resource in RESOURCE_ORDER:
            if resource not in self.unit_generation_kw:
                continue
            profile = tuple(float(v) for v in self.unit_generation_kw[resource])
            if len(profile) != len(load):
                raise ParameterError(
                    f"generation profile for {resource!r} has {len(profile)} hours, "
                    f"load has {len(load)}"
                )
            if any(not math.isfinite(v) or v < 0 for v in profile):
                raise ParameterError(f"generation values for {resource!r} must be >= 0")
            generation[resource] = profile
        if not generation:
            raise ParameterError("scenario must include at least one generation resource")
        max_units: dict[str, int] = {}
        for resource in generation:
            if resource not in self.max_units:
                raise ParameterError(f"max_units missing entry for {resource!r}")
            bound = int(self.max_units[resource])
            if bound < 0:
                raise ParameterError(f"max_units[{resource!r}] must be non-negative")
            max_units[resource] = bound
        for resource in self.max_units:
            if resource not in generation:
                raise ParameterError(
                    f"max_units lists {resource!r} which has no generation profile"
                )
        for resource in generation:
            if resource not in self.cost_book.resources:
                raise ParameterError(f"cost book has no entry for {resource!r}")
        object.__setattr__(self, "load_kw", load)
        object.__setattr__(self, "unit_generation_kw", generation)
        object.__setattr__(self, "max_units", max_units)

    @property
    def n_hours(self) -> int:
        return len(self.load_kw)

    @property
    def resources(self) -> tuple[str, ...]:
        return tuple(r for r in RESOURCE_ORDER if r in self.unit_generation_kw)


# ---------------------------------------------------------------------------
# MILP assembly
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class MilpProblem:
    """Dense mixed-integer linear program in row form.

    Rows are either equalities (``row_is_equality``) with ``lhs == rhs`` or
    inequalities with ``lhs <= rhs``.  ``integrality`` codes: 0 continuous,
    1 general integer, 2 binary.
    """

    name: str
    objective: np.ndarray
    matrix: np.ndarray
    rhs: np.ndarray
    row_is_equality: np.ndarray
    lower_bounds: np.ndarray
    upper_bounds: np.ndarray
    integrality: np.ndarray
    column_names: tuple[str, ...]
    row_families: tuple[str, ...]

    def __post_init__(self) -> None:
        m, n = self.matrix.shape
        if self.objective.shape != (n,):
            raise AssemblyError("objective length does not match column count")
        if self.rhs.shape != (m,) or self.row_is_equality.shape != (m,):
            raise AssemblyError("row data length does not match row count")
        if self.lower_bounds.shape != (n,) or self.upper_bounds.shape != (n,):
            raise AssemblyError("bound length does not match column count")
        if self.integrality.shape != (n,):
            raise AssemblyError("integrality length does not match column count")
        if len(self.column_names) != n or len(self.row_families) != m:
            raise AssemblyError("name metadata does not match matrix shape")
        for array in (
            self.objective,
            self.matrix,
            self.rhs,
            self.row_is_equality,
            self.lower_bounds,
            self.upper_bounds,
            self.integrality,
        ):
            array.setflags(write=False)

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_cols(self) -> int:
        return self.matrix.shape[1]

    def family_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for family in self.row_families:
            counts[family] = counts.get(family, 0) + 1
        return counts

    def column_index(self, name: str) -> int:
        try:
            return self.column_names.index(name)
        except ValueError:
            raise KeyError(name) from None


def assemble_milp(scenario: SizingScenario) -> MilpProblem:
    """Build the sizing MILP with a fixed column and row layout.

    Columns: unit counts per resource, then (with storage enabled) battery
    energy capacity, initial stored energy, stored energy per hour, charge
    power per hour, discharge power per hour; then curtailment per hour;
    then (with storage) the charge and discharge mode binaries per hour.

    Rows: hourly balance equalities, then storage bookkeeping equalities,
    the cyclic end-of-day equality, state-of-charge window inequalities,
    mode exclusivity, and discharge/charge power limit inequalities.
    """
    T = scenario.n_hours
    resources = scenario.resources
    storage = scenario.bess.enabled

    names: list[str] = [f"n_{r}" for r in resources]
    if storage:
        names.append("e_bess")
        names.append("e_initial")
        names.extend(f"e[{t}]" for t in range(T))
        names.extend(f"p_char[{t}]" for t in range(T))
        names.extend(f"p_disc[{t}]" for t in range(T))
    names.extend(f"p_curt[{t}]" for t in range(T))
    if storage:
        names.extend(f"u_char[{t}]" for t in range(T))
        names.extend(f"u_disc[{t}]" for t in range(T))
    n = len(names)
    col = {name: j for j, name in enumerate(names)}

    integrality = np.zeros(n, dtype=np.int8)
    lower = np.zeros(n, dtype=np.float64)
    upper = np.full(n, np.inf, dtype=np.float64)
    objective = np.zeros(n, dtype=np.float64)

    book = scenario.cost_book
    for r in resources:
        j = col[f"n_{r}"]
        integrality[j] = INTEGER
        upper[j] = float(scenario.max_units[r])
        objective[j] = book.unit_cost(r)
    if storage:
        objective[col["e_bess"]] = book.storage_cost_per_kwh()
        if scenario.bess.max_energy_kwh is not None:
            upper[col["e_bess"]] = scenario.bess.max_energy_kwh
        for t in range(T):
            upper[col[f"p_char[{t}]"]] = scenario.bess.max_charge_kw
            upper[col[f"p_disc[{t}]"]] = scenario.bess.max_discharge_kw
            for prefix in ("u_char", "u_disc"):
                j = col[f"{prefix}[{t}]"]
                integrality[j] = BINARY
                upper[j] = 1.0

    rows: list[np.ndarray] = []
    rhs: list[float] = []
    is_eq: list[bool] = []
    families: list[str] = []

    def add_row(family: str, coefficients: dict[str, float], bound: float, equality: bool) -> None:
        row = np.zeros(n, dtype=np.float64)
        for name, value in coefficients.items():
            row[col[name]] = value
        rows.append(row)
        rhs.append(bound)
        is_eq.append(equality)
        families.append(family)

    # Hourly balance: generation + discharge - charge - curtailment = load.
    for t in range(T):
        coeffs: dict[str, float] = {
            f"n_{r}": scenario.unit_generation_kw[r][t] for r in resources
        }
        if storage:
            coeffs[f"p_disc[{t}]"] = 1.0
            coeffs[f"p_char[{t}]"] = -1.0
        coeffs[f"p_curt[{t}]"] = -1.0
        add_row("balance", coeffs, scenario.load_kw[t], equality=True)

    if storage:
        eta_c = scenario.bess.charge_efficiency
        eta_d = scenario.bess.discharge_efficiency
        # Stored energy bookkeeping hour over hour.
        for t in range(T):
            previous = "e_initial" if t == 0 else f"e[{t - 1}]"
            add_row(
                "energy",
                {
                    f"e[{t}]": 1.0,
                    previous: -1.0,
                    f"p_char[{t}]": -eta_c,
                    f"p_disc[{t}]": 1.0 / eta_d,
                },
                0.0,
                equality=True,
            )
        # The day must end where it began.
        add_row("cycle", {"e_initial": 1.0, f"e[{T - 1}]": -1.0}, 0.0, equality=True)
        # State-of-charge window for every hour and for the initial state.
        soc_lo = scenario.bess.soc_min
        soc_hi = scenario.bess.soc_max
        for t in range(T):
            add_row("soc", {"e_bess": soc_lo, f"e[{t}]": -1.0}, 0.0, equality=False)
            add_row("soc", {f"e[{t}]": 1.0, "e_bess": -soc_hi}, 0.0, equality=False)
        add_row("soc", {"e_bess": soc_lo, "e_initial": -1.0}, 0.0, equality=False)
        add_row("soc", {"e_initial": 1.0, "e_bess": -soc_hi}, 0.0, equality=False)
        # A battery cannot charge and discharge in the same hour.
        for t in range(T):
            add_row(
                "exclusivity",
                {f"u_char[{t}]": 1.0, f"u_disc[{t}]": 1.0},
                1.0,
                equality=False,
            )
        # Power only flows when the matching mode flag is set.
        for t in range(T):
            add_row(
                "power_limit",
                {f"p_disc[{t}]": 1.0, f"u_disc[{t}]": -scenario.bess.max_discharge_kw},
                0.0,
                equality=False,
            )
        for t in range(T):
            add_row(
                "power_limit",
                {f"p_char[{t}]": 1.0, f"u_char[{t}]": -scenario.bess.max_charge_kw},
                0.0,
                equality=False,
            )

    return MilpProblem(
        name=scenario.name,
        objective=objective,
        matrix=np.vstack(rows) if rows else np.zeros((0, n)),
        rhs=np.asarray(rhs, dtype=np.float64),
        row_is_equality=np.asarray(is_eq, dtype=bool),
        lower_bounds=lower,
        upper_bounds=upper,
        integrality=integrality,
        column_names=tuple(names),
        row_families=tuple(families),
    )


# ---------------------------------------------------------------------------
# Solutions
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SolveDiagnostics:
    """How the search went: node and iteration counts, bound, gap, backend."""

    nodes_explored: int = 0
    simplex_iterations: int = 0
    best_bound: float | None = None
    relative_gap: float | None = None
    backend: str = "numpy"
    seeded_incumbent: bool = False

    def as_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "SolveDiagnostics":
        return cls(
            nodes_explored=int(doc.get("nodes_explored", 0)),
            simplex_iterations=int(doc.get("simplex_iterations", 0)),
            best_bound=None if doc.get("best_bound") is None else float(doc["best_bound"]),
            relative_gap=None if doc.get("relative_gap") is None else float(doc["relative_gap"]),
            backend=str(doc.get("backend", "numpy")),
            seeded_incumbent=bool(doc.get("seeded_incumbent", False)),
        )


@dataclasses.dataclass(frozen=True)
class SizingSolution:
    """A sizing decision with its dispatch schedule and objective value."""

    scenario_name: str
    status: str
    objective: float | None
    counts: Mapping[str, int]
    storage_energy_kwh: float
    initial_energy_kwh: float
    stored_energy_kwh: tuple[float, ...]
    charge_power_kw: tuple[float, ...]
    discharge_power_kw: tuple[float, ...]
    curtailment_kw: tuple[float, ...]
    charge_mode: tuple[int, ...]
    discharge_mode: tuple[int, ...]
    diagnostics: SolveDiagnostics = SolveDiagnostics()

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", dict(self.counts))

    @property
    def n_hours(self) -> int:
        return len(self.curtailment_kw)

    def cost_breakdown(self, cost_book: CostBook) -> dict[str, float]:
        """Per-subsystem lifetime cost; values sum to the stated objective."""
        breakdown = {
            resource: count * cost_book.unit_cost(resource)
            for resource, count in self.counts.items()
        }
        breakdown["bess"] = self.storage_energy_kwh * cost_book.storage_cost_per_kwh()
        return breakdown

    def as_dict(self) -> dict[str, Any]:
        return {
            "scenario_name": self.scenario_name,
            "status": self.status,
            "objective": self.objective,
            "counts": dict(self.counts),
            "storage_energy_kwh": self.storage_energy_kwh,
            "initial_energy_kwh": self.initial_energy_kwh,
            "stored_energy_kwh": list(self.stored_energy_kwh),
            "charge_power_kw": list(self.charge_power_kw),
            "discharge_power_kw": list(self.discharge_power_kw),
            "curtailment_kw": list(self.curtailment_kw),
            "charge_mode": list(self.charge_mode),
            "discharge_mode": list(self.discharge_mode),
            "diagnostics": self.diagnostics.as_dict(),
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "SizingSolution":
        try:
            return cls(
                scenario_name=str(doc["scenario_name"]),
                status=str(doc["status"]),
                objective=None if doc["objective"] is None else float(doc["objective"]),
                counts={str(k): int(v) for k, v in doc["counts"].items()},
                storage_energy_kwh=float(doc["storage_energy_kwh"]),
                initial_energy_kwh=float(doc["initial_energy_kwh"]),
                stored_energy_kwh=tuple(float(v) for v in doc["stored_energy_kwh"]),
                charge_power_kw=tuple(float(v) for v in doc["charge_power_kw"]),
                discharge_power_kw=tuple(float(v) for v in doc["discharge_power_kw"]),
                curtailment_kw=tuple(float(v) for v in doc["curtailment_kw"]),
                charge_mode=tuple(int(v) for v in doc["charge_mode"]),
                discharge_mode=tuple(int(v) for v in doc["discharge_mode"]),
                diagnostics=SolveDiagnostics.from_dict(doc.get("diagnostics", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed solution document: {exc}") from exc


def solution_from_assignment(
    scenario: SizingScenario,
    problem: MilpProblem,
    assignment: Sequence[float],
    status: str,
    diagnostics: SolveDiagnostics = SolveDiagnostics(),
) -> SizingSolution:
    """Package a raw variable vector as a solution.

    Integer variables are snapped to the nearest integer and the objective
    is recomputed from the snapped sizing decision through the cost book,
    so the stated objective always equals the sum of its cost breakdown.
    """
    x = np.asarray(assignment, dtype=np.float64)
    if x.shape != (problem.n_cols,):
        raise AssemblyError(
            f"assignment has {x.shape} entries, problem has {problem.n_cols} columns"
        )
    T = scenario.n_hours
    storage = scenario.bess.enabled

    counts = {
        r: int(round(x[problem.column_index(f"n_{r}")])) for r in scenario.resources
    }

    def pull(prefix: str) -> tuple[float, ...]:
        if not storage and prefix != "p_curt":
            return (0.0,) * T
        return tuple(float(x[problem.column_index(f"{prefix}[{t}]")]) for t in range(T))

    e_bess = float(x[problem.column_index("e_bess")]) if storage else 0.0
    e_initial = float(x[problem.column_index("e_initial")]) if storage else 0.0

    book = scenario.cost_book
    objective = sum(counts[r] * book.unit_cost(r) for r in scenario.resources)
    objective += e_bess * book.storage_cost_per_kwh()

    def modes(prefix: str) -> tuple[int, ...]:
        if not storage:
            return (0,) * T
        return tuple(
            int(round(x[problem.column_index(f"{prefix}[{t}]")])) for t in range(T)
        )

    return SizingSolution(
        scenario_name=scenario.name,
        status=status,
        objective=float(objective),
        counts=counts,
        storage_energy_kwh=e_bess,
        initial_energy_kwh=e_initial,
        stored_energy_kwh=pull("e"),
        charge_power_kw=pull("p_char"),
        discharge_power_kw=pull("p_disc"),
        curtailment_kw=pull("p_curt"),
        charge_mode=modes("u_char"),
        discharge_mode=modes("u_disc"),
        diagnostics=diagnostics,
    )


def infeasible_solution(
    scenario: SizingScenario,
    status: str,
    diagnostics: SolveDiagnostics = SolveDiagnostics(),
) -> SizingSolution:
    """An empty solution shell for infeasible/unbounded/limit outcomes."""
    T = scenario.n_hours
    return SizingSolution(
        scenario_name=scenario.name,
        status=status,
        objective=None,
        counts={r: 0 for r in scenario.resources},
        storage_energy_kwh=0.0,
        initial_energy_kwh=0.0,
        stored_energy_kwh=(0.0,) * T,
        charge_power_kw=(0.0,) * T,
        discharge_power_kw=(0.0,) * T,
        curtailment_kw=(0.0,) * T,
        charge_mode=(0,) * T,
        discharge_mode=(0,) * T,
        diagnostics=diagnostics,
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class FamilyCheck:
    """Worst relative violation within one constraint family."""

    max_violation: float
    worst_index: int | None

    def as_dict(self) -> dict[str, Any]:
        return {"max_violation": self.max_violation, "worst_index": self.worst_index}


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    """Independent audit of a solution against its scenario."""

    families: Mapping[str, FamilyCheck]
    objective_stated: float | None
    objective_recomputed: float | None
    objective_discrepancy: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "families", dict(self.families))

    def constraints_ok(self, tolerance: float = 1e-6) -> bool:
        return all(check.max_violation <= tolerance for check in self.families.values())

    def objective_ok(self, tolerance: float = 1e-9) -> bool:
        return self.objective_discrepancy <= tolerance

    def passes(self, constraint_tol: float = 1e-6, objective_tol: float = 1e-9) -> bool:
        return self.constraints_ok(constraint_tol) and self.objective_ok(objective_tol)

    def worst_family(self) -> tuple[str, FamilyCheck]:
        name = max(self.families, key=lambda k: self.families[k].max_violation)
        return name, self.families[name]

    def summary_lines(self, constraint_tol: float = 1e-6, objective_tol: float = 1e-9) -> list[str]:
        lines = []
        for name, check in self.families.items():
            verdict = "ok" if check.max_violation <= constraint_tol else "VIOLATED"
            where = "" if check.worst_index is None else f" (worst at hour {check.worst_index})"
            lines.append(f"{name:<14} max rel violation {check.max_violation:.3e}{where} {verdict}")
        verdict = "ok" if self.objective_discrepancy <= objective_tol else "MISMATCH"
        lines.append(
            f"{'objective':<14} rel discrepancy   {self.objective_discrepancy:.3e} {verdict}"
        )
        return lines

    def as_dict(self) -> dict[str, Any]:
        return {
            "families": {name: check.as_dict() for name, check in self.families.items()},
            "objective_stated": self.objective_stated,
            "objective_recomputed": self.objective_recomputed,
            "objective_discrepancy": self.objective_discrepancy,
        }


def _relative_gap_between(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _one_sided(lhs: float, rhs: float) -> float:
    return max(0.0, lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def validate_solution(scenario: SizingScenario, solution: SizingSolution) -> ValidationReport:
    """Recheck every constraint family and the objective from first principles.

    This path shares no code with the MILP assembly: it walks the scenario
    hour by hour with plain arithmetic, so an assembly bug and a validation
    bug would have to agree to let a bad solution through.
    """
    T = scenario.n_hours
    if solution.n_hours != T:
        raise ParameterError(
            f"solution covers {solution.n_hours} hours, scenario has {T}"
        )
    bess = scenario.bess
    counts = solution.counts
    for resource in counts:
        if resource not in scenario.unit_generation_kw:
            raise ParameterError(f"solution counts unknown resource {resource!r}")

    def family(values: list[float]) -> FamilyCheck:
        if not values:
            return FamilyCheck(0.0, None)
        worst = max(range(len(values)), key=values.__getitem__)
        return FamilyCheck(values[worst], worst if values[worst] > 0.0 else None)

    balance = []
    for t in range(T):
        supplied = sum(
            counts.get(r, 0) * scenario.unit_generation_kw[r][t] for r in scenario.resources
        )
        supplied += solution.discharge_power_kw[t] - solution.charge_power_kw[t]
        supplied -= solution.curtailment_kw[t]
        balance.append(_relative_gap_between(supplied, scenario.load_kw[t]))

    energy = []
    for t in range(T):
        previous = solution.initial_energy_kwh if t == 0 else solution.stored_energy_kwh[t - 1]
        expected = (
            previous
            + bess.charge_efficiency * solution.charge_power_kw[t]
            - solution.discharge_power_kw[t] / bess.discharge_efficiency
        )
        energy.append(_relative_gap_between(solution.stored_energy_kwh[t], expected))

    cycle = [
        _relative_gap_between(solution.initial_energy_kwh, solution.stored_energy_kwh[T - 1])
    ]

    soc = []
    states = list(solution.stored_energy_kwh) + [solution.initial_energy_kwh]
    for state in states:
        low = _one_sided(bess.soc_min * solution.storage_energy_kwh, state)
        high = _one_sided(state, bess.soc_max * solution.storage_energy_kwh)
        soc.append(max(low, high))

    exclusivity = [
        _one_sided(solution.charge_mode[t] + solution.discharge_mode[t], 1.0) for t in range(T)
    ]

    power_limit = []
    for t in range(T):
        disc = _one_sided(
            solution.discharge_power_kw[t],
            bess.max_discharge_kw * solution.discharge_mode[t],
        )
        char = _one_sided(
            solution.charge_power_kw[t],
            bess.max_charge_kw * solution.charge_mode[t],
        )
        power_limit.append(max(disc, char))

    integrality = [abs(c - round(c)) for c in counts.values()]
    integrality.extend(abs(u - round(u)) for u in solution.charge_mode)
    integrality.extend(abs(u - round(u)) for u in solution.discharge_mode)

    nonneg_values = [float(v) for v in counts.values()]
    nonneg_values.append(solution.storage_energy_kwh)
    nonneg_values.append(solution.initial_energy_kwh)
    for series in (
        solution.stored_energy_kwh,
        solution.charge_power_kw,
        solution.discharge_power_kw,
        solution.curtailment_kw,
    ):
        nonneg_values.extend(series)
    nonnegativity = [max(0.0, -v) / max(1.0, abs(v)) for v in nonneg_values]

    book = scenario.cost_book
    recomputed = sum(counts.get(r, 0) * book.unit_cost(r) for r in scenario.resources)
    recomputed += solution.storage_energy_kwh * book.storage_cost_per_kwh()
    if solution.objective is None:
        discrepancy = math.inf
    else:
        discrepancy = _relative_gap_between(recomputed, solution.objective)

    return ValidationReport(
        families={
            "balance": family(balance),
            "energy": family(energy),
            "cycle": family(cycle),
            "soc": family(soc),
            "exclusivity": family(exclusivity),
            "power_limit": family(power_limit),
            "integrality": family(integrality),
            "nonnegativity": family(nonnegativity),
        },
        objective_stated=solution.objective,
        objective_recomputed=float(recomputed),
        objective_discrepancy=discrepancy,
    )
