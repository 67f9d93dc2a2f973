"""Sizing toolkit for offshore hybrid power systems.

Pipeline: ingest raw marine observations, project them through equipment
power models into typical-day generation profiles, assemble a
mixed-integer sizing problem (unit counts plus battery capacity against
hourly load balance and storage dynamics), and solve it exactly with an
in-package simplex and branch-and-bound, cross-checkable by exhaustive
enumeration and an independent constraint audit.
"""

from .errors import (
    AssemblyError,
    ConfigError,
    FormatError,
    IncompleteProfileError,
    IngestWarning,
    OracleBudgetError,
    ParameterError,
    PivotError,
    RowParseError,
    SeasizerError,
    SolverError,
)
from .model import (
    BessParams,
    CostBook,
    MilpProblem,
    SizingScenario,
    SizingSolution,
    SolveDiagnostics,
    SubsystemCost,
    ValidationReport,
    assemble_milp,
    subsystem_lifetime_cost,
    validate_solution,
)
from .scenario import builtin_names, builtin_scenario, load_scenario, scenario_from_doc
from .sizing import enumerate_scenario, solve_scenario
from .solver import SolverOptions, available_backends, get_backend, set_backend

__version__ = "0.1.0"

__all__ = [
    "AssemblyError",
    "BessParams",
    "ConfigError",
    "CostBook",
    "FormatError",
    "IncompleteProfileError",
    "IngestWarning",
    "MilpProblem",
    "OracleBudgetError",
    "ParameterError",
    "PivotError",
    "RowParseError",
    "SeasizerError",
    "SizingScenario",
    "SizingSolution",
    "SolveDiagnostics",
    "SolverError",
    "SolverOptions",
    "SubsystemCost",
    "ValidationReport",
    "assemble_milp",
    "available_backends",
    "builtin_names",
    "builtin_scenario",
    "enumerate_scenario",
    "get_backend",
    "load_scenario",
    "scenario_from_doc",
    "set_backend",
    "solve_scenario",
    "subsystem_lifetime_cost",
    "validate_solution",
    "__version__",
]
