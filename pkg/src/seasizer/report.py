"""Render sizing results as text, JSON, and per-hour dispatch CSV.

All renderers are pure functions of the scenario and solution: no
timestamps, hostnames, or timings appear, so re-running a solve writes
byte-identical documents.
"""

from __future__ import annotations

import dataclasses
import io
import json
from typing import Any, Mapping

from .model import SizingScenario, SizingSolution, ValidationReport, validate_solution

SOLUTION_FORMAT = "seasizer-solution/1"


@dataclasses.dataclass(frozen=True)
class Report:
    """Everything the renderers need, precomputed once."""

    scenario: SizingScenario
    solution: SizingSolution
    validation: ValidationReport | None
    breakdown: Mapping[str, float]
    deficient_hours: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "breakdown", dict(self.breakdown))


def _deficient_hours(scenario: SizingScenario) -> tuple[int, ...]:
    """Hours whose load exceeds the largest supply any build could offer."""
    reserve = scenario.bess.max_discharge_kw if scenario.bess.enabled else 0.0
    hours = []
    for t in range(scenario.n_hours):
        ceiling = sum(
            scenario.max_units[r] * scenario.unit_generation_kw[r][t]
            for r in scenario.resources
        ) + reserve
        if scenario.load_kw[t] > ceiling + 1e-9:
            hours.append(t)
    return tuple(hours)


def build_report(scenario: SizingScenario, solution: SizingSolution) -> Report:
    solved = solution.status in ("optimal", "limit") and solution.objective is not None
    validation = validate_solution(scenario, solution) if solved else None
    breakdown = solution.cost_breakdown(scenario.cost_book) if solved else {}
    deficient = _deficient_hours(scenario) if not solved else ()
    return Report(
        scenario=scenario,
        solution=solution,
        validation=validation,
        breakdown=breakdown,
        deficient_hours=deficient,
    )


def _dispatch_rows(report: Report) -> list[dict[str, float]]:
    scenario = report.scenario
    solution = report.solution
    rows = []
    for t in range(scenario.n_hours):
        row: dict[str, float] = {"hour": t, "load_kw": scenario.load_kw[t]}
        for resource in scenario.resources:
            row[f"{resource}_kw"] = (
                solution.counts.get(resource, 0) * scenario.unit_generation_kw[resource][t]
            )
        row["charge_kw"] = solution.charge_power_kw[t]
        row["discharge_kw"] = solution.discharge_power_kw[t]
        row["curtailment_kw"] = solution.curtailment_kw[t]
        row["stored_kwh"] = solution.stored_energy_kwh[t]
        rows.append(row)
    return rows


def render_text(report: Report) -> str:
    scenario = report.scenario
    solution = report.solution
    out = io.StringIO()
    out.write(f"scenario: {scenario.name}\n")
    out.write(f"status:   {solution.status}\n")
    diag = solution.diagnostics
    out.write(
        f"search:   {diag.nodes_explored} nodes, {diag.simplex_iterations} pivots, "
        f"backend {diag.backend}"
        + (", seeded incumbent" if diag.seeded_incumbent else "")
        + "\n"
    )
    if diag.relative_gap is not None:
        out.write(f"gap:      {diag.relative_gap:.3e}\n")

    if solution.objective is None:
        if report.deficient_hours:
            hours = ", ".join(str(t) for t in report.deficient_hours)
            out.write(
                "\nno feasible build exists: even at maximum unit counts the load\n"
                f"exceeds available supply at hours {hours}\n"
            )
        else:
            out.write("\nno feasible build found\n")
        return out.getvalue()

    out.write("\nsizing decision\n")
    out.write(f"  {'subsystem':<10} {'quantity':>12} {'lifetime cost':>18}\n")
    for resource in scenario.resources:
        count = solution.counts.get(resource, 0)
        out.write(
            f"  {resource:<10} {count:>12d} {report.breakdown[resource]:>18,.2f}\n"
        )
    if scenario.bess.enabled:
        out.write(
            f"  {'bess':<10} {solution.storage_energy_kwh:>10.2f} kWh"
            f" {report.breakdown['bess']:>16,.2f}\n"
        )
    out.write(f"  {'total':<10} {'':>12} {solution.objective:>18,.2f}\n")

    if report.validation is not None:
        out.write("\nvalidation\n")
        for line in report.validation.summary_lines():
            out.write(f"  {line}\n")

    out.write("\nhourly dispatch\n")
    resources = list(scenario.resources)
    header = ["hour", "load"] + resources + ["charge", "discharge", "curtail", "stored"]
    out.write("  " + " ".join(f"{h:>10}" for h in header) + "\n")
    for row in _dispatch_rows(report):
        cells = [f"{int(row['hour']):>10d}", f"{row['load_kw']:>10.1f}"]
        cells += [f"{row[f'{r}_kw']:>10.1f}" for r in resources]
        cells += [
            f"{row['charge_kw']:>10.1f}",
            f"{row['discharge_kw']:>10.1f}",
            f"{row['curtailment_kw']:>10.1f}",
            f"{row['stored_kwh']:>10.1f}",
        ]
        out.write("  " + " ".join(cells) + "\n")
    return out.getvalue()


def report_document(report: Report) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "scenario_name": report.scenario.name,
        "status": report.solution.status,
        "objective": report.solution.objective,
        "counts": dict(report.solution.counts),
        "storage_energy_kwh": report.solution.storage_energy_kwh,
        "breakdown": dict(report.breakdown),
        "diagnostics": report.solution.diagnostics.as_dict(),
        "dispatch": _dispatch_rows(report),
    }
    if report.validation is not None:
        doc["validation"] = report.validation.as_dict()
    if report.deficient_hours:
        doc["deficient_hours"] = list(report.deficient_hours)
    return doc


def render_json(report: Report) -> str:
    return json.dumps(report_document(report), indent=2, sort_keys=True) + "\n"


def render_dispatch_csv(report: Report) -> str:
    rows = _dispatch_rows(report)
    resources = list(report.scenario.resources)
    header = (
        ["hour", "load_kw"]
        + [f"{r}_kw" for r in resources]
        + ["charge_kw", "discharge_kw", "curtailment_kw", "stored_kwh"]
    )
    lines = [",".join(header)]
    for row in rows:
        cells = [str(int(row["hour"]))] + [str(float(row[key])) for key in header[1:]]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def solution_document(scenario_doc: Mapping[str, Any], solution: SizingSolution) -> dict[str, Any]:
    """The self-contained JSON document written next to reports: carries the
    full scenario so audits need no other inputs."""
    return {
        "format": SOLUTION_FORMAT,
        "scenario": dict(scenario_doc),
        "solution": solution.as_dict(),
    }
