"""Command-line interface.

Subcommands:

* ``profiles`` — turn raw buoy, current, and PV files into typical-day
  generation profiles.
* ``solve`` — size a system for a scenario and write reports.
* ``check`` — audit a previously written solution document.
* ``oracle`` — cross-check the search against exhaustive enumeration.

Exit codes: 0 success, 1 usage or input errors, 2 no feasible build,
3 failed audit or solver/oracle disagreement, 4 search or enumeration
limits (node limit, time limit, enumeration budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import OracleBudgetError, SeasizerError
from .ingest import (
    parse_currents,
    parse_ndbc,
    parse_pvwatts,
    pv_to_series,
    to_hourly,
    typical_day,
    write_profiles_doc,
)
from .model import SizingSolution, validate_solution
from .projection import (
    TypicalDayInputs,
    build_generation_profiles,
    default_projection_specs,
    load_wec_matrix,
)
from .report import (
    SOLUTION_FORMAT,
    build_report,
    render_dispatch_csv,
    render_json,
    render_text,
    solution_document,
)
from .scenario import builtin_names, load_scenario, scenario_from_doc, scenario_to_doc
from .sizing import enumerate_scenario, solve_scenario
from .solver import SolverOptions, set_backend

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_AUDIT_FAILED = 3
EXIT_LIMIT = 4


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exceptions, not exit(2)."""

    def error(self, message):  # noqa: D102 - argparse hook
        raise SeasizerError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="seasizer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    profiles = sub.add_parser(
        "profiles", help="build typical-day generation profiles from raw data",
    )
    profiles.add_argument("--ndbc", required=True, help="buoy meteorology file")
    profiles.add_argument("--currents", required=True, help="current observations CSV")
    profiles.add_argument(
        "--currents-unit", default="knots", choices=("knots", "cm_per_s", "m_per_s"),
    )
    profiles.add_argument("--pvwatts", required=True, help="hourly PV output CSV")
    profiles.add_argument(
        "--pv-rating", type=float, default=None,
        help="PV system rating in kW when the file metadata lacks it",
    )
    profiles.add_argument(
        "--wave-period-channel", default="dominant",
        choices=("dominant", "average"),
    )
    profiles.add_argument("--wec-matrix", default=None, help="wave power matrix CSV")
    profiles.add_argument("--out", default=None, help="write the profiles JSON here")

    solve = sub.add_parser("solve", help="size a system for a scenario")
    solve.add_argument(
        "--scenario", required=True,
        help=f"scenario JSON path or built-in name ({', '.join(builtin_names())})",
    )
    solve.add_argument("--out", default=None, help="directory for result documents")
    solve.add_argument("--gap", type=float, default=1e-6, help="relative optimality gap")
    solve.add_argument("--node-limit", type=int, default=None)
    solve.add_argument("--time-limit", type=float, default=None, help="seconds")
    solve.add_argument("--no-seed", action="store_true",
                       help="skip the incumbent-seeding dive")
    solve.add_argument("--backend", default=None, choices=("auto", "numpy", "numba"))
    solve.add_argument("--format", default="text", choices=("text", "json", "csv"),
                       help="stdout rendering")

    check = sub.add_parser("check", help="audit a solution document")
    check.add_argument("solution", help="path to a solution JSON document")
    check.add_argument("--constraint-tol", type=float, default=1e-6)
    check.add_argument("--objective-tol", type=float, default=1e-9)

    oracle = sub.add_parser(
        "oracle", help="compare the search against exhaustive enumeration",
    )
    oracle.add_argument("--scenario", required=True)
    oracle.add_argument("--gap", type=float, default=1e-6)
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SeasizerError(f"cannot read {path}: {exc}") from exc


def _cmd_profiles(args) -> int:
    meteo = parse_ndbc(_read(args.ndbc))
    period_field = (
        "dominant_wave_period" if args.wave_period_channel == "dominant"
        else "average_wave_period"
    )
    wind = typical_day(to_hourly(meteo, "wind_speed"))
    wave_height = typical_day(to_hourly(meteo, "sig_wave_height"))
    wave_period = typical_day(to_hourly(meteo, period_field))

    currents = parse_currents(_read(args.currents), speed_unit=args.currents_unit)
    current = typical_day(to_hourly(currents, "speed"))

    pv_records = parse_pvwatts(_read(args.pvwatts), system_rating_kw=args.pv_rating)
    pv = typical_day(pv_to_series(pv_records))

    matrix = load_wec_matrix(_read(args.wec_matrix)) if args.wec_matrix else None
    specs = default_projection_specs(
        wec_matrix=matrix,
        wave_period_channel=period_field,
        fpv_reference_kw=pv_records[0].system_rating,
    )
    inputs = TypicalDayInputs(
        wind_speed=wind,
        current_speed=current,
        wave_height=wave_height,
        wave_period=wave_period,
        pv_system_ac=pv,
    )
    profiles = build_generation_profiles(inputs, specs)

    names = sorted(profiles)
    print("hour " + " ".join(f"{name:>10}" for name in names))
    for hour in range(24):
        cells = " ".join(f"{profiles[name].hour_values[hour]:>10.2f}" for name in names)
        print(f"{hour:>4d} {cells}")
    if args.out:
        write_profiles_doc(profiles, args.out)
        print(f"\nwrote {args.out}")
    return EXIT_OK


def _solver_options(args) -> SolverOptions:
    return SolverOptions(
        relative_gap=args.gap,
        node_limit=getattr(args, "node_limit", None),
        time_limit=getattr(args, "time_limit", None),
        seed_incumbent=not getattr(args, "no_seed", False),
    )


def _cmd_solve(args) -> int:
    if args.backend:
        set_backend(args.backend)
    scenario = load_scenario(args.scenario)
    solution = solve_scenario(scenario, _solver_options(args))
    report = build_report(scenario, solution)

    if args.format == "json":
        sys.stdout.write(render_json(report))
    elif args.format == "csv":
        sys.stdout.write(render_dispatch_csv(report))
    else:
        sys.stdout.write(render_text(report))

    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        doc = solution_document(scenario_to_doc(scenario), solution)
        (out_dir / "solution.json").write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        (out_dir / "report.txt").write_text(render_text(report), encoding="utf-8")
        (out_dir / "report.json").write_text(render_json(report), encoding="utf-8")
        (out_dir / "dispatch.csv").write_text(render_dispatch_csv(report), encoding="utf-8")

    if solution.status == "optimal":
        if report.validation is not None and not report.validation.passes():
            print("solution failed its own audit", file=sys.stderr)
            return EXIT_AUDIT_FAILED
        return EXIT_OK
    if solution.status == "limit":
        return EXIT_LIMIT
    return EXIT_INFEASIBLE


def _cmd_check(args) -> int:
    try:
        doc = json.loads(_read(args.solution))
    except json.JSONDecodeError as exc:
        raise SeasizerError(f"{args.solution}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != SOLUTION_FORMAT:
        raise SeasizerError(
            f"{args.solution} is not a solution document (format != {SOLUTION_FORMAT!r})"
        )
    scenario = scenario_from_doc(doc.get("scenario", {}))
    solution = SizingSolution.from_dict(doc.get("solution", {}))
    if solution.objective is None:
        print(f"stored status is {solution.status!r}; nothing to audit")
        return EXIT_OK
    result = validate_solution(scenario, solution)
    for line in result.summary_lines(args.constraint_tol, args.objective_tol):
        print(line)
    if result.passes(args.constraint_tol, args.objective_tol):
        print("audit: PASS")
        return EXIT_OK
    print("audit: FAIL")
    return EXIT_AUDIT_FAILED


def _cmd_oracle(args) -> int:
    scenario = load_scenario(args.scenario)
    options = SolverOptions(relative_gap=args.gap)
    searched = solve_scenario(scenario, options)
    enumerated = enumerate_scenario(scenario, options)

    print(f"search:      {searched.status}"
          + (f" objective {searched.objective:,.6f}" if searched.objective is not None else ""))
    print(f"enumeration: {enumerated.status}"
          + (f" objective {enumerated.objective:,.6f}" if enumerated.objective is not None else ""))

    if searched.status != enumerated.status:
        print("DISAGREE: statuses differ")
        return EXIT_AUDIT_FAILED
    if searched.status == "optimal":
        rel = abs(searched.objective - enumerated.objective) / max(1.0, abs(enumerated.objective))
        if rel > 1e-6:
            print(f"DISAGREE: objectives differ by {rel:.3e} (relative)")
            return EXIT_AUDIT_FAILED
        print(f"AGREE within {rel:.3e} (relative)")
        return EXIT_OK
    print("AGREE: both report", searched.status)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "profiles":
            return _cmd_profiles(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        raise SeasizerError(f"unknown command {args.command!r}")
    except OracleBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except SeasizerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
