"""Scenario configuration: built-in instances, JSON documents, defaults.

A scenario document is a JSON object with a load profile, per-resource
unit generation profiles, and optional storage and cost sections that
fall back to the baseline offshore assumptions when omitted.  Storage
power caps left null default to a quarter of the peak load.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Mapping

from .errors import ConfigError
from .model import (
    RESOURCE_ORDER,
    BessParams,
    CostBook,
    SizingScenario,
    SubsystemCost,
)

DEFAULT_MAX_UNITS = {"wec": 200, "tec": 200, "owt": 200, "fpv": 1_000_000}
DEFAULT_POWER_CAP_FRACTION = 0.25

# Illustrative daily shapes for the built-in scenario: a coastal demand
# curve with morning and evening peaks averaging exactly 50 MW, paired
# with per-unit outputs for each resource over the same day.
_LOAD_BUMP_TWENTIETHS = (
    -20, -24, -26, -27, -25, -18, -6, 7, 17, 32, 33, 30,
    19, 17, 16, 18, 23, 29, 41, 39, 23, 12, -4, -15,
)


def _default_load_kw() -> tuple[float, ...]:
    return tuple(47612.5 + 300.0 * k for k in _LOAD_BUMP_TWENTIETHS)


def _default_unit_profiles() -> dict[str, tuple[float, ...]]:
    hours = range(24)
    owt = tuple(round(3600.0 + 800.0 * math.cos(2.0 * math.pi * (h - 7) / 24.0), 2)
                for h in hours)
    tec = tuple(round(310.0 + 185.0 * math.sin(2.0 * math.pi * h / 12.4 + 1.1), 2)
                for h in hours)
    wec = tuple(round(190.0 + 70.0 * math.sin(2.0 * math.pi * (h - 14) / 24.0), 2)
                for h in hours)
    fpv = tuple(round(0.32 * max(0.0, math.sin(math.pi * (h - 6) / 12.0)), 4)
                for h in hours)
    return {"wec": wec, "tec": tec, "owt": owt, "fpv": fpv}


def default_bess_params(load_kw: tuple[float, ...]) -> BessParams:
    """Storage defaults with power caps at a quarter of the peak load."""
    cap = DEFAULT_POWER_CAP_FRACTION * max(load_kw)
    return BessParams(max_charge_kw=cap, max_discharge_kw=cap)


def builtin_scenario(name: str) -> SizingScenario:
    """One of the scenarios shipped with the package, by name."""
    if name == "baseline_offshore":
        load = _default_load_kw()
        return SizingScenario(
            name="baseline_offshore",
            load_kw=load,
            unit_generation_kw=_default_unit_profiles(),
            max_units=dict(DEFAULT_MAX_UNITS),
            cost_book=CostBook.defaults(),
            bess=default_bess_params(load),
        )
    if name == "toy_flat_t2":
        return SizingScenario(
            name="toy_flat_t2",
            load_kw=(100.0, 100.0),
            unit_generation_kw={"owt": (60.0, 60.0)},
            max_units={"owt": 5},
            cost_book=CostBook(
                resources={"owt": SubsystemCost(10.0, 0.0, 0.0, 0.0)},
                storage_per_kwh=SubsystemCost(1.0, 0.0, 0.0, 0.0),
            ),
            bess=BessParams.disabled(),
        )
    if name == "toy_infeasible":
        return SizingScenario(
            name="toy_infeasible",
            load_kw=(5.0, 5.0),
            unit_generation_kw={"fpv": (0.3, 0.0)},
            max_units={"fpv": 100},
            cost_book=CostBook(
                resources={"fpv": SubsystemCost(1.0, 0.0, 0.0, 0.0)},
                storage_per_kwh=SubsystemCost(1.0, 0.0, 0.0, 0.0),
            ),
            bess=BessParams.disabled(),
        )
    raise ConfigError(
        f"unknown built-in scenario {name!r}; "
        f"available: {', '.join(sorted(builtin_names()))}"
    )


def builtin_names() -> tuple[str, ...]:
    return ("baseline_offshore", "toy_flat_t2", "toy_infeasible")


def _cost_component(doc: Mapping[str, Any], context: str) -> SubsystemCost:
    try:
        return SubsystemCost(
            precommissioning=float(doc["precommissioning"]),
            capital=float(doc["capital"]),
            om_per_year=float(doc["om_per_year"]),
            decommissioning=float(doc["decommissioning"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad cost entry for {context}: {exc}") from exc


def _cost_book_from_doc(doc: Mapping[str, Any], resources: tuple[str, ...]) -> CostBook:
    defaults = CostBook.defaults()
    resource_costs = {}
    declared = doc.get("resources", {})
    for name in resources:
        if name in declared:
            resource_costs[name] = _cost_component(declared[name], name)
        else:
            resource_costs[name] = defaults.resources[name]
    storage = (
        _cost_component(doc["storage_per_kwh"], "storage_per_kwh")
        if "storage_per_kwh" in doc
        else defaults.storage_per_kwh
    )
    return CostBook(
        resources=resource_costs,
        storage_per_kwh=storage,
        lifetime_years=float(doc.get("lifetime_years", defaults.lifetime_years)),
        storage_degradation_rate=float(
            doc.get("storage_degradation_rate", defaults.storage_degradation_rate)
        ),
    )


def _bess_from_doc(doc: Mapping[str, Any], load_kw: tuple[float, ...]) -> BessParams:
    if not doc.get("enabled", True):
        return BessParams.disabled()
    cap = DEFAULT_POWER_CAP_FRACTION * max(load_kw)

    def power(key: str) -> float:
        value = doc.get(key)
        return cap if value is None else float(value)

    overrides = {
        key: float(doc[key])
        for key in ("charge_efficiency", "discharge_efficiency", "soc_min", "soc_max")
        if key in doc
    }
    max_energy = doc.get("max_energy_kwh")
    return BessParams(
        max_charge_kw=power("max_charge_kw"),
        max_discharge_kw=power("max_discharge_kw"),
        max_energy_kwh=None if max_energy is None else float(max_energy),
        **overrides,
    )


def scenario_from_doc(doc: Mapping[str, Any]) -> SizingScenario:
    """Build a scenario from a parsed JSON document, filling defaults."""
    if not isinstance(doc, Mapping):
        raise ConfigError("scenario document must be a JSON object")
    try:
        name = str(doc["name"])
        load_kw = tuple(float(v) for v in doc["load_kw"])
        declared = doc["resources"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"scenario document missing required field: {exc}") from exc
    if not isinstance(declared, Mapping) or not declared:
        raise ConfigError("scenario 'resources' must be a non-empty object")

    generation: dict[str, tuple[float, ...]] = {}
    max_units: dict[str, int] = {}
    for resource, entry in declared.items():
        if resource not in RESOURCE_ORDER:
            raise ConfigError(
                f"unknown resource {resource!r}; expected one of {RESOURCE_ORDER}"
            )
        try:
            generation[resource] = tuple(float(v) for v in entry["unit_generation_kw"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad generation profile for {resource!r}: {exc}") from exc
        bound = entry.get("max_units", DEFAULT_MAX_UNITS[resource])
        max_units[resource] = int(bound)

    resources = tuple(r for r in RESOURCE_ORDER if r in generation)
    cost_book = _cost_book_from_doc(doc.get("costs", {}), resources)
    bess = _bess_from_doc(doc.get("storage", {}), load_kw)
    return SizingScenario(
        name=name,
        load_kw=load_kw,
        unit_generation_kw=generation,
        max_units=max_units,
        cost_book=cost_book,
        bess=bess,
    )


def scenario_to_doc(scenario: SizingScenario) -> dict[str, Any]:
    """Serialize a scenario to its JSON document form (fully explicit)."""
    cost_doc = {
        "lifetime_years": scenario.cost_book.lifetime_years,
        "storage_degradation_rate": scenario.cost_book.storage_degradation_rate,
        "resources": {
            name: {
                "precommissioning": cost.precommissioning,
                "capital": cost.capital,
                "om_per_year": cost.om_per_year,
                "decommissioning": cost.decommissioning,
            }
            for name, cost in sorted(scenario.cost_book.resources.items())
        },
        "storage_per_kwh": {
            "precommissioning": scenario.cost_book.storage_per_kwh.precommissioning,
            "capital": scenario.cost_book.storage_per_kwh.capital,
            "om_per_year": scenario.cost_book.storage_per_kwh.om_per_year,
            "decommissioning": scenario.cost_book.storage_per_kwh.decommissioning,
        },
    }
    storage_doc: dict[str, Any] = {"enabled": scenario.bess.enabled}
    if scenario.bess.enabled:
        storage_doc.update(
            charge_efficiency=scenario.bess.charge_efficiency,
            discharge_efficiency=scenario.bess.discharge_efficiency,
            soc_min=scenario.bess.soc_min,
            soc_max=scenario.bess.soc_max,
            max_charge_kw=scenario.bess.max_charge_kw,
            max_discharge_kw=scenario.bess.max_discharge_kw,
            max_energy_kwh=scenario.bess.max_energy_kwh,
        )
    return {
        "name": scenario.name,
        "load_kw": list(scenario.load_kw),
        "resources": {
            resource: {
                "unit_generation_kw": list(scenario.unit_generation_kw[resource]),
                "max_units": scenario.max_units[resource],
            }
            for resource in scenario.resources
        },
        "storage": storage_doc,
        "costs": cost_doc,
    }


def load_scenario(source: str | Path) -> SizingScenario:
    """Load a scenario from a built-in name or a JSON file path."""
    text = str(source)
    if text in builtin_names():
        return builtin_scenario(text)
    path = Path(source)
    if not path.exists():
        raise ConfigError(
            f"scenario {text!r} is neither a built-in name nor an existing file"
        )
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return scenario_from_doc(doc)


def write_scenario(scenario: SizingScenario, path: str | Path) -> None:
    """Write the fully explicit JSON document for a scenario."""
    Path(path).write_text(
        json.dumps(scenario_to_doc(scenario), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
