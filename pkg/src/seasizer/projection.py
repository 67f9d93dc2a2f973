"""Resource-to-power projection for the four offshore generator types.

Turbine types (tidal and wind) use the swept-area relation: the kW output
at fluid speed v is ``0.5 * rho * pi * r^2 * v^3 * Cp * eta / 1000``,
zero below cut-in and at or above cut-out, and never above the rated
power. Wind measured near the surface is moved to hub height with the
logarithmic profile ``v * ln(z_hub/z0) / ln(z_ref/z0)``. Wave converters
interpolate a manufacturer-style power matrix over significant wave
height and wave period. Floating PV scales a simulated reference system's
AC output down to a single panel.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

from .errors import FormatError, ParameterError
from .ingest import HourlySeries, TypicalDayProfile

__all__ = [
    "RotorSpec",
    "WindShearSpec",
    "WecPowerMatrix",
    "FpvSpec",
    "ProjectionSpecs",
    "TypicalDayInputs",
    "extrapolate_wind_speed",
    "swept_area_power",
    "wec_power",
    "fpv_unit_power",
    "project_turbine_series",
    "project_wind_series",
    "project_wave_series",
    "project_pv_series",
    "build_generation_profiles",
    "load_wec_matrix",
    "default_wec_matrix",
]

WAVE_PERIOD_CHANNELS = ("dominant_wave_period", "average_wave_period")


@dataclass(frozen=True)
class RotorSpec:
    """Swept-area turbine parameters (tidal or wind)."""

    fluid_density: float  # kg/m^3
    rotor_radius: float  # m
    power_coefficient: float
    electrical_efficiency: float
    rated_power: float  # kW
    cut_in_speed: float = 0.0  # m/s
    cut_out_speed: float | None = None  # m/s; None = no cut-out

    def __post_init__(self):
        if self.fluid_density <= 0:
            raise ParameterError(f"fluid density must be positive, got {self.fluid_density}")
        if self.rotor_radius <= 0:
            raise ParameterError(f"rotor radius must be positive, got {self.rotor_radius}")
        if not 0 < self.power_coefficient < 1:
            raise ParameterError(
                f"power coefficient must be in (0, 1), got {self.power_coefficient}"
            )
        if not 0 < self.electrical_efficiency <= 1:
            raise ParameterError(
                f"electrical efficiency must be in (0, 1], got {self.electrical_efficiency}"
            )
        if self.rated_power <= 0:
            raise ParameterError(f"rated power must be positive, got {self.rated_power}")
        if self.cut_in_speed < 0:
            raise ParameterError(f"cut-in speed must be >= 0, got {self.cut_in_speed}")
        if self.cut_out_speed is not None and self.cut_out_speed <= self.cut_in_speed:
            raise ParameterError("cut-out speed must exceed cut-in speed")


@dataclass(frozen=True)
class WindShearSpec:
    """Log-profile extrapolation from measurement height to hub height."""

    measurement_height: float  # m
    hub_height: float  # m
    roughness_length: float  # m

    def __post_init__(self):
        if self.roughness_length <= 0:
            raise ParameterError("roughness length must be positive")
        if self.measurement_height <= self.roughness_length:
            raise ParameterError("measurement height must exceed the roughness length")
        if self.hub_height < self.measurement_height:
            raise ParameterError("hub height must be at or above the measurement height")


@dataclass(frozen=True)
class WecPowerMatrix:
    """Wave converter output (kW) gridded over wave height and period."""

    hs_axis: tuple[float, ...]  # m, strictly increasing
    te_axis: tuple[float, ...]  # s, strictly increasing
    cells: tuple[tuple[float, ...], ...]  # cells[i][j] at (hs_axis[i], te_axis[j])
    rated_power: float  # kW

    def __post_init__(self):
        if len(self.hs_axis) < 2 or len(self.te_axis) < 2:
            raise ParameterError("power matrix needs at least 2 points per axis")
        for axis, name in ((self.hs_axis, "hs"), (self.te_axis, "te")):
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise ParameterError(f"{name} axis must be strictly increasing")
        if len(self.cells) != len(self.hs_axis):
            raise ParameterError("cell rows must match the hs axis length")
        for row in self.cells:
            if len(row) != len(self.te_axis):
                raise ParameterError("cell columns must match the te axis length")
            for value in row:
                if not 0 <= value <= self.rated_power:
                    raise ParameterError(
                        f"cell value {value} outside [0, rated={self.rated_power}]"
                    )
        if self.rated_power <= 0:
            raise ParameterError("rated power must be positive")


@dataclass(frozen=True)
class FpvSpec:
    """Scaling from a simulated reference PV system down to one panel."""

    panel_rating: float  # kW
    reference_system_rating: float  # kW

    def __post_init__(self):
        if self.panel_rating <= 0 or self.reference_system_rating <= 0:
            raise ParameterError("PV ratings must be positive")


@dataclass(frozen=True)
class ProjectionSpecs:
    """Everything needed to turn met/ocean observations into unit power."""

    tec_rotor: RotorSpec
    owt_rotor: RotorSpec
    wind_shear: WindShearSpec
    wec_matrix: WecPowerMatrix
    fpv: FpvSpec
    wave_period_channel: str = "dominant_wave_period"

    def __post_init__(self):
        if self.wave_period_channel not in WAVE_PERIOD_CHANNELS:
            raise ParameterError(
                f"wave period channel must be one of {WAVE_PERIOD_CHANNELS}"
            )


@dataclass(frozen=True)
class TypicalDayInputs:
    """Typical-day met inputs feeding :func:`build_generation_profiles`."""

    wind_speed: TypicalDayProfile  # m/s at measurement height
    current_speed: TypicalDayProfile  # m/s
    wave_height: TypicalDayProfile  # m
    wave_period: TypicalDayProfile  # s
    pv_system_ac: TypicalDayProfile  # kW of the reference system


def extrapolate_wind_speed(speed: float, shear: WindShearSpec) -> float:
    """Move a wind speed from measurement height to hub height (log profile)."""
    if speed < 0:
        raise ParameterError(f"wind speed must be >= 0, got {speed}")
    return (
        speed
        * math.log(shear.hub_height / shear.roughness_length)
        / math.log(shear.measurement_height / shear.roughness_length)
    )


def swept_area_power(speed: float, rotor: RotorSpec) -> float:
    """kW produced by a swept-area turbine at the given fluid speed."""
    if speed < 0:
        raise ParameterError(f"fluid speed must be >= 0, got {speed}")
    if speed < rotor.cut_in_speed:
        return 0.0
    if rotor.cut_out_speed is not None and speed >= rotor.cut_out_speed:
        return 0.0
    raw_w = (
        0.5
        * rotor.fluid_density
        * math.pi
        * rotor.rotor_radius**2
        * speed**3
        * rotor.power_coefficient
        * rotor.electrical_efficiency
    )
    return min(raw_w / 1000.0, rotor.rated_power)


def _bilinear(matrix: WecPowerMatrix, i: int, j: int, hs: float, te: float) -> float:
    """Interpolate inside cell (i, j); exposed for edge-continuity tests."""
    h0, h1 = matrix.hs_axis[i], matrix.hs_axis[i + 1]
    t0, t1 = matrix.te_axis[j], matrix.te_axis[j + 1]
    u = (hs - h0) / (h1 - h0)
    v = (te - t0) / (t1 - t0)
    c = matrix.cells
    return (
        c[i][j] * (1 - u) * (1 - v)
        + c[i + 1][j] * u * (1 - v)
        + c[i][j + 1] * (1 - u) * v
        + c[i + 1][j + 1] * u * v
    )


def _locate(axis: tuple[float, ...], x: float) -> int:
    """Index of the cell along one axis whose span contains clamped x."""
    lo, hi = 0, len(axis) - 2
    k = lo
    while k < hi and x >= axis[k + 1]:
        k += 1
    return k


def wec_power(hs: float, te: float, matrix: WecPowerMatrix) -> float:
    """kW produced by one wave converter in the given sea state.

    Coordinates outside the matrix clamp to its edges, so seas below the
    first grid point produce whatever the edge cells hold (zero when the
    first row or column is zero) and seas beyond the last grid point hold
    the edge output. Output never exceeds the rated power.
    """
    if hs < 0:
        raise ParameterError(f"wave height must be >= 0, got {hs}")
    if te <= 0:
        raise ParameterError(f"wave period must be positive, got {te}")
    hs_c = min(max(hs, matrix.hs_axis[0]), matrix.hs_axis[-1])
    te_c = min(max(te, matrix.te_axis[0]), matrix.te_axis[-1])
    i = _locate(matrix.hs_axis, hs_c)
    j = _locate(matrix.te_axis, te_c)
    return min(_bilinear(matrix, i, j, hs_c, te_c), matrix.rated_power)


def fpv_unit_power(system_ac: float, spec: FpvSpec) -> float:
    """kW produced by one floating panel given the reference system's AC."""
    if system_ac < 0:
        raise ParameterError(f"system AC output must be >= 0, got {system_ac}")
    scaled = system_ac * spec.panel_rating / spec.reference_system_rating
    return min(scaled, spec.panel_rating)


def _map_series(series: HourlySeries, fn) -> HourlySeries:
    values = tuple(None if v is None else fn(v) for v in series.values)
    return HourlySeries(start=series.start, values=values)


def project_turbine_series(series: HourlySeries, rotor: RotorSpec) -> HourlySeries:
    """Fluid-speed series (m/s) to per-unit power series (kW)."""
    return _map_series(series, lambda v: swept_area_power(v, rotor))


def project_wind_series(
    series: HourlySeries, shear: WindShearSpec, rotor: RotorSpec
) -> HourlySeries:
    """Measured wind series to per-unit power, extrapolating to hub height."""
    return _map_series(
        series, lambda v: swept_area_power(extrapolate_wind_speed(v, shear), rotor)
    )


def project_pv_series(series: HourlySeries, spec: FpvSpec) -> HourlySeries:
    """Reference-system AC series (kW) to per-panel power series."""
    return _map_series(series, lambda v: fpv_unit_power(v, spec))


def project_wave_series(
    hs_series: HourlySeries, te_series: HourlySeries, matrix: WecPowerMatrix
) -> HourlySeries:
    """Paired height/period series to per-unit wave power.

    The two series are aligned on their common hour range; hours where
    either input is a gap come out as gaps.
    """
    if hs_series.start is None or te_series.start is None:
        return HourlySeries(start=None, values=())
    start = max(hs_series.start, te_series.start)
    end = min(hs_series.hour_of(len(hs_series) - 1), te_series.hour_of(len(te_series) - 1))
    if end < start:
        return HourlySeries(start=None, values=())
    n = int((end - start).total_seconds() // 3600) + 1
    off_h = int((start - hs_series.start).total_seconds() // 3600)
    off_t = int((start - te_series.start).total_seconds() // 3600)
    values: list[float | None] = []
    for k in range(n):
        hs = hs_series.values[off_h + k]
        te = te_series.values[off_t + k]
        if hs is None or te is None:
            values.append(None)
        else:
            values.append(wec_power(hs, te, matrix))
    return HourlySeries(start=start, values=tuple(values))


def build_generation_profiles(
    inputs: TypicalDayInputs, specs: ProjectionSpecs
) -> dict[str, TypicalDayProfile]:
    """Project typical-day met inputs into per-unit generation profiles.

    Returns profiles keyed ``wec``, ``tec``, ``owt``, ``fpv``, each value
    the kW one unit produces in that clock hour. Sample counts carry over
    from the inputs (for the wave pair, the smaller of the two).
    """
    wec_values = tuple(
        wec_power(hs, te, specs.wec_matrix)
        for hs, te in zip(inputs.wave_height.hour_values, inputs.wave_period.hour_values)
    )
    wec_counts = tuple(
        min(a, b)
        for a, b in zip(inputs.wave_height.sample_counts, inputs.wave_period.sample_counts)
    )
    tec_values = tuple(
        swept_area_power(v, specs.tec_rotor) for v in inputs.current_speed.hour_values
    )
    owt_values = tuple(
        swept_area_power(extrapolate_wind_speed(v, specs.wind_shear), specs.owt_rotor)
        for v in inputs.wind_speed.hour_values
    )
    fpv_values = tuple(
        fpv_unit_power(v, specs.fpv) for v in inputs.pv_system_ac.hour_values
    )
    return {
        "wec": TypicalDayProfile(wec_values, wec_counts),
        "tec": TypicalDayProfile(tec_values, inputs.current_speed.sample_counts),
        "owt": TypicalDayProfile(owt_values, inputs.wind_speed.sample_counts),
        "fpv": TypicalDayProfile(fpv_values, inputs.pv_system_ac.sample_counts),
    }


def load_wec_matrix(
    source: io.TextIOBase | str, rated_power: float | None = None
) -> WecPowerMatrix:
    """Load a wave power matrix from CSV.

    Layout: the first row holds the wave period axis (first cell is a
    corner label and is ignored); each following row starts with a wave
    height value and continues with kW cells. ``rated_power`` defaults to
    the largest cell.
    """
    text = source if isinstance(source, str) else source.read()
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if len(rows) < 3:
        raise FormatError("power matrix CSV needs a header row and at least 2 data rows")
    try:
        te_axis = tuple(float(c) for c in rows[0][1:])
        hs_axis = tuple(float(r[0]) for r in rows[1:])
        cells = tuple(tuple(float(c) for c in r[1:]) for r in rows[1:])
    except ValueError as exc:
        raise FormatError(f"non-numeric cell in power matrix: {exc}") from None
    if rated_power is None:
        rated_power = max(max(row) for row in cells)
    try:
        return WecPowerMatrix(
            hs_axis=hs_axis, te_axis=te_axis, cells=cells, rated_power=rated_power
        )
    except ParameterError as exc:
        raise FormatError(f"bad power matrix: {exc}") from None


def default_wec_matrix() -> WecPowerMatrix:
    """The 750 kW attenuator matrix shipped with the package."""
    path = resources.files("seasizer").joinpath("data/wec_matrix_default.csv")
    return load_wec_matrix(path.read_text(encoding="utf-8"), rated_power=750.0)


DEFAULT_TEC_ROTOR = RotorSpec(
    fluid_density=1025.0,
    rotor_radius=10.0,
    power_coefficient=0.40,
    electrical_efficiency=0.95,
    rated_power=500.0,
    cut_in_speed=0.5,
)
DEFAULT_OWT_ROTOR = RotorSpec(
    fluid_density=1.225,
    rotor_radius=80.0,
    power_coefficient=0.45,
    electrical_efficiency=0.95,
    rated_power=8000.0,
    cut_in_speed=3.0,
    cut_out_speed=25.0,
)
DEFAULT_WIND_SHEAR = WindShearSpec(
    measurement_height=4.0, hub_height=80.0, roughness_length=0.0002
)
DEFAULT_PANEL_RATING_KW = 0.4


def default_projection_specs(
    wec_matrix: WecPowerMatrix | None = None,
    wave_period_channel: str = "dominant_wave_period",
    fpv_reference_kw: float = 4000.0,
) -> ProjectionSpecs:
    """Baseline equipment assumptions for the profile-building pipeline."""
    return ProjectionSpecs(
        tec_rotor=DEFAULT_TEC_ROTOR,
        owt_rotor=DEFAULT_OWT_ROTOR,
        wind_shear=DEFAULT_WIND_SHEAR,
        wec_matrix=wec_matrix if wec_matrix is not None else default_wec_matrix(),
        fpv=FpvSpec(
            panel_rating=DEFAULT_PANEL_RATING_KW,
            reference_system_rating=fpv_reference_kw,
        ),
        wave_period_channel=wave_period_channel,
    )
