"""Dataset ingest: buoy meteorology, tidal currents, PV production.

Three text formats are supported and normalized to SI units on the way in:

* NDBC standard meteorological history files (whitespace-delimited, ``#``
  header lines, per-channel numeric sentinels for missing data).
* NOAA tidal current station exports (CSV, six-minute cadence, speeds in
  knots by default).
* PVWatts hourly simulation exports (CSV with ``key,value`` metadata rows
  followed by an hourly table, AC output in watts).

Parsed records flow through :func:`to_hourly` into dense hour-aligned
series and finally into 24-hour typical-day profiles via
:func:`typical_day`.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Callable, Iterable, Mapping

from .errors import (
    ConfigError,
    FormatError,
    IncompleteProfileError,
    IngestWarning,
    ParameterError,
    RowParseError,
)

__all__ = [
    "MeteoRecord",
    "CurrentRecord",
    "PvRecord",
    "HourlySeries",
    "TypicalDayProfile",
    "parse_ndbc",
    "render_ndbc",
    "parse_currents",
    "render_currents",
    "parse_pvwatts",
    "render_pvwatts",
    "pv_to_series",
    "to_hourly",
    "typical_day",
    "profiles_to_doc",
    "doc_to_profiles",
    "read_profiles_doc",
    "write_profiles_doc",
]

KNOTS_TO_MPS = 0.514444

# Per-channel missing-data sentinels used by NDBC standard met files.
# Channels not listed here are carried through verbatim.
_NDBC_SENTINELS: dict[str, float] = {
    "WDIR": 999.0,
    "WD": 999.0,
    "WSPD": 99.0,
    "GST": 99.0,
    "WVHT": 99.0,
    "DPD": 99.0,
    "APD": 99.0,
    "MWD": 999.0,
    "PRES": 9999.0,
    "BAR": 9999.0,
    "ATMP": 999.0,
    "WTMP": 999.0,
    "DEWP": 999.0,
    "VIS": 99.0,
    "TIDE": 99.0,
    "PTDY": 99.0,
}

_YEAR_NAMES = {"YY", "YYYY"}

# Core channels mapped to record attributes; everything else rides in extras.
_CORE_CHANNELS = {
    "WSPD": "wind_speed",
    "GST": "gust_speed",
    "WVHT": "sig_wave_height",
    "DPD": "dominant_wave_period",
    "APD": "average_wave_period",
}


@dataclass(frozen=True)
class MeteoRecord:
    """One timestamped buoy observation; ``None`` marks a missing channel."""

    timestamp: datetime
    wind_speed: float | None = None  # m/s at anemometer height
    gust_speed: float | None = None  # m/s
    sig_wave_height: float | None = None  # m
    dominant_wave_period: float | None = None  # s
    average_wave_period: float | None = None  # s
    extras: Mapping[str, float | None] = field(default_factory=dict)


@dataclass(frozen=True)
class CurrentRecord:
    """One tidal current observation with speed normalized to m/s."""

    timestamp: datetime
    speed: float  # m/s
    direction: float  # degrees true, [0, 360)


@dataclass(frozen=True)
class PvRecord:
    """One PVWatts hourly simulation row."""

    month: int
    day: int
    hour: int
    ac_output: float  # kW
    system_rating: float  # kW (DC system size of the simulated array)


@dataclass(frozen=True)
class HourlySeries:
    """Dense hour-aligned series; ``None`` entries mark gaps.

    ``start`` is the timestamp of ``values[0]`` and consecutive entries are
    exactly one hour apart, so spacing and ordering hold by construction.
    """

    start: datetime | None
    values: tuple[float | None, ...]

    def __post_init__(self):
        if (self.start is None) != (len(self.values) == 0):
            raise ValueError("start must be None exactly when the series is empty")
        if self.start is not None and (
            self.start.minute or self.start.second or self.start.microsecond
        ):
            raise ValueError("series start must be aligned to a clock hour")

    def __len__(self) -> int:
        return len(self.values)

    def hour_of(self, index: int) -> datetime:
        if self.start is None:
            raise IndexError("empty series")
        return self.start + timedelta(hours=index)

    def present(self) -> Iterable[tuple[datetime, float]]:
        """Yield (timestamp, value) for every non-gap entry."""
        for i, v in enumerate(self.values):
            if v is not None:
                yield self.hour_of(i), v

    @property
    def n_present(self) -> int:
        return sum(1 for v in self.values if v is not None)

    @property
    def n_gaps(self) -> int:
        return len(self.values) - self.n_present


@dataclass(frozen=True)
class TypicalDayProfile:
    """Average value per clock hour (0..23) plus the sample count behind it."""

    hour_values: tuple[float, ...]
    sample_counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.hour_values) != 24 or len(self.sample_counts) != 24:
            raise ValueError("typical-day profiles carry exactly 24 hours")
        if any(c < 1 for c in self.sample_counts):
            raise ValueError("every hour needs at least one sample")


def _float_or_none(token: str, sentinel: float | None) -> float | None:
    if token == "MM":
        return None
    value = float(token)
    if sentinel is not None and value == sentinel:
        return None
    return value


def parse_ndbc(stream: io.TextIOBase | str) -> list[MeteoRecord]:
    """Parse an NDBC standard meteorological history file.

    Parameters
    ----------
    stream : text file object or str
        File content. The first non-blank line must be the column header
        (leading ``#`` tolerated); a following ``#`` line with units is
        skipped. Data rows are whitespace-delimited. Date/time columns are
        matched by name (``YY``/``YYYY``, ``MM``, ``DD``, ``hh`` and the
        optional minute column ``mm``); every other column is a channel.

    Returns
    -------
    list of MeteoRecord
        One record per row. Channel values equal to the NDBC missing-data
        sentinel for that channel (the 99.0 / 999.0 / 9999.0 family, or
        the literal ``MM``) come back as ``None``, never as the sentinel.

    Raises
    ------
    FormatError
        Empty input, unrecognizable header, or required channels missing.
        Wind speed (WSPD), wave height (WVHT) and at least one wave period
        channel (DPD or APD) must be present.
    RowParseError
        A data row with the wrong column count or a non-numeric token.
    """
    text = stream if isinstance(stream, str) else stream.read()
    raw_lines = text.splitlines()

    header_at = next((i for i, ln in enumerate(raw_lines) if ln.strip()), None)
    if header_at is None:
        raise FormatError("empty NDBC file")
    header_line = raw_lines[header_at].strip()
    first_token = header_line.split()[0].lstrip("#")
    if not (header_line.startswith("#") or first_token in _YEAR_NAMES):
        raise FormatError("NDBC header line not found")
    header = header_line.lstrip("#").split()

    data_start = header_at + 1
    if data_start < len(raw_lines) and raw_lines[data_start].strip().startswith("#"):
        data_start += 1  # units line

    # Date/time columns are matched case-sensitively: NDBC writes the month
    # as MM and the minute as mm.
    time_cols: dict[str, int] = {}
    for i, name in enumerate(header):
        if name in _YEAR_NAMES and "year" not in time_cols:
            time_cols["year"] = i
        elif name == "MM" and "month" not in time_cols:
            time_cols["month"] = i
        elif name == "DD" and "day" not in time_cols:
            time_cols["day"] = i
        elif name == "hh" and "hour" not in time_cols:
            time_cols["hour"] = i
        elif name == "mm" and "minute" not in time_cols:
            time_cols["minute"] = i
    for required in ("year", "month", "day", "hour"):
        if required not in time_cols:
            raise FormatError(f"NDBC header has no {required} column")

    channel_cols = [
        (i, header[i].upper())
        for i in range(len(header))
        if i not in time_cols.values()
    ]
    names = {name for _, name in channel_cols}
    if "WSPD" not in names:
        raise FormatError("NDBC file lacks the WSPD channel")
    if "WVHT" not in names:
        raise FormatError("NDBC file lacks the WVHT channel")
    if not names & {"DPD", "APD"}:
        raise FormatError("NDBC file lacks a wave period channel (DPD or APD)")

    records: list[MeteoRecord] = []
    for line_no, line in enumerate(raw_lines, start=1):
        if line_no - 1 < data_start or not line.strip() or line.lstrip().startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != len(header):
            raise RowParseError(
                line_no, f"expected {len(header)} columns, found {len(tokens)}"
            )
        try:
            year = int(tokens[time_cols["year"]])
            if year < 100:
                year += 1900
            minute = int(tokens[time_cols["minute"]]) if "minute" in time_cols else 0
            ts = datetime(
                year,
                int(tokens[time_cols["month"]]),
                int(tokens[time_cols["day"]]),
                int(tokens[time_cols["hour"]]),
                minute,
            )
        except ValueError as exc:
            raise RowParseError(line_no, f"bad timestamp: {exc}") from None

        fields: dict[str, float | None] = {}
        extras: dict[str, float | None] = {}
        for col, name in channel_cols:
            try:
                value = _float_or_none(tokens[col], _NDBC_SENTINELS.get(name))
            except ValueError:
                raise RowParseError(
                    line_no, f"non-numeric value {tokens[col]!r} in column {name}"
                ) from None
            if name in _CORE_CHANNELS:
                fields[_CORE_CHANNELS[name]] = value
            else:
                extras[name] = value
        records.append(MeteoRecord(timestamp=ts, extras=extras, **fields))
    return records


def render_ndbc(records: list[MeteoRecord]) -> str:
    """Serialize records back to the NDBC text layout (for round-trips)."""
    core_order = list(_CORE_CHANNELS.items())
    extra_names: list[str] = []
    for rec in records:
        for name in rec.extras:
            if name not in extra_names:
                extra_names.append(name)

    header = ["#YY", "MM", "DD", "hh", "mm"]
    header += [name for name, _ in core_order] + extra_names
    lines = [" ".join(header)]
    for rec in records:
        ts = rec.timestamp
        row = [
            f"{ts.year:04d}",
            f"{ts.month:02d}",
            f"{ts.day:02d}",
            f"{ts.hour:02d}",
            f"{ts.minute:02d}",
        ]
        for name, attr in core_order:
            row.append(_render_channel(getattr(rec, attr), name))
        for name in extra_names:
            row.append(_render_channel(rec.extras.get(name), name))
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"


def _render_channel(value: float | None, name: str) -> str:
    if value is None:
        sentinel = _NDBC_SENTINELS.get(name)
        return "MM" if sentinel is None else str(sentinel)
    return str(value)


_TS_FORMATS = ("%Y-%m-%d %H:%M", "%Y-%m-%d %H:%M:%S", "%Y/%m/%d %H:%M", "%m/%d/%Y %H:%M")


def _parse_timestamp(token: str, line_no: int) -> datetime:
    token = token.strip()
    try:
        return datetime.fromisoformat(token)
    except ValueError:
        pass
    for fmt in _TS_FORMATS:
        try:
            return datetime.strptime(token, fmt)
        except ValueError:
            continue
    raise RowParseError(line_no, f"unrecognized timestamp {token!r}")


_SPEED_FACTORS = {"knots": KNOTS_TO_MPS, "cm_per_s": 0.01, "m_per_s": 1.0}


def parse_currents(
    stream: io.TextIOBase | str, speed_unit: str = "knots"
) -> list[CurrentRecord]:
    """Parse a NOAA tidal current station CSV export.

    The first row is a header; data rows carry date-time, speed and
    direction in the first three columns. Speeds are converted to m/s
    according to ``speed_unit`` (``knots``, ``cm_per_s`` or ``m_per_s``).
    """
    if speed_unit not in _SPEED_FACTORS:
        raise ConfigError(
            f"unknown current speed unit {speed_unit!r}; "
            f"expected one of {sorted(_SPEED_FACTORS)}"
        )
    factor = _SPEED_FACTORS[speed_unit]
    text = stream if isinstance(stream, str) else stream.read()
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise FormatError("empty currents file")
    if len(rows[0]) < 3:
        raise FormatError("currents header needs at least 3 columns")

    records: list[CurrentRecord] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) < 3:
            raise RowParseError(line_no, f"expected 3 columns, found {len(row)}")
        ts = _parse_timestamp(row[0], line_no)
        try:
            speed = float(row[1])
            direction = float(row[2])
        except ValueError as exc:
            raise RowParseError(line_no, str(exc)) from None
        if speed < 0:
            raise RowParseError(line_no, f"negative current speed {speed}")
        records.append(
            CurrentRecord(
                timestamp=ts, speed=speed * factor, direction=direction % 360.0
            )
        )
    return records


def render_currents(records: list[CurrentRecord], speed_unit: str = "m_per_s") -> str:
    """Serialize current records back to the CSV layout (for round-trips)."""
    if speed_unit not in _SPEED_FACTORS:
        raise ConfigError(f"unknown current speed unit {speed_unit!r}")
    factor = _SPEED_FACTORS[speed_unit]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["Date Time", f"Speed ({speed_unit})", "Direction (degrees)"])
    for rec in records:
        writer.writerow(
            [
                rec.timestamp.strftime("%Y-%m-%d %H:%M"),
                repr(rec.speed / factor),
                repr(rec.direction),
            ]
        )
    return out.getvalue()


def parse_pvwatts(
    stream: io.TextIOBase | str, system_rating_kw: float | None = None
) -> list[PvRecord]:
    """Parse a PVWatts hourly CSV export.

    Parameters
    ----------
    stream : text file object or str
        File content: ``key,value`` metadata rows, then a header row
        starting with ``Month`` that names an AC output column in watts,
        then the hourly table.
    system_rating_kw : float, optional
        Rating of the simulated array. Required when the metadata has no
        ``DC System Size (kW)`` row; the metadata value wins otherwise.

    Returns
    -------
    list of PvRecord
        AC output converted to kW. A full simulated year is 8760 rows;
        any other count is accepted but reported via ``IngestWarning``.
    """
    text = stream if isinstance(stream, str) else stream.read()
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise FormatError("empty PVWatts file")

    meta: dict[str, str] = {}
    header: list[str] | None = None
    body_at = 0
    for i, row in enumerate(rows):
        if row and row[0].strip().lower() == "month":
            header = [cell.strip() for cell in row]
            body_at = i + 1
            break
        if len(row) >= 2:
            meta[row[0].strip()] = row[1].strip()
    if header is None:
        raise FormatError("PVWatts header row (starting with 'Month') not found")

    ac_col = next(
        (j for j, n in enumerate(header) if "ac" in n.lower() and "(w)" in n.lower()),
        None,
    )
    if ac_col is None:
        raise FormatError("PVWatts header has no AC output column in watts")
    try:
        day_col = next(j for j, n in enumerate(header) if n.lower() == "day")
        hour_col = next(j for j, n in enumerate(header) if n.lower() == "hour")
    except StopIteration:
        raise FormatError("PVWatts header lacks Day/Hour columns") from None

    rating = system_rating_kw
    for key, value in meta.items():
        if "dc system size" in key.lower():
            try:
                rating = float(value)
            except ValueError:
                raise FormatError(f"bad DC System Size value {value!r}") from None
            break
    if rating is None:
        raise ConfigError(
            "PVWatts metadata has no 'DC System Size (kW)' row and no "
            "system_rating_kw was supplied"
        )
    if rating <= 0:
        raise ParameterError(f"system rating must be positive, got {rating}")

    records: list[PvRecord] = []
    for line_no, row in enumerate(rows[body_at:], start=body_at + 1):
        if len(row) <= max(ac_col, day_col, hour_col):
            raise RowParseError(line_no, f"row has only {len(row)} cells")
        try:
            month = int(row[0])
            day = int(row[day_col])
            hour = int(row[hour_col])
            ac_w = float(row[ac_col])
        except ValueError as exc:
            raise RowParseError(line_no, str(exc)) from None
        ac_kw = ac_w / 1000.0
        if ac_kw < 0:
            raise RowParseError(line_no, f"negative AC output {ac_w} W")
        if ac_kw > rating * 1.05:
            raise RowParseError(
                line_no,
                f"AC output {ac_kw} kW exceeds system rating {rating} kW by >5%",
            )
        records.append(
            PvRecord(
                month=month, day=day, hour=hour, ac_output=ac_kw, system_rating=rating
            )
        )

    if len(records) != 8760:
        warnings.warn(
            f"PVWatts file has {len(records)} hourly rows, expected 8760",
            IngestWarning,
            stacklevel=2,
        )
    return records


def render_pvwatts(records: list[PvRecord]) -> str:
    """Serialize PV records back to the PVWatts CSV layout (for round-trips)."""
    if not records:
        raise FormatError("cannot render an empty record list")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["DC System Size (kW)", repr(records[0].system_rating)])
    writer.writerow(["Month", "Day", "Hour", "AC System Output (W)"])
    for rec in records:
        writer.writerow([rec.month, rec.day, rec.hour, repr(rec.ac_output * 1000.0)])
    return out.getvalue()


def pv_to_series(records: list[PvRecord], year: int = 2001) -> HourlySeries:
    """Attach a (non-leap) calendar year to PV records and build a series."""
    pairs = [(datetime(year, r.month, r.day, r.hour), r.ac_output) for r in records]
    pairs.sort(key=lambda p: p[0])
    return _series_from_pairs(pairs, aggregation="mean")


FieldSelector = Callable[[object], "float | None"]


def to_hourly(
    records: list, field_name: str | FieldSelector, aggregation: str = "mean"
) -> HourlySeries:
    """Aggregate timestamped records into a dense hourly series.

    ``field_name`` is an attribute name (or a callable) selecting the value
    from each record; ``None`` selections are dropped. Each clock hour with
    at least one usable observation gets one value, the mean over the hour
    or the last observation per ``aggregation``. Hours with no usable
    observation between the first and last are explicit gaps.
    """
    if aggregation not in ("mean", "last"):
        raise ConfigError(
            f"unknown aggregation {aggregation!r}; expected 'mean' or 'last'"
        )
    if callable(field_name):
        select: FieldSelector = field_name
    else:
        attr = field_name
        select = lambda rec: getattr(rec, attr)  # noqa: E731

    pairs: list[tuple[datetime, float]] = []
    last_ts: datetime | None = None
    for rec in records:
        ts = rec.timestamp
        if last_ts is not None and ts < last_ts:
            raise ValueError("records must be time-ordered")
        last_ts = ts
        value = select(rec)
        if value is not None:
            pairs.append((ts, value))
    return _series_from_pairs(pairs, aggregation)


def _series_from_pairs(
    pairs: list[tuple[datetime, float]], aggregation: str
) -> HourlySeries:
    if not pairs:
        return HourlySeries(start=None, values=())
    buckets: dict[datetime, list[float]] = {}
    for ts, value in pairs:
        hour = ts.replace(minute=0, second=0, microsecond=0)
        buckets.setdefault(hour, []).append(value)

    start = min(buckets)
    end = max(buckets)
    n = int((end - start).total_seconds() // 3600) + 1
    values: list[float | None] = []
    for i in range(n):
        obs = buckets.get(start + timedelta(hours=i))
        if obs is None:
            values.append(None)
        elif aggregation == "mean":
            values.append(sum(obs) / len(obs))
        else:
            values.append(obs[-1])
    return HourlySeries(start=start, values=tuple(values))


def typical_day(series: HourlySeries) -> TypicalDayProfile:
    """Average an hourly series by clock hour into a 24-hour profile.

    Raises
    ------
    IncompleteProfileError
        When one or more clock hours have no observation at all; the
        error lists the missing hours.
    """
    sums = [0.0] * 24
    counts = [0] * 24
    for ts, value in series.present():
        sums[ts.hour] += value
        counts[ts.hour] += 1
    missing = [h for h in range(24) if counts[h] == 0]
    if missing:
        raise IncompleteProfileError(missing)
    values = tuple(sums[h] / counts[h] for h in range(24))
    return TypicalDayProfile(hour_values=values, sample_counts=tuple(counts))


def profiles_to_doc(profiles: Mapping[str, TypicalDayProfile]) -> dict:
    """Convert named profiles to the JSON profile-document structure."""
    return {
        name: {"hours": list(p.hour_values), "samples": list(p.sample_counts)}
        for name, p in profiles.items()
    }


def doc_to_profiles(doc: Mapping) -> dict[str, TypicalDayProfile]:
    """Parse a profile document back into named profiles."""
    profiles: dict[str, TypicalDayProfile] = {}
    for name, entry in doc.items():
        try:
            hours = tuple(float(v) for v in entry["hours"])
            samples = tuple(
                int(c) for c in entry.get("samples", [1] * len(entry["hours"]))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad profile entry for {name!r}: {exc}") from None
        try:
            profiles[name] = TypicalDayProfile(hour_values=hours, sample_counts=samples)
        except ValueError as exc:
            raise FormatError(f"bad profile entry for {name!r}: {exc}") from None
    return profiles


def write_profiles_doc(profiles: Mapping[str, TypicalDayProfile], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(profiles_to_doc(profiles), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_profiles_doc(path) -> dict[str, TypicalDayProfile]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"profile document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("profile document must be a JSON object")
    return doc_to_profiles(doc)
