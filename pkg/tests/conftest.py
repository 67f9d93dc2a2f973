"""Shared fixtures: fixture-file paths and synthetic full-year datasets."""

from __future__ import annotations

import math
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


def synth_ndbc_year(with_gaps: bool = False) -> str:
    """One synthetic year of hourly buoy rows (8760), smooth and seasonal."""
    lines = [
        "#YY  MM DD hh mm WDIR WSPD GST WVHT DPD APD",
        "#yr  mo dy hr mn degT m/s m/s m sec sec",
    ]
    from datetime import datetime, timedelta

    t0 = datetime(2022, 1, 1, 0, 0)
    for k in range(8760):
        ts = t0 + timedelta(hours=k)
        doy = k / 24.0
        wind = 6.0 + 2.5 * math.sin(2 * math.pi * doy / 365.0) + 1.5 * math.sin(
            2 * math.pi * ts.hour / 24.0
        )
        hs = 1.6 + 0.8 * math.sin(2 * math.pi * (doy + 40) / 365.0) + 0.3 * math.sin(
            2 * math.pi * ts.hour / 24.0 + 1.0
        )
        dpd = 7.5 + 1.5 * math.sin(2 * math.pi * doy / 365.0 + 0.5)
        if with_gaps and k % 97 == 13:
            wspd_tok, wvht_tok = "99.0", "99.00"
        else:
            wspd_tok, wvht_tok = f"{wind:.1f}", f"{hs:.2f}"
        lines.append(
            f"{ts.year} {ts.month:02d} {ts.day:02d} {ts.hour:02d} {ts.minute:02d} "
            f"{180 + (k % 20)} {wspd_tok} {wind + 1.8:.1f} {wvht_tok} {dpd:.2f} {dpd - 1.2:.2f}"
        )
    return "\n".join(lines) + "\n"


def synth_currents_year() -> str:
    """One synthetic year of six-minute tidal current rows (semidiurnal)."""
    from datetime import datetime, timedelta

    rows = ["Date Time,Speed (knots),Direction (degrees true)"]
    t0 = datetime(2022, 1, 1, 0, 0)
    n = 365 * 24 * 10
    for k in range(n):
        ts = t0 + timedelta(minutes=6 * k)
        hours = 6 * k / 60.0
        speed = abs(3.1 * math.sin(2 * math.pi * hours / 12.42))
        direction = 145.0 if math.sin(2 * math.pi * hours / 12.42) >= 0 else 325.0
        rows.append(f"{ts.strftime('%Y-%m-%d %H:%M')},{speed:.2f},{direction}")
    return "\n".join(rows) + "\n"


def synth_pvwatts_year() -> str:
    """One synthetic PVWatts year (8760 rows) for a 4000 kW reference system."""
    days_in_month = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31]
    lines = [
        '"Requested Location","synthetic offshore site"',
        '"DC System Size (kW)","4000"',
        '"Month","Day","Hour","AC System Output (W)"',
    ]
    doy = 0
    for month, ndays in enumerate(days_in_month, start=1):
        for day in range(1, ndays + 1):
            doy += 1
            season = 0.75 + 0.25 * math.sin(2 * math.pi * (doy - 80) / 365.0)
            for hour in range(24):
                sun = max(0.0, math.sin(math.pi * (hour - 6) / 12.0))
                ac_w = int(round(3_300_000 * season * sun))
                lines.append(f"{month},{day},{hour},{ac_w}")
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def ndbc_year_text() -> str:
    return synth_ndbc_year()


@pytest.fixture(scope="session")
def currents_year_text() -> str:
    return synth_currents_year()


@pytest.fixture(scope="session")
def pvwatts_year_text() -> str:
    return synth_pvwatts_year()
