#!/usr/bin/env python3
"""Generate a synthetic year of raw input files for the profiles pipeline.

Writes standard-format buoy meteorology, current observations, and hourly
PV output covering a full year, so the ``profiles`` subcommand can be
exercised without any external downloads.  The voyage of a data point:

    make_sample_data.py --> seasizer profiles --> scenario --> seasizer solve

Everything is deterministic for a given seed.
"""

from __future__ import annotations

import argparse
import math
import random
from datetime import datetime, timedelta
from pathlib import Path


def render_ndbc_year(year: int, rng: random.Random) -> str:
    lines = [
        "#YY  MM DD hh mm WDIR WSPD GST  WVHT   DPD   APD MWD   PRES  ATMP  WTMP  DEWP  VIS  TIDE",
        "#yr  mo dy hr mn degT m/s  m/s     m   sec   sec degT   hPa  degC  degC  degC  nmi    ft",
    ]
    start = datetime(year, 1, 1)
    for k in range(8760):
        stamp = start + timedelta(hours=k)
        day_of_year = stamp.timetuple().tm_yday
        seasonal = math.sin(2.0 * math.pi * (day_of_year - 105) / 365.0)
        diurnal = math.sin(2.0 * math.pi * (stamp.hour - 14) / 24.0)
        wspd = max(0.0, 8.5 + 3.0 * seasonal + 1.5 * diurnal + rng.gauss(0.0, 0.8))
        wvht = max(0.1, 2.2 + 1.1 * seasonal + 0.3 * diurnal + rng.gauss(0.0, 0.25))
        dpd = min(14.0, max(4.0, 8.0 + 2.0 * seasonal + rng.gauss(0.0, 0.6)))
        apd = max(3.0, dpd - 1.5 + rng.gauss(0.0, 0.3))
        wdir = (230 + int(40 * seasonal) + rng.randint(-15, 15)) % 360
        lines.append(
            f"{stamp.year} {stamp.month:02d} {stamp.day:02d} {stamp.hour:02d} 00 "
            f"{wdir:3d} {wspd:4.1f} {wspd + 1.8:4.1f} {wvht:5.2f} {dpd:5.2f} {apd:5.2f} "
            f"{wdir:3d} 1013.2 15.0 14.2 11.0 99.0 99.00"
        )
    return "\n".join(lines) + "\n"


def render_currents_year(year: int, rng: random.Random) -> str:
    lines = ["timestamp,speed_knots,direction_deg"]
    start = datetime(year, 1, 1)
    # Semidiurnal tide sampled every 20 minutes.
    for k in range(8760 * 3):
        stamp = start + timedelta(minutes=20 * k)
        hours = k / 3.0
        speed = abs(3.1 * math.sin(2.0 * math.pi * hours / 12.42)) + rng.uniform(0.0, 0.15)
        direction = (45.0 + 180.0 * (math.sin(2.0 * math.pi * hours / 12.42) < 0)) % 360.0
        lines.append(f"{stamp.isoformat(sep=' ')},{speed:.2f},{direction:.0f}")
    return "\n".join(lines) + "\n"


def render_pvwatts_year(year: int, rng: random.Random, rating_kw: float = 4000.0) -> str:
    lines = [
        '"Requested Location","sample point offshore"',
        '"DC System Size (kW)","%g"' % rating_kw,
        '"Module Type","Standard"',
        '"Array Type","Fixed (open rack)"',
        '"Month","Day","Hour","Beam Irradiance (W/m^2)","AC System Output (W)"',
    ]
    start = datetime(year, 1, 1)
    for k in range(8760):
        stamp = start + timedelta(hours=k)
        day_of_year = stamp.timetuple().tm_yday
        seasonal = 0.75 + 0.25 * math.sin(2.0 * math.pi * (day_of_year - 80) / 365.0)
        solar = max(0.0, math.sin(math.pi * (stamp.hour - 6) / 12.0)) if 6 <= stamp.hour <= 18 else 0.0
        ac_w = rating_kw * 1000.0 * 0.82 * seasonal * solar * rng.uniform(0.92, 1.0)
        beam = 950.0 * solar * seasonal
        lines.append(
            f'{stamp.month},{stamp.day},{stamp.hour},{beam:.0f},{ac_w:.0f}'
        )
    return "\n".join(lines) + "\n"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="data_samples")
    parser.add_argument("--year", type=int, default=2022)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    (out / "ndbc_year.txt").write_text(render_ndbc_year(args.year, rng), encoding="utf-8")
    (out / "currents_year.csv").write_text(render_currents_year(args.year, rng), encoding="utf-8")
    (out / "pvwatts_year.csv").write_text(render_pvwatts_year(args.year, rng), encoding="utf-8")
    print(f"wrote {out}/ndbc_year.txt, currents_year.csv, pvwatts_year.csv")
    print(
        "try: seasizer profiles "
        f"--ndbc {out}/ndbc_year.txt --currents {out}/currents_year.csv "
        f"--pvwatts {out}/pvwatts_year.csv --out {out}/profiles.json"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
