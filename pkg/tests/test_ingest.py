"""Parser, hourly-aggregation and typical-day tests."""

from __future__ import annotations

import random
from datetime import datetime

import pytest

from seasizer.errors import (
    ConfigError,
    FormatError,
    IncompleteProfileError,
    IngestWarning,
    RowParseError,
)
from seasizer.ingest import (
    KNOTS_TO_MPS,
    CurrentRecord,
    HourlySeries,
    MeteoRecord,
    TypicalDayProfile,
    doc_to_profiles,
    parse_currents,
    parse_ndbc,
    parse_pvwatts,
    profiles_to_doc,
    pv_to_series,
    read_profiles_doc,
    render_currents,
    render_ndbc,
    render_pvwatts,
    to_hourly,
    typical_day,
    write_profiles_doc,
)


class TestParseNdbc:
    def test_values_and_sentinels(self, data_dir):
        records = parse_ndbc((data_dir / "ndbc_sample.txt").read_text())
        assert len(records) == 8
        first = records[0]
        assert first.timestamp == datetime(2022, 1, 1, 0, 0)
        assert first.wind_speed == 7.0
        assert first.sig_wave_height == 1.5
        assert first.dominant_wave_period == 8.0
        assert first.extras["WDIR"] == 180.0
        # 99.0 wind speed is the missing-data sentinel, never a value
        assert records[2].wind_speed is None
        assert records[2].gust_speed is None
        # 99.00 wave height / period sentinels
        assert records[3].sig_wave_height is None
        assert records[3].dominant_wave_period is None
        assert records[3].average_wave_period == 6.2
        assert records[3].extras["WDIR"] is None
        # extras sentinels too
        assert records[4].extras["ATMP"] is None
        assert all(r.extras["VIS"] is None for r in records)

    def test_oldstyle_header(self, data_dir):
        records = parse_ndbc((data_dir / "ndbc_oldstyle.txt").read_text())
        assert len(records) == 3
        assert records[0].timestamp == datetime(1999, 1, 1, 0, 0)
        assert records[0].wind_speed == 5.2
        assert records[0].extras["BAR"] == 1014.1

    def test_no_sentinel_survives(self, data_dir):
        sentinels = {99.0, 999.0, 9999.0}
        for name in ("ndbc_sample.txt", "ndbc_oldstyle.txt"):
            for rec in parse_ndbc((data_dir / name).read_text()):
                for value in (
                    rec.wind_speed,
                    rec.gust_speed,
                    rec.sig_wave_height,
                    rec.dominant_wave_period,
                    rec.average_wave_period,
                ):
                    assert value not in sentinels
                for channel, value in rec.extras.items():
                    if value is not None and channel not in ("PRES", "BAR"):
                        assert value not in sentinels

    def test_empty_file_is_format_error(self):
        with pytest.raises(FormatError):
            parse_ndbc("")
        with pytest.raises(FormatError):
            parse_ndbc("\n   \n")

    def test_missing_required_channel(self):
        text = "#YY MM DD hh mm WDIR WSPD GST DPD APD\n2022 01 01 00 00 180 7.0 9.0 8.0 6.0\n"
        with pytest.raises(FormatError, match="WVHT"):
            parse_ndbc(text)
        text = "#YY MM DD hh mm WSPD WVHT\n2022 01 01 00 00 7.0 1.5\n"
        with pytest.raises(FormatError, match="period"):
            parse_ndbc(text)

    def test_bad_rows(self):
        head = "#YY MM DD hh mm WSPD WVHT DPD\n"
        with pytest.raises(RowParseError, match="columns"):
            parse_ndbc(head + "2022 01 01 00 00 7.0 1.5\n")
        with pytest.raises(RowParseError, match="non-numeric"):
            parse_ndbc(head + "2022 01 01 00 00 abc 1.5 8.0\n")
        with pytest.raises(RowParseError, match="timestamp"):
            parse_ndbc(head + "2022 13 01 00 00 7.0 1.5 8.0\n")

    @pytest.mark.parametrize("name", ["ndbc_sample.txt", "ndbc_oldstyle.txt"])
    def test_round_trip(self, data_dir, name):
        once = parse_ndbc((data_dir / name).read_text())
        again = parse_ndbc(render_ndbc(once))
        assert once == again

    def test_round_trip_random_files(self):
        rng = random.Random(20240817)
        channels = ["WDIR", "WSPD", "GST", "WVHT", "DPD", "APD", "ATMP"]
        for _ in range(25):
            lines = ["#YY MM DD hh mm " + " ".join(channels)]
            for hour in range(rng.randrange(1, 30)):
                row = [f"2023 02 {1 + hour // 24:02d} {hour % 24:02d} 00"]
                for ch in channels:
                    if rng.random() < 0.15:
                        row.append({"WDIR": "999", "ATMP": "999.0"}.get(ch, "99.00"))
                    else:
                        row.append(str(round(rng.uniform(0.1, 30.0), 2)))
                lines.append(" ".join(row))
            once = parse_ndbc("\n".join(lines))
            assert parse_ndbc(render_ndbc(once)) == once


class TestParseCurrents:
    def test_knots_conversion(self, data_dir):
        records = parse_currents((data_dir / "currents_sample.csv").read_text())
        assert len(records) == 10
        assert records[0].timestamp == datetime(2022, 1, 1, 0, 0)
        assert records[0].speed == pytest.approx(2.0 * KNOTS_TO_MPS)
        assert records[0].speed == pytest.approx(1.028888)
        assert records[0].direction == 145.0

    def test_other_units(self):
        text = "t,s,d\n2022-01-01 00:00,150,90\n"
        assert parse_currents(text, speed_unit="cm_per_s")[0].speed == pytest.approx(1.5)
        assert parse_currents(text, speed_unit="m_per_s")[0].speed == 150.0
        with pytest.raises(ConfigError):
            parse_currents(text, speed_unit="furlongs")

    def test_direction_normalized(self):
        text = "t,s,d\n2022-01-01 00:00,1.0,360\n2022-01-01 00:06,1.0,395.5\n"
        records = parse_currents(text, speed_unit="m_per_s")
        assert records[0].direction == 0.0
        assert records[1].direction == pytest.approx(35.5)
        assert all(0 <= r.direction < 360 for r in records)

    def test_bad_rows(self):
        with pytest.raises(RowParseError, match="negative"):
            parse_currents("t,s,d\n2022-01-01 00:00,-1.0,90\n", speed_unit="m_per_s")
        with pytest.raises(RowParseError, match="timestamp"):
            parse_currents("t,s,d\nnot-a-date,1.0,90\n")
        with pytest.raises(FormatError):
            parse_currents("")

    def test_round_trip(self, data_dir):
        once = parse_currents((data_dir / "currents_sample.csv").read_text())
        again = parse_currents(render_currents(once), speed_unit="m_per_s")
        assert once == again


class TestParsePvwatts:
    def test_fixture_values(self, data_dir):
        text = (data_dir / "pvwatts_sample.csv").read_text()
        with pytest.warns(IngestWarning, match="8760"):
            records = parse_pvwatts(text)
        assert len(records) == 48
        assert all(r.system_rating == 4000.0 for r in records)
        noon = next(r for r in records if r.day == 1 and r.hour == 12)
        assert noon.ac_output == pytest.approx(3200.0)  # 3200000 W
        night = next(r for r in records if r.day == 1 and r.hour == 0)
        assert night.ac_output == 0.0

    def test_full_year_no_warning(self, pvwatts_year_text, recwarn):
        records = parse_pvwatts(pvwatts_year_text)
        assert len(records) == 8760
        assert not [w for w in recwarn.list if issubclass(w.category, IngestWarning)]
        assert max(r.ac_output for r in records) <= 4000.0 * 1.05

    def test_rating_from_argument(self):
        text = 'Month,Day,Hour,AC System Output (W)\n1,1,0,500\n'
        with pytest.warns(IngestWarning):
            records = parse_pvwatts(text, system_rating_kw=2.0)
        assert records[0].ac_output == 0.5
        assert records[0].system_rating == 2.0

    def test_rating_required(self):
        text = 'Month,Day,Hour,AC System Output (W)\n1,1,0,500\n'
        with pytest.raises(ConfigError, match="DC System Size"):
            parse_pvwatts(text)

    def test_format_errors(self):
        with pytest.raises(FormatError):
            parse_pvwatts("")
        with pytest.raises(FormatError, match="Month"):
            parse_pvwatts('"a","b"\n"c","d"\n', system_rating_kw=1.0)
        with pytest.raises(FormatError, match="AC output"):
            parse_pvwatts("Month,Day,Hour,DC Output\n1,1,0,5\n", system_rating_kw=1.0)

    def test_implausible_output_rejected(self):
        text = (
            '"DC System Size (kW)","1"\n'
            "Month,Day,Hour,AC System Output (W)\n1,1,0,2000\n"
        )
        with pytest.raises(RowParseError, match="exceeds"):
            parse_pvwatts(text)

    def test_round_trip(self, data_dir):
        text = (data_dir / "pvwatts_sample.csv").read_text()
        with pytest.warns(IngestWarning):
            once = parse_pvwatts(text)
        with pytest.warns(IngestWarning):
            again = parse_pvwatts(render_pvwatts(once))
        assert once == again


class TestToHourly:
    def test_six_minute_mean(self, data_dir):
        records = parse_currents((data_dir / "currents_sample.csv").read_text())
        series = to_hourly(records, "speed", aggregation="mean")
        assert series.start == datetime(2022, 1, 1, 0, 0)
        assert len(series) == 3
        expected_h0 = (2.0 + 1.5 + 1.25 + 0.75 + 0.5 + 0.25) / 6 * KNOTS_TO_MPS
        assert series.values[0] == pytest.approx(expected_h0)
        assert series.values[1] == pytest.approx(1.5 * KNOTS_TO_MPS)
        assert series.values[2] == pytest.approx(2.5 * KNOTS_TO_MPS)
        assert series.n_gaps == 0

    def test_last_aggregation(self, data_dir):
        records = parse_currents((data_dir / "currents_sample.csv").read_text())
        series = to_hourly(records, "speed", aggregation="last")
        assert series.values[0] == pytest.approx(0.25 * KNOTS_TO_MPS)

    def test_gaps_and_missing_values(self, data_dir):
        records = parse_ndbc((data_dir / "ndbc_sample.txt").read_text())
        series = to_hourly(records, "wind_speed")
        # hours 0..7; hour 2 has only a sentinel value, hour 6 has no row
        assert len(series) == 8
        assert series.values[2] is None
        assert series.values[6] is None
        assert series.n_gaps == 2
        assert series.values[5] == pytest.approx((6.9 + 7.1) / 2)

    def test_unordered_records_rejected(self):
        records = [
            CurrentRecord(datetime(2022, 1, 1, 1), 1.0, 0.0),
            CurrentRecord(datetime(2022, 1, 1, 0), 1.0, 0.0),
        ]
        with pytest.raises(ValueError, match="time-ordered"):
            to_hourly(records, "speed")

    def test_unknown_aggregation(self):
        with pytest.raises(ConfigError):
            to_hourly([], "speed", aggregation="median")

    def test_empty(self):
        series = to_hourly([], "speed")
        assert len(series) == 0 and series.start is None

    def test_callable_selector(self, data_dir):
        records = parse_ndbc((data_dir / "ndbc_sample.txt").read_text())
        series = to_hourly(records, lambda r: r.extras["WDIR"])
        assert series.values[0] == 180.0
        assert series.values[3] is None  # 999 sentinel

    def test_series_alignment_invariants(self):
        with pytest.raises(ValueError, match="aligned"):
            HourlySeries(start=datetime(2022, 1, 1, 0, 30), values=(1.0,))
        with pytest.raises(ValueError, match="empty"):
            HourlySeries(start=datetime(2022, 1, 1), values=())


class TestTypicalDay:
    def _series(self, days: int, base: float = 10.0) -> HourlySeries:
        values = []
        for d in range(days):
            for h in range(24):
                values.append(base + h + 0.5 * d)
        return HourlySeries(start=datetime(2022, 3, 1, 0), values=tuple(values))

    def test_hour_of_day_means(self):
        profile = typical_day(self._series(days=4))
        assert profile.sample_counts == (4,) * 24
        # mean over d of base + h + 0.5 d = base + h + 0.75
        for h in range(24):
            assert profile.hour_values[h] == pytest.approx(10.0 + h + 0.75)

    def test_missing_hours_reported(self):
        values = [1.0 if h != 5 and h != 17 else None for h in range(24)]
        series = HourlySeries(start=datetime(2022, 3, 1, 0), values=tuple(values))
        with pytest.raises(IncompleteProfileError) as err:
            typical_day(series)
        assert err.value.missing_hours == [5, 17]

    def test_day_permutation_invariance(self):
        rng = random.Random(7)
        days = []
        for d in range(6):
            days.append([rng.uniform(0, 100) for _ in range(24)])
        flat = [v for day in days for v in day]
        base = typical_day(
            HourlySeries(start=datetime(2022, 3, 1, 0), values=tuple(flat))
        )
        for _ in range(5):
            rng.shuffle(days)
            flat = [v for day in days for v in day]
            shuffled = typical_day(
                HourlySeries(start=datetime(2022, 3, 1, 0), values=tuple(flat))
            )
            assert shuffled.sample_counts == base.sample_counts
            for a, b in zip(shuffled.hour_values, base.hour_values):
                assert a == pytest.approx(b, rel=1e-12)

    def test_full_year_pipeline(self, ndbc_year_text):
        records = parse_ndbc(ndbc_year_text)
        assert len(records) == 8760
        profile = typical_day(to_hourly(records, "wind_speed"))
        assert profile.sample_counts == (365,) * 24
        # diurnal sinusoid survives the averaging
        assert profile.hour_values[6] == max(profile.hour_values)

    def test_gappy_year_still_complete(self):
        from conftest import synth_ndbc_year

        records = parse_ndbc(synth_ndbc_year(with_gaps=True))
        series = to_hourly(records, "wind_speed")
        assert series.n_gaps > 0
        profile = typical_day(series)
        assert min(profile.sample_counts) > 300
        assert min(profile.sample_counts) < 365


class TestProfilesDoc:
    def test_doc_round_trip(self, tmp_path):
        profile = TypicalDayProfile(
            hour_values=tuple(float(h) for h in range(24)),
            sample_counts=tuple(range(1, 25)),
        )
        path = tmp_path / "profiles.json"
        write_profiles_doc({"owt": profile, "load": profile}, path)
        loaded = read_profiles_doc(path)
        assert loaded == {"owt": profile, "load": profile}

    def test_doc_shape(self):
        profile = TypicalDayProfile((1.0,) * 24, (3,) * 24)
        doc = profiles_to_doc({"wec": profile})
        assert set(doc["wec"]) == {"hours", "samples"}
        assert len(doc["wec"]["hours"]) == 24
        assert doc_to_profiles(doc)["wec"] == profile

    def test_bad_docs(self, tmp_path):
        with pytest.raises(FormatError):
            doc_to_profiles({"x": {"hours": [1.0] * 23}})
        with pytest.raises(FormatError):
            doc_to_profiles({"x": {"nope": []}})
        bad = tmp_path / "bad.json"
        bad.write_text("[1, 2]")
        with pytest.raises(FormatError):
            read_profiles_doc(bad)

    def test_pv_series_helper(self, data_dir):
        text = (data_dir / "pvwatts_sample.csv").read_text()
        with pytest.warns(IngestWarning):
            records = parse_pvwatts(text)
        series = pv_to_series(records)
        assert len(series) == 48
        assert series.start == datetime(2001, 1, 1, 0)
        assert series.values[12] == pytest.approx(3200.0)
