"""End-to-end command-line tests: exit codes, documents, determinism."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from seasizer.cli import (
    EXIT_AUDIT_FAILED,
    EXIT_INFEASIBLE,
    EXIT_LIMIT,
    EXIT_OK,
    EXIT_USAGE,
    main,
)
from seasizer.ingest import read_profiles_doc
from seasizer.report import SOLUTION_FORMAT
from seasizer.solver import set_backend

from conftest import synth_currents_year, synth_ndbc_year, synth_pvwatts_year

DEFAULT_MATRIX = (
    Path(__file__).resolve().parents[1]
    / "src" / "seasizer" / "data" / "wec_matrix_default.csv"
)

RESULT_FILES = ("solution.json", "report.txt", "report.json", "dispatch.csv")


@pytest.fixture(autouse=True)
def _restore_backend():
    """--backend mutates process-wide state; put it back after each test."""
    yield
    set_backend("auto")


def _solve(tmp_path: Path, *extra: str, scenario: str = "toy_flat_t2") -> Path:
    out = tmp_path / "out"
    code = main(["solve", "--scenario", scenario, "--out", str(out), *extra])
    assert code == EXIT_OK
    return out


def _storage_scenario_file(tmp_path: Path) -> Path:
    """Two-hour scenario where storage shifting beats buying a second unit."""
    doc = {
        "name": "storage_shift",
        "load_kw": [10.0, 30.0],
        "resources": {"owt": {"unit_generation_kw": [25.0, 20.0], "max_units": 5}},
        "storage": {"max_charge_kw": 50.0, "max_discharge_kw": 50.0},
        "costs": {
            "lifetime_years": 1.0,
            "storage_degradation_rate": 0.0,
            "resources": {
                "owt": {
                    "precommissioning": 100.0,
                    "capital": 0.0,
                    "om_per_year": 0.0,
                    "decommissioning": 0.0,
                }
            },
            "storage_per_kwh": {
                "precommissioning": 0.1,
                "capital": 0.0,
                "om_per_year": 0.0,
                "decommissioning": 0.0,
            },
        },
    }
    path = tmp_path / "storage_shift.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestSolve:
    def test_solve_builtin_writes_all_documents(self, tmp_path, capsys):
        out = _solve(tmp_path)
        stdout = capsys.readouterr().out
        assert "scenario: toy_flat_t2" in stdout
        assert "status:   optimal" in stdout
        assert "audit" not in stdout.lower() or "PASS" in stdout
        for name in RESULT_FILES:
            assert (out / name).is_file(), name

        doc = json.loads((out / "solution.json").read_text(encoding="utf-8"))
        assert doc["format"] == SOLUTION_FORMAT
        assert doc["solution"]["counts"] == {"owt": 2}
        assert doc["solution"]["objective"] == 20.0

    def test_solve_is_byte_identical_across_runs(self, tmp_path):
        first = _solve(tmp_path / "a")
        second = _solve(tmp_path / "b")
        for name in RESULT_FILES:
            assert (first / name).read_bytes() == (second / name).read_bytes(), name

    def test_solve_json_format(self, capsys):
        assert main(["solve", "--scenario", "toy_flat_t2", "--format", "json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["status"] == "optimal"
        assert doc["counts"] == {"owt": 2}
        assert doc["validation"]["objective_discrepancy"] == 0.0

    def test_solve_csv_format(self, capsys):
        assert main(["solve", "--scenario", "toy_flat_t2", "--format", "csv"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "hour,load_kw,owt_kw,charge_kw,discharge_kw,curtailment_kw,stored_kwh"
        assert len(lines) == 3  # header + two hours
        assert lines[1].split(",")[:3] == ["0", "100.0", "120.0"]

    def test_solve_scenario_from_file(self, tmp_path, capsys):
        path = _storage_scenario_file(tmp_path)
        code = main(["solve", "--scenario", str(path), "--format", "json"])
        assert code == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["counts"] == {"owt": 1}
        assert doc["storage_energy_kwh"] == pytest.approx(13.157894736842, rel=1e-9)
        assert doc["objective"] == pytest.approx(101.3157894736842, rel=1e-9)

    def test_solve_backend_flag(self, capsys):
        code = main([
            "solve", "--scenario", "toy_flat_t2", "--backend", "numpy",
            "--format", "json",
        ])
        assert code == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["diagnostics"]["backend"] == "numpy"

    def test_solve_infeasible_exit_and_hint(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["solve", "--scenario", "toy_infeasible", "--out", str(out)])
        assert code == EXIT_INFEASIBLE
        stdout = capsys.readouterr().out
        assert "no feasible build exists" in stdout
        assert "hours 1" in stdout
        assert (out / "solution.json").is_file()

    def test_solve_node_limit_exit(self, capsys):
        code = main([
            "solve", "--scenario", "baseline_offshore",
            "--node-limit", "1", "--no-seed",
        ])
        assert code == EXIT_LIMIT
        assert "status:   limit" in capsys.readouterr().out


class TestCheck:
    def _solved_doc(self, tmp_path, scenario="toy_flat_t2") -> Path:
        out = _solve(tmp_path, scenario=scenario)
        return out / "solution.json"

    def test_check_passes_fresh_solution(self, tmp_path, capsys):
        path = self._solved_doc(tmp_path)
        capsys.readouterr()
        assert main(["check", str(path)]) == EXIT_OK
        stdout = capsys.readouterr().out
        assert "audit: PASS" in stdout
        assert "objective" in stdout

    def test_check_catches_tampered_objective(self, tmp_path, capsys):
        path = self._solved_doc(tmp_path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        doc["solution"]["objective"] -= 1.0
        path.write_text(json.dumps(doc), encoding="utf-8")
        capsys.readouterr()
        assert main(["check", str(path)]) == EXIT_AUDIT_FAILED
        assert "audit: FAIL" in capsys.readouterr().out

    def test_check_catches_tampered_counts(self, tmp_path, capsys):
        path = self._solved_doc(tmp_path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        doc["solution"]["counts"]["owt"] = 1  # leaves the load uncovered
        path.write_text(json.dumps(doc), encoding="utf-8")
        capsys.readouterr()
        assert main(["check", str(path)]) == EXIT_AUDIT_FAILED

    def test_check_catches_planted_mode_overlap(self, tmp_path, capsys):
        scenario_file = _storage_scenario_file(tmp_path)
        out = tmp_path / "out"
        assert main(["solve", "--scenario", str(scenario_file), "--out", str(out)]) == EXIT_OK
        path = out / "solution.json"
        doc = json.loads(path.read_text(encoding="utf-8"))
        doc["solution"]["charge_mode"] = [1, 1]
        doc["solution"]["discharge_mode"] = [1, 1]
        path.write_text(json.dumps(doc), encoding="utf-8")
        capsys.readouterr()
        assert main(["check", str(path)]) == EXIT_AUDIT_FAILED
        assert "exclusivity" in capsys.readouterr().out

    def test_check_infeasible_document_is_fine(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["solve", "--scenario", "toy_infeasible", "--out", str(out)]) \
            == EXIT_INFEASIBLE
        capsys.readouterr()
        assert main(["check", str(out / "solution.json")]) == EXIT_OK
        assert "nothing to audit" in capsys.readouterr().out

    def test_check_rejects_non_solution_json(self, tmp_path, capsys):
        path = tmp_path / "other.json"
        path.write_text('{"format": "something-else"}', encoding="utf-8")
        assert main(["check", str(path)]) == EXIT_USAGE
        assert "not a solution document" in capsys.readouterr().err

    def test_check_rejects_missing_file(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "absent.json")]) == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err


class TestOracle:
    def test_oracle_agrees_on_toy(self, capsys):
        assert main(["oracle", "--scenario", "toy_flat_t2"]) == EXIT_OK
        assert "AGREE" in capsys.readouterr().out

    def test_oracle_agrees_on_infeasible(self, capsys):
        assert main(["oracle", "--scenario", "toy_infeasible"]) == EXIT_OK
        stdout = capsys.readouterr().out
        assert "AGREE: both report infeasible" in stdout

    def test_oracle_refuses_oversized_search_space(self, tmp_path, capsys):
        doc = {
            "name": "too_big",
            "load_kw": [0.2],
            "resources": {
                "fpv": {"unit_generation_kw": [0.3], "max_units": 1_000_000},
                "wec": {"unit_generation_kw": [120.0], "max_units": 200},
            },
            "storage": {"enabled": False},
        }
        path = tmp_path / "too_big.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["oracle", "--scenario", str(path)]) == EXIT_LIMIT
        err = capsys.readouterr().err
        assert "error:" in err and "budget" in err


class TestUsageErrors:
    def test_unknown_scenario_name(self, capsys):
        assert main(["solve", "--scenario", "no_such_scenario"]) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_bad_flag_value(self, capsys):
        assert main(["solve", "--scenario", "toy_flat_t2", "--format", "yaml"]) \
            == EXIT_USAGE
        assert "invalid choice" in capsys.readouterr().err

    def test_missing_required_argument(self, capsys):
        assert main(["solve"]) == EXIT_USAGE
        assert "required" in capsys.readouterr().err

    def test_missing_subcommand(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_profiles_missing_input_file(self, tmp_path, capsys):
        code = main([
            "profiles",
            "--ndbc", str(tmp_path / "absent.txt"),
            "--currents", str(tmp_path / "absent.csv"),
            "--pvwatts", str(tmp_path / "absent2.csv"),
        ])
        assert code == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err


@pytest.fixture(scope="module")
def raw_year(tmp_path_factory) -> dict[str, Path]:
    root = tmp_path_factory.mktemp("raw")
    files = {
        "ndbc": root / "buoy.txt",
        "currents": root / "currents.csv",
        "pvwatts": root / "pv.csv",
    }
    files["ndbc"].write_text(synth_ndbc_year(), encoding="utf-8")
    files["currents"].write_text(synth_currents_year(), encoding="utf-8")
    files["pvwatts"].write_text(synth_pvwatts_year(), encoding="utf-8")
    return files


class TestProfilesPipeline:
    def _run(self, raw_year, out_path, *extra) -> int:
        return main([
            "profiles",
            "--ndbc", str(raw_year["ndbc"]),
            "--currents", str(raw_year["currents"]),
            "--pvwatts", str(raw_year["pvwatts"]),
            "--out", str(out_path),
            *extra,
        ])

    def test_profiles_end_to_end(self, raw_year, tmp_path, capsys):
        out = tmp_path / "profiles.json"
        assert self._run(raw_year, out) == EXIT_OK
        stdout = capsys.readouterr().out
        assert stdout.splitlines()[0].startswith("hour")
        assert f"wrote {out}" in stdout

        profiles = read_profiles_doc(out)
        assert set(profiles) == {"wec", "tec", "owt", "fpv"}
        rated = {"wec": 750.0, "tec": 500.0, "owt": 8000.0, "fpv": 0.4}
        for name, profile in profiles.items():
            assert len(profile.hour_values) == 24
            assert all(0.0 <= v <= rated[name] + 1e-9 for v in profile.hour_values)
            assert all(count > 300 for count in profile.sample_counts)
        # a year of synthetic sun yields dark nights and bright middays
        assert profiles["fpv"].hour_values[0] == 0.0
        assert profiles["fpv"].hour_values[12] > 0.1

    def test_profiles_deterministic_output(self, raw_year, tmp_path):
        first = tmp_path / "one.json"
        second = tmp_path / "two.json"
        assert self._run(raw_year, first) == EXIT_OK
        assert self._run(raw_year, second) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_profiles_explicit_wec_matrix_matches_default(self, raw_year, tmp_path):
        implicit = tmp_path / "implicit.json"
        explicit = tmp_path / "explicit.json"
        assert self._run(raw_year, implicit) == EXIT_OK
        assert self._run(
            raw_year, explicit, "--wec-matrix", str(DEFAULT_MATRIX)
        ) == EXIT_OK
        assert implicit.read_bytes() == explicit.read_bytes()

    def test_profiles_average_period_channel_changes_wec(self, raw_year, tmp_path):
        dominant = tmp_path / "dom.json"
        average = tmp_path / "avg.json"
        assert self._run(raw_year, dominant) == EXIT_OK
        assert self._run(
            raw_year, average, "--wave-period-channel", "average"
        ) == EXIT_OK
        a = read_profiles_doc(dominant)["wec"].hour_values
        b = read_profiles_doc(average)["wec"].hour_values
        assert a != b
