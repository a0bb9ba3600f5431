#!/usr/bin/env python3
"""
Scenario runner tests
Result tables, metadata, summaries and reproducibility of written files
"""

import numpy as np
import pytest
import yaml

from errors import ConfigError, TruncationOverflowError
from scenarios.config import get_builtin, load_scenario_file, parse_scenario
from scenarios.runner import ScenarioRunner, generate_builtins, list_scenarios, series_to_csv
from tests.mocks import coherent_series
from tests.test_helpers import column_as_float, read_series_csv


def load_yaml(path):
    with open(path) as f:
        return yaml.safe_load(f)


@pytest.fixture
def mock_runner(mock_manager):
    return ScenarioRunner(max_concurrent=2, manager=mock_manager)


@pytest.mark.unit
class TestSeriesTable:

    def test_header_and_undefined_g2(self, onephoton_params, standard_train, first_pulse_cfg):
        series = coherent_series(onephoton_params, standard_train, first_pulse_cfg)
        lines = series_to_csv(series).splitlines()
        assert lines[0] == "t,mean_n,g2,P0,P1,P2,P3,P4,P5,variance_n,envelope"
        assert len(lines) == len(series) + 1
        # g2 is undefined in the dark tail before the pulse
        assert lines[1].split(",")[2] == ""

    def test_ensemble_columns(self, onephoton_params, standard_train, first_pulse_cfg):
        series = coherent_series(onephoton_params, standard_train, first_pulse_cfg)
        series.mean_n_stderr = np.full(len(series), 0.01)
        series.g2_stderr = np.full(len(series), np.nan)
        series.failures = np.zeros(len(series), dtype=int)
        header, first = series_to_csv(series).splitlines()[:2]
        assert header.endswith("envelope,mean_n_stderr,g2_stderr,failures")
        assert first.endswith(",0.01,,0")


@pytest.mark.integration
class TestMockRuns:

    async def test_single_run_outputs(self, mock_runner, tiny_scenario_document, results_dir):
        report = await mock_runner.run(parse_scenario(tiny_scenario_document))
        csv_path = results_dir / "tiny__master-equation.csv"
        meta_path = results_dir / "tiny__master-equation.meta.yaml"
        assert report.files == [csv_path, meta_path]
        assert report.summary_path == results_dir / "tiny__summary.yaml"

        columns = read_series_csv(csv_path)
        assert list(columns) == ["t", "mean_n", "g2", "P0", "P1", "P2", "P3", "variance_n", "envelope"]
        times = column_as_float(columns, "t")
        assert times[0] == 0.0 and times[-1] == pytest.approx(3.0)
        assert np.isnan(column_as_float(columns, "g2")[0])

        meta = load_yaml(meta_path)
        assert meta["scenario"] == "tiny"
        assert meta["solver"] == "master-equation"
        assert meta["parameters"]["system"]["dim"] == 8
        assert meta["parameters"]["pulses"]["count"] == 2
        assert meta["diagnostics"]["dim"] == 8
        assert "wall_clock_seconds" not in meta["diagnostics"]
        assert "trajectories" not in meta
        assert meta["code_version"]
        assert meta["selectivity"] == {"gamma_T": pytest.approx(0.4), "chi_T": pytest.approx(6.0),
                                       "tau_gamma": pytest.approx(5.5), "warnings": []}

        summary = load_yaml(report.summary_path)
        assert summary["solvers"] == ["master-equation"]
        assert summary["runs"][0]["max_p1"] == pytest.approx(report.summaries[0].max_p1)
        assert summary["runs"][0]["wall_clock_seconds"] == 0.01

    async def test_selectivity_warnings_recorded(self, mock_runner, tiny_scenario_document, results_dir):
        pulses = dict(tiny_scenario_document["pulses"], width_T=1.5)
        await mock_runner.run(parse_scenario(dict(tiny_scenario_document, pulses=pulses)))
        selectivity = load_yaml(results_dir / "tiny__master-equation.meta.yaml")["selectivity"]
        assert selectivity["gamma_T"] == pytest.approx(1.5)
        assert len(selectivity["warnings"]) == 1
        assert selectivity["warnings"][0].startswith("Pulse longer than photon lifetime")

    async def test_both_solvers(self, mock_runner, tiny_scenario_document, results_dir):
        scenario = parse_scenario(dict(tiny_scenario_document, solver="both"))
        report = await mock_runner.run(scenario)
        assert [s.solver for s in report.summaries] == ["master-equation", "trajectories"]
        assert len(report.files) == 4

        columns = read_series_csv(results_dir / "tiny__trajectories.csv")
        assert {"mean_n_stderr", "g2_stderr", "failures"} <= set(columns)
        meta = load_yaml(results_dir / "tiny__trajectories.meta.yaml")
        assert meta["trajectories"] == {"n_traj": 20, "seed": 7, "chunk_size": 250}

    async def test_sweep_outputs(self, mock_runner, tiny_sweep_document, results_dir):
        report = await mock_runner.run(parse_scenario(tiny_sweep_document))
        for value in (0.0, 0.05, 0.1):
            assert (results_dir / f"tiny-sweep__n_th={value}__master-equation.csv").exists()
        summary = load_yaml(report.summary_path)
        curve = summary["sweep_curve"]["master-equation"]
        assert [point["value"] for point in curve] == [0.0, 0.05, 0.1]
        assert [run["sweep_value"] for run in summary["runs"]] == [0.0, 0.05, 0.1]
        assert summary["runs"][1]["sweep_path"] == "system.n_th"

    async def test_unavailable_solver_is_config_error(self, mock_runner, mock_manager, tiny_scenario_document):
        mock_manager.solvers["trajectories"].is_available = False
        scenario = parse_scenario(dict(tiny_scenario_document, solver="trajectories"))
        with pytest.raises(ConfigError, match="not available"):
            await mock_runner.run(scenario)

    async def test_rejected_parameters_are_config_error(self, mock_runner, tiny_scenario_document):
        document = dict(tiny_scenario_document, system={"chi": 15, "dim": 61})
        with pytest.raises(ConfigError, match="Invalid parameters"):
            await mock_runner.run(parse_scenario(document))

    async def test_numerical_error_names_the_point(self, mock_runner, mock_manager, tiny_scenario_document,
                                                   results_dir):
        mock_manager.solvers["master-equation"].fail_with = TruncationOverflowError(
            "top levels populated", diagnostics={"dim": 8})
        with pytest.raises(TruncationOverflowError) as info:
            await mock_runner.run(parse_scenario(tiny_scenario_document))
        assert str(info.value).startswith("tiny (master-equation): top levels populated")
        assert info.value.diagnostics == {"dim": 8}
        assert not (results_dir / "tiny__summary.yaml").exists()
        assert mock_manager.solvers["master-equation"].error_count == 1

    async def test_rerun_is_byte_identical(self, mock_runner, tiny_scenario_document, results_dir):
        scenario = parse_scenario(dict(tiny_scenario_document, solver="both"))
        first = await mock_runner.run(scenario)
        contents = {path: path.read_bytes() for path in first.files}
        second = await mock_runner.run(scenario)
        assert {path: path.read_bytes() for path in second.files} == contents
        assert not list(results_dir.glob(".*.tmp"))


@pytest.mark.integration
class TestRealSolvers:

    async def test_tiny_scenario_with_both_solvers(self, tiny_scenario_document, results_dir):
        scenario = parse_scenario(dict(tiny_scenario_document, solver="both"))
        runner = ScenarioRunner(max_concurrent=2)
        first = await runner.run(scenario)

        me = read_series_csv(results_dir / "tiny__master-equation.csv")
        assert len(me["t"]) == 61
        meta = load_yaml(results_dir / "tiny__master-equation.meta.yaml")
        assert meta["diagnostics"]["integrator"] == "rk4-interaction"
        assert meta["diagnostics"]["max_trace_drift_rate"] < 1e-8
        traj_meta = load_yaml(results_dir / "tiny__trajectories.meta.yaml")
        assert traj_meta["diagnostics"]["n_traj"] == 20

        contents = {path: path.read_bytes() for path in first.files}
        second = await ScenarioRunner(max_concurrent=1).run(scenario)
        assert {path: path.read_bytes() for path in second.files} == contents


@pytest.mark.unit
class TestCatalog:

    def test_list_scenarios(self):
        catalog = {entry["name"]: entry for entry in list_scenarios()}
        assert len(catalog) == 13
        assert catalog["fig6a"]["dim"] == 20
        assert catalog["fig1-onephoton"]["dim"] == "auto"
        assert catalog["fig1-twophoton"]["resonance_order"] == 2
        assert catalog["fig3-sweep"]["sweep"]["path"] == "system.n_th"
        assert "sweep" not in catalog["fig4a"]

    def test_generate_builtins(self, isolated_temp_dir):
        written = generate_builtins(isolated_temp_dir / "scenarios")
        assert len(written) == 13
        path = isolated_temp_dir / "scenarios" / "fig2-twophoton.yaml"
        assert path in written
        assert load_scenario_file(path) == get_builtin("fig2-twophoton")
