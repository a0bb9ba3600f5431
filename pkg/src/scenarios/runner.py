#!/usr/bin/env python3
"""
Scenario Runner Module
Runs scenarios through the registered solvers and writes time series, metadata and summaries
"""

import asyncio
import csv
import io
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import yaml

from config import DEFAULT_MAX_CONCURRENT, SOLVERS
from drive.pulse import validate_selectivity
from errors import ConfigError, NumericalError
from observables.series import ObservableSeries
from scenarios.config import (
    Scenario,
    ScenarioPoint,
    builtin_document,
    get_builtin,
    list_builtin_names,
)
from scenarios.summary import RunSummary, to_plain, summarize, sweep_curve
from solvers.core import SolverManager
from solvers.implementations.master_equation import MasterEquationSolver
from solvers.implementations.trajectories import TrajectorySolver

logger = logging.getLogger(__name__)

CODE_VERSION = "1.0.0"  # keep in step with the package __version__


def _format(value: float) -> str:
    return format(float(value), ".12g")


def _optional_format(value: float) -> str:
    return "" if np.isnan(value) else _format(value)


def write_atomic(path: Path, text: str):
    """Write via a temporary file in the target directory, then rename"""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def series_to_csv(series: ObservableSeries) -> str:
    """
    One row per sample: t, mean_n, g2 (empty when undefined), P0..Pk, variance_n, f(t)

    Ensemble runs add standard-error and failure columns.
    """
    k = series.report_count
    header = ["t", "mean_n", "g2"] + [f"P{n}" for n in range(k + 1)] + ["variance_n", "envelope"]
    ensemble = series.mean_n_stderr is not None
    if ensemble:
        header += ["mean_n_stderr", "g2_stderr", "failures"]

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for i in range(len(series)):
        row = [_format(series.times[i]), _format(series.mean_n[i]), _optional_format(series.g2[i])]
        row += [_format(value) for value in series.populations[i]]
        row += [_format(series.variance_n[i]), _format(series.envelope[i])]
        if ensemble:
            row += [_optional_format(series.mean_n_stderr[i]),
                    _optional_format(series.g2_stderr[i]),
                    str(int(series.failures[i]))]
        writer.writerow(row)
    return buffer.getvalue()


def _dump(document: Dict[str, Any]) -> str:
    return yaml.safe_dump(to_plain(document), sort_keys=False, default_flow_style=False)


@dataclass
class RunReport:
    """Everything one scenario run produced"""
    scenario: str
    summaries: List[RunSummary] = field(default_factory=list)
    files: List[Path] = field(default_factory=list)
    summary_path: Optional[Path] = None


class ScenarioRunner:
    """Runs scenarios with explicit solver selection (no fallbacks)"""

    def __init__(self, max_concurrent: int = DEFAULT_MAX_CONCURRENT, manager: Optional[SolverManager] = None):
        self.max_concurrent = max_concurrent
        self.manager = manager
        self._initialized = manager is not None

    async def initialize(self):
        """Create the solver manager and register the solvers"""
        self.manager = SolverManager()

        master_equation = MasterEquationSolver(name="master-equation")
        trajectories = TrajectorySolver(
            name="trajectories",
            chunk_size=SOLVERS['trajectories']['chunk_size'],
            max_concurrent=SOLVERS['trajectories']['max_concurrent'],
        )

        self.manager.register_solver(master_equation)
        self.manager.register_solver(trajectories)

        await self.manager.initialize(SOLVERS)
        self._initialized = True
        logger.info("Scenario runner initialized")

    def _stem(self, scenario: Scenario, point: ScenarioPoint) -> str:
        if scenario.sweep is None:
            return scenario.name
        return f"{scenario.name}__{scenario.sweep.key}={point.sweep_value}"

    async def _run_point(self, scenario: Scenario, point: ScenarioPoint, solver: str,
                         semaphore: asyncio.Semaphore) -> tuple[RunSummary, List[Path]]:
        cfg = point.trajectories if solver == "trajectories" else point.evolution
        selectivity = validate_selectivity(point.train, point.params)
        async with semaphore:
            logger.info(f"Running {point.label} with {solver} (dim={point.params.dim})")
            try:
                result, error = await self.manager.solve_with_solver(solver, point.params, point.train, cfg)
            except NumericalError as e:
                raise type(e)(f"{point.label} ({solver}): {e}", diagnostics=e.diagnostics) from e

        if result is None:
            raise ConfigError(f"{point.label}: {error}")

        summary = summarize(
            result.series,
            point.train,
            point.params,
            point.evolution.t_end,
            scenario=scenario.name,
            solver=solver,
            diagnostics=result.diagnostics,
            sweep_path=scenario.sweep.path if scenario.sweep else None,
            sweep_value=point.sweep_value,
        )

        directory = scenario.output.directory
        stem = f"{self._stem(scenario, point)}__{solver}"
        csv_path = directory / f"{stem}.csv"
        meta_path = directory / f"{stem}.meta.yaml"

        metadata = {
            "scenario": scenario.name,
            "description": scenario.description,
            "solver": solver,
            "sweep": {"path": scenario.sweep.path, "value": point.sweep_value} if scenario.sweep else None,
            "parameters": point.resolved,
            "units": "rates in gamma, times in 1/gamma",
            "code_version": CODE_VERSION,
            "diagnostics": summary.diagnostics,
            "selectivity": {
                "gamma_T": selectivity.gamma_T,
                "chi_T": selectivity.chi_T,
                "tau_gamma": selectivity.tau_gamma,
                "warnings": selectivity.warnings,
            },
        }
        if solver == "trajectories":
            metadata["trajectories"] = {
                "n_traj": point.trajectories.n_traj,
                "seed": point.trajectories.seed,
                "chunk_size": point.trajectories.chunk_size,
            }

        write_atomic(csv_path, series_to_csv(result.series))
        write_atomic(meta_path, _dump(metadata))
        logger.info(f"Wrote {csv_path}")
        return summary, [csv_path, meta_path]

    async def run(self, scenario: Scenario) -> RunReport:
        """
        Run every (sweep value, solver) of a scenario

        Raises:
            ConfigError: invalid parameters or unavailable solver
            NumericalError: solver failure, message prefixed with the scenario point
        """
        if not self._initialized:
            await self.initialize()

        points = scenario.points()
        semaphore = asyncio.Semaphore(self.max_concurrent)
        tasks = [
            self._run_point(scenario, point, solver, semaphore)
            for point in points
            for solver in scenario.solvers
        ]
        outcomes = await asyncio.gather(*tasks)

        report = RunReport(scenario=scenario.name)
        for summary, files in outcomes:
            report.summaries.append(summary)
            report.files.extend(files)

        document: Dict[str, Any] = {
            "scenario": scenario.name,
            "description": scenario.description,
            "solvers": scenario.solvers,
            "runs": [s.to_dict() for s in report.summaries],
        }
        if scenario.sweep is not None:
            document["sweep_curve"] = {
                solver: sweep_curve([s for s in report.summaries if s.solver == solver])
                for solver in scenario.solvers
            }

        report.summary_path = scenario.output.directory / f"{scenario.name}__summary.yaml"
        write_atomic(report.summary_path, _dump(document))
        logger.info(f"Wrote {report.summary_path}")
        return report


def list_scenarios() -> List[Dict[str, Any]]:
    """Catalog of the builtin scenarios with their parameters"""
    catalog = []
    for name in list_builtin_names():
        scenario = get_builtin(name)
        entry = {
            "name": name,
            "description": scenario.description,
            "chi": scenario.system.get("chi"),
            "omega": scenario.pulses.get("omega"),
            "width_T": scenario.pulses.get("width_T"),
            "period_tau": scenario.pulses.get("period_tau"),
            "n_th": scenario.system.get("n_th", 0.0),
            "resonance_order": scenario.system.get("resonance_order"),
            "dim": scenario.system.get("dim", "auto"),
        }
        if scenario.sweep is not None:
            entry["sweep"] = {"path": scenario.sweep.path, "values": list(scenario.sweep.values)}
        catalog.append(entry)
    return catalog


def generate_builtins(directory: Path) -> List[Path]:
    """Write one self-contained YAML file per builtin scenario"""
    directory = Path(directory)
    written = []
    for name in list_builtin_names():
        path = directory / f"{name}.yaml"
        write_atomic(path, _dump(builtin_document(name)))
        written.append(path)
    logger.info(f"Wrote {len(written)} builtin scenarios to {directory}")
    return written
