#!/usr/bin/env python3
"""
Mock solver for testing the solver manager and scenario runner

Produces an analytic coherent-state series instead of integrating anything.
"""

import asyncio
from typing import Any, Dict, Optional

import numpy as np

from drive.pulse import PulseTrain, envelope
from fock.operators import SystemParams
from fock.states import coherent_state
from observables.series import ObservableSeries, series_from_records
from observables.statistics import record_from_state
from solvers.core import BaseSolver, EvolutionConfig, SolveResult, SolverType


def coherent_series(p: SystemParams, train: PulseTrain, cfg: EvolutionConfig,
                    amplitude: float = 0.8) -> ObservableSeries:
    """Series of |alpha(t)> with alpha(t) = amplitude * f(t); g2 = 1 wherever it is defined"""
    times = cfg.sample_times()
    spanning = train.spanning(cfg.t_end)
    f = envelope(spanning, times)
    k = min(cfg.report_populations, p.dim - 1)
    records = [record_from_state(coherent_state(p.dim, amplitude * value), t, k) for t, value in zip(times, f)]
    return series_from_records(records, f)


class MockSolver(BaseSolver):
    """Mock solver returning predictable series for testing"""

    def __init__(self, solver_name: str, solver_type: SolverType = SolverType.DETERMINISTIC,
                 available: bool = True):
        super().__init__(name=solver_name, solver_type=solver_type)
        self._available = available
        self.call_count = 0
        self.fail_with: Optional[Exception] = None
        self.diagnostics: Dict[str, Any] = {
            "max_trace_drift_rate": 0.0,
            "min_eigenvalue": 0.0,
            "max_top_population": 0.0,
            "wall_clock_seconds": 0.01,
        }

    async def initialize(self) -> bool:
        """Initialize mock solver - succeeds unless created unavailable"""
        self.is_available = self._available
        if not self._available:
            self.last_error = "mock solver disabled"
        return self._available

    def validate_params(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> tuple[bool, str]:
        if p.dim > 60:
            return False, f"mock solver supports dim <= 60, got {p.dim}"
        return True, ""

    async def _perform_solve(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> SolveResult:
        self.call_count += 1
        await asyncio.sleep(0)
        if self.fail_with is not None:
            raise self.fail_with

        series = coherent_series(p, train, cfg)
        if self.solver_type == SolverType.STOCHASTIC:
            series.mean_n_stderr = np.full(len(series), 0.01)
            series.g2_stderr = np.where(series.g2_defined, 0.05, np.nan)
            series.failures = np.zeros(len(series), dtype=int)

        diagnostics = dict(self.diagnostics)
        diagnostics["dim"] = p.dim
        return SolveResult(solver=self.name, series=series, diagnostics=diagnostics)


class MockSolverFactory:
    """Factory for creating mock solvers under the registered solver names"""

    @staticmethod
    def create_mock_master_equation() -> MockSolver:
        return MockSolver("master-equation", SolverType.DETERMINISTIC)

    @staticmethod
    def create_mock_trajectories() -> MockSolver:
        return MockSolver("trajectories", SolverType.STOCHASTIC)

    @staticmethod
    def get_all_mock_solvers() -> Dict[str, MockSolver]:
        """Get all available mock solvers"""
        return {
            "master-equation": MockSolverFactory.create_mock_master_equation(),
            "trajectories": MockSolverFactory.create_mock_trajectories(),
        }
