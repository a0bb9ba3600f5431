#!/usr/bin/env python3
"""
Solver type definitions
Contains enums and dataclasses shared by the master-equation and trajectory solvers
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Union

import numpy as np

from config import (
    DEFAULT_DT_MAX,
    DEFAULT_INTEGRATOR,
    DEFAULT_N_TRAJ,
    DEFAULT_REPORT_POPULATIONS,
    DEFAULT_SAMPLE_DT,
    DEFAULT_SEED,
    TRAJECTORY_CHUNK_SIZE,
)
from errors import InvalidParameterError
from observables.series import ObservableSeries


class SolverType(Enum):
    """Solver classification"""
    DETERMINISTIC = "deterministic"
    STOCHASTIC = "stochastic"


class Integrator(Enum):
    """Fixed-step integration schemes"""
    RK4 = "rk4"
    RK4_INTERACTION = "rk4-interaction"


# "thermal", "vacuum" or an explicit density matrix
InitialState = Union[str, np.ndarray, None]


@dataclass
class EvolutionConfig:
    """
    Time grid and integration settings, times in units of 1/gamma

    initial_state=None selects the thermal state of the reservoir occupation.
    """
    t_end: float
    dt_max: float = DEFAULT_DT_MAX
    sample_dt: float = DEFAULT_SAMPLE_DT
    initial_state: InitialState = None
    integrator: str = DEFAULT_INTEGRATOR
    report_populations: int = DEFAULT_REPORT_POPULATIONS
    store_states: bool = False

    def __post_init__(self):
        if not 0 < self.dt_max <= self.sample_dt <= self.t_end:
            raise InvalidParameterError(
                f"Need 0 < dt_max <= sample_dt <= t_end, got "
                f"dt_max={self.dt_max}, sample_dt={self.sample_dt}, t_end={self.t_end}"
            )
        if self.integrator not in {i.value for i in Integrator}:
            raise InvalidParameterError(f"Unknown integrator '{self.integrator}'")
        if self.report_populations < 0:
            raise InvalidParameterError(f"report_populations must be >= 0, got {self.report_populations}")
        if isinstance(self.initial_state, str) and self.initial_state not in ("thermal", "vacuum"):
            raise InvalidParameterError(f"Unknown initial state '{self.initial_state}'")

    @property
    def n_samples(self) -> int:
        return int(round(self.t_end / self.sample_dt)) + 1

    def sample_times(self) -> np.ndarray:
        return np.arange(self.n_samples, dtype=float) * self.sample_dt


@dataclass
class TrajectoryConfig(EvolutionConfig):
    """Evolution settings plus ensemble size and root seed"""
    n_traj: int = DEFAULT_N_TRAJ
    seed: int = DEFAULT_SEED
    chunk_size: int = TRAJECTORY_CHUNK_SIZE

    def __post_init__(self):
        super().__post_init__()
        if self.n_traj < 1:
            raise InvalidParameterError(f"n_traj must be >= 1, got {self.n_traj}")
        if self.chunk_size < 1:
            raise InvalidParameterError(f"chunk_size must be >= 1, got {self.chunk_size}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidParameterError(f"Root seed must be a 64-bit unsigned integer, got {self.seed}")

    @classmethod
    def from_evolution(cls, cfg: EvolutionConfig, **kwargs) -> "TrajectoryConfig":
        return cls(
            t_end=cfg.t_end,
            dt_max=cfg.dt_max,
            sample_dt=cfg.sample_dt,
            initial_state=cfg.initial_state,
            integrator=cfg.integrator,
            report_populations=cfg.report_populations,
            **kwargs,
        )


@dataclass
class StateTrajectory:
    """Sampled evolution of the density matrix"""
    times: np.ndarray
    series: ObservableSeries
    expect_a: np.ndarray
    states: Optional[List[np.ndarray]] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SolveResult:
    """Output of one solver run"""
    solver: str
    series: ObservableSeries
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    trajectory: Optional[StateTrajectory] = None
