#!/usr/bin/env python3
"""
Master-equation solver
Fixed-step Runge-Kutta integration of the Lindblad equation for the full density matrix
"""

import asyncio
import logging
import math
import time
from typing import Callable, List, Optional

import numpy as np

from config import MIN_STEP, STEP_SAFETY_FACTOR
from drive.pulse import PulseTrain, envelope, max_envelope
from errors import DimensionMismatchError, InvalidParameterError, StepUnderflowError
from fock.operators import SystemParams, annihilation, ladder_energies
from fock.states import thermal_state, vacuum
from observables.series import series_from_records
from observables.statistics import record_from_state
from solvers.core import (
    BaseSolver,
    EvolutionConfig,
    Integrator,
    SolveResult,
    SolverType,
    StateTrajectory,
)
from solvers.utils.validation import check_shape, check_truncation, validate_density_matrix

logger = logging.getLogger(__name__)


class LindbladGenerator:
    """
    Right-hand side of the master equation for one (SystemParams, PulseTrain) pair

    The generator splits into the diagonal Hamiltonian, whose commutator is an
    elementwise phase, and the remainder (drive plus dissipator). Callers pass
    the envelope value f(t) rather than t.
    """

    def __init__(self, p: SystemParams, train: PulseTrain):
        self.params = p
        self.a = np.array(annihilation(p.dim))
        self.a_dag = self.a.conj().T.copy()

        energies = ladder_energies(p.dim, p.chi, p.delta)
        self.frequencies = energies[:, None] - energies[None, :]

        # diag(a+ a) and diag(a a+); the latter is 0 at the truncation edge
        n_diag = np.real(np.diagonal(self.a_dag @ self.a))
        anti_diag = np.real(np.diagonal(self.a @ self.a_dag))
        self.damping = 0.5 * (
            p.downward_rate * (n_diag[:, None] + n_diag[None, :])
            + p.upward_rate * (anti_diag[:, None] + anti_diag[None, :])
        )

        omega = complex(train.omega)
        self.drive_operator = omega * self.a_dag + np.conj(omega) * self.a

    def dissipator(self, rho: np.ndarray) -> np.ndarray:
        out = self.params.downward_rate * (self.a @ rho @ self.a_dag)
        if self.params.upward_rate > 0.0:
            out = out + self.params.upward_rate * (self.a_dag @ rho @ self.a)
        return out - self.damping * rho

    def coupling(self, rho: np.ndarray, f: float) -> np.ndarray:
        """Drive commutator plus dissipator: everything except the diagonal phases"""
        out = self.dissipator(rho)
        if f != 0.0:
            h_drive = f * self.drive_operator
            out = out - 1j * (h_drive @ rho - rho @ h_drive)
        return out

    def __call__(self, rho: np.ndarray, f: float) -> np.ndarray:
        return -1j * self.frequencies * rho + self.coupling(rho, f)

    def phases(self, h: float) -> np.ndarray:
        """Exact propagator of the diagonal Hamiltonian over h, applied elementwise"""
        return np.exp(-1j * self.frequencies * h)


def rk4_step(rho: np.ndarray, fun: Callable, dt: float, f0: float, f_half: float, f1: float) -> np.ndarray:
    k1 = fun(rho, f0)
    k2 = fun(rho + 0.5 * dt * k1, f_half)
    k3 = fun(rho + 0.5 * dt * k2, f_half)
    k4 = fun(rho + dt * k3, f1)
    return rho + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def interaction_rk4_step(rho: np.ndarray, fun: Callable, dt: float, f0: float, f_half: float, f1: float,
                         half_phase: np.ndarray, full_phase: np.ndarray) -> np.ndarray:
    """RK4 in the frame rotating with the diagonal Hamiltonian (integrating factor)"""
    k1 = fun(rho, f0)
    k2 = fun(half_phase * (rho + 0.5 * dt * k1), f_half)
    k3 = fun(half_phase * rho + 0.5 * dt * k2, f_half)
    k4 = fun(full_phase * rho + dt * half_phase * k3, f1)
    return full_phase * rho + dt / 6.0 * (full_phase * k1 + 2.0 * half_phase * (k2 + k3) + k4)


def _hermitize(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def liouvillian_apply(rho: np.ndarray, t: float, p: SystemParams, train: PulseTrain) -> np.ndarray:
    """
    d(rho)/dt = -i[H_eff(t), rho] + sum_i D[L_i] rho

    Raises:
        DimensionMismatchError: if rho is not p.dim x p.dim
    """
    check_shape(rho, p.dim)
    generator = LindbladGenerator(p, train)
    return _hermitize(generator(np.asarray(rho, dtype=complex), envelope(train, float(t))))


def stability_rate(p: SystemParams, train: PulseTrain, t_end: float, integrator: str) -> float:
    """Fastest rate the chosen integrator has to resolve"""
    drive = abs(complex(train.omega)) * max_envelope(train, t_end)
    if integrator == Integrator.RK4.value:
        return max(abs(p.delta) + abs(p.chi) * p.dim ** 2,
                   drive,
                   p.gamma * (p.n_th + 1.0) * p.dim)
    return max(abs(p.delta) + 2.0 * abs(p.chi) * (p.dim - 1),
               drive * math.sqrt(p.dim),
               p.gamma * (2.0 * p.n_th + 1.0) * p.dim)


def step_size(cfg: EvolutionConfig, p: SystemParams, train: PulseTrain, integrator: Optional[str] = None) -> float:
    """
    Integration step: the largest dt <= min(dt_max, cap) that divides sample_dt

    Raises:
        StepUnderflowError: if the step falls below MIN_STEP
    """
    integrator = integrator or cfg.integrator
    rate = stability_rate(p, train.spanning(cfg.t_end), cfg.t_end, integrator)
    target = cfg.dt_max if rate == 0.0 else min(cfg.dt_max, STEP_SAFETY_FACTOR / rate)
    if target < MIN_STEP:
        raise StepUnderflowError(
            f"Stability cap demands dt={target:.3e} < {MIN_STEP:.0e} ({integrator}, dim={p.dim})",
            diagnostics={"dt": target, "rate": rate, "integrator": integrator},
        )
    steps_per_sample = max(1, math.ceil(cfg.sample_dt / target - 1e-9))
    return cfg.sample_dt / steps_per_sample


def resolve_initial_state(cfg: EvolutionConfig, p: SystemParams) -> np.ndarray:
    """
    Density matrix the evolution starts from

    Raises:
        DimensionMismatchError: explicit state of the wrong shape
        InvalidParameterError: explicit state that is not a density matrix
    """
    initial = cfg.initial_state
    if initial is None or (isinstance(initial, str) and initial == "thermal"):
        return np.array(thermal_state(p.dim, p.n_th))
    if isinstance(initial, str):
        return np.array(vacuum(p.dim))

    rho = np.array(initial, dtype=complex)
    if rho.shape != (p.dim, p.dim):
        raise DimensionMismatchError(f"Initial state of shape {rho.shape} does not match dim={p.dim}")
    result = validate_density_matrix(rho, p.dim)
    if not result.is_valid:
        raise InvalidParameterError(f"Initial state is not a density matrix: {result.errors}")
    return rho


def evolve(cfg: EvolutionConfig, p: SystemParams, train: PulseTrain) -> StateTrajectory:
    """
    Integrate the master equation over [0, t_end]

    The trace is renormalized and the state re-Hermitized at every sample point;
    drift before renormalization is kept as a diagnostic.

    Raises:
        TruncationOverflowError: the top levels gain population
        StepUnderflowError: the stability cap is below MIN_STEP
    """
    started = time.perf_counter()
    train = train.spanning(cfg.t_end)
    dt = step_size(cfg, p, train)
    steps_per_sample = int(round(cfg.sample_dt / dt))
    times = cfg.sample_times()
    k = min(cfg.report_populations, p.dim - 1)

    generator = LindbladGenerator(p, train)
    interaction = cfg.integrator == Integrator.RK4_INTERACTION.value
    if interaction:
        half_phase, full_phase = generator.phases(0.5 * dt), generator.phases(dt)
        fun = generator.coupling
    else:
        fun = generator

    rho = resolve_initial_state(cfg, p)
    a_transpose = generator.a.T

    records = []
    expect_a = np.empty(times.size, dtype=complex)
    states: Optional[List[np.ndarray]] = [] if cfg.store_states else None
    max_drift = 0.0
    max_top = check_truncation(rho, 0.0)
    min_eigenvalue = float(np.min(np.linalg.eigvalsh(rho)))

    def sample(index: int, state: np.ndarray):
        records.append(record_from_state(state, times[index], k))
        expect_a[index] = np.sum(state * a_transpose)
        if states is not None:
            states.append(state.copy())

    sample(0, rho)
    logger.info(f"Master equation: dim={p.dim}, dt={dt:.3e}, {steps_per_sample} steps/sample, "
                f"{times.size} samples, {cfg.integrator}")

    for index in range(1, times.size):
        t_start = times[index - 1]
        step_times = t_start + dt * np.arange(2 * steps_per_sample + 1) / 2.0
        f = envelope(train, step_times)
        for step in range(steps_per_sample):
            f0, f_half, f1 = f[2 * step], f[2 * step + 1], f[2 * step + 2]
            if interaction:
                rho = interaction_rk4_step(rho, fun, dt, f0, f_half, f1, half_phase, full_phase)
            else:
                rho = rk4_step(rho, fun, dt, f0, f_half, f1)

        trace = float(np.real(np.trace(rho)))
        max_drift = max(max_drift, abs(trace - 1.0) / cfg.sample_dt)
        rho = _hermitize(rho) / trace

        max_top = max(max_top, check_truncation(rho, times[index]))
        min_eigenvalue = min(min_eigenvalue, float(np.min(np.linalg.eigvalsh(rho))))
        sample(index, rho)

    series = series_from_records(records, envelope(train, times))
    diagnostics = {
        "integrator": cfg.integrator,
        "dt": dt,
        "steps": steps_per_sample * (times.size - 1),
        "pulse_count": train.count,
        "max_trace_drift_rate": max_drift,
        "min_eigenvalue": min_eigenvalue,
        "max_top_population": max_top,
        "wall_clock_seconds": time.perf_counter() - started,
    }
    logger.info(f"Master equation finished in {diagnostics['wall_clock_seconds']:.2f}s")
    return StateTrajectory(times=times, series=series, expect_a=expect_a, states=states, diagnostics=diagnostics)


class MasterEquationSolver(BaseSolver):
    """Reference path: deterministic density-matrix integration"""

    def __init__(self, name: str = "master-equation", **kwargs):
        super().__init__(name, SolverType.DETERMINISTIC)

    async def initialize(self) -> bool:
        self.is_available = True
        return True

    def validate_params(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> tuple[bool, str]:
        if not isinstance(cfg, EvolutionConfig):
            return False, f"Expected EvolutionConfig, got {type(cfg).__name__}"
        if isinstance(cfg.initial_state, np.ndarray) and cfg.initial_state.shape != (p.dim, p.dim):
            return False, f"Initial state of shape {cfg.initial_state.shape} does not match dim={p.dim}"
        return True, ""

    async def _perform_solve(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> SolveResult:
        loop = asyncio.get_running_loop()
        trajectory = await loop.run_in_executor(None, evolve, cfg, p, train)
        return SolveResult(
            solver=self.name,
            series=trajectory.series,
            diagnostics=trajectory.diagnostics,
            trajectory=trajectory,
        )
