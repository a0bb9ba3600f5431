#!/usr/bin/env python3
"""
Quantum-trajectory solver
Monte Carlo wave-function (jump) unraveling of the thermal master equation,
vectorized over fixed chunks of trajectories
"""

import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config import (
    DEFAULT_MAX_CONCURRENT,
    G2_UNDEFINED_THRESHOLD,
    MAX_TRAJECTORY_FAILURE_FRACTION,
    TRUNCATION_LEVELS,
    TRUNCATION_TOLERANCE,
)
from drive.pulse import PulseTrain, envelope
from errors import TruncationOverflowError
from fock.operators import SystemParams, ladder_energies
from observables.series import ObservableSeries
from solvers.core import (
    BaseSolver,
    EvolutionConfig,
    Integrator,
    SolveResult,
    SolverType,
    TrajectoryConfig,
)
from solvers.implementations.master_equation import resolve_initial_state, step_size

logger = logging.getLogger(__name__)

DOWNWARD = 0
UPWARD = 1


def trajectory_rng(seed: int, index: int) -> np.random.Generator:
    """Random stream of trajectory `index`, independent of every other index"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


class TrajectoryKernel:
    """
    Non-Hermitian evolution and jumps for a batch of state vectors

    All arithmetic is elementwise along the basis axis, so each row evolves
    bitwise identically whatever the batch it sits in.
    """

    def __init__(self, p: SystemParams, train: PulseTrain, integrator: str):
        n = np.arange(p.dim, dtype=float)
        self.sqrt_n = np.sqrt(n)
        # diag(a a+) of the truncated operators
        raised = n + 1.0
        raised[-1] = 0.0

        self.channel_weights = np.stack([p.downward_rate * n, p.upward_rate * raised])
        self.decay = self.channel_weights.sum(axis=0)
        self.diagonal = -1j * ladder_energies(p.dim, p.chi, p.delta) - 0.5 * self.decay
        self.omega = complex(train.omega)
        self.interaction = integrator == Integrator.RK4_INTERACTION.value

    def drive(self, psi: np.ndarray, f: float) -> np.ndarray:
        """-i f (Omega a+ + Omega* a) psi"""
        out = np.zeros_like(psi)
        if f == 0.0 or self.omega == 0:
            return out
        out[:, 1:] += self.omega * self.sqrt_n[1:] * psi[:, :-1]
        out[:, :-1] += np.conj(self.omega) * self.sqrt_n[1:] * psi[:, 1:]
        return -1j * f * out

    def full(self, psi: np.ndarray, f: float) -> np.ndarray:
        return self.diagonal * psi + self.drive(psi, f)

    def factors(self, dt: float) -> Tuple[np.ndarray, np.ndarray]:
        return np.exp(0.5 * dt * self.diagonal), np.exp(dt * self.diagonal)

    def step(self, psi: np.ndarray, dt: float, f0: float, f_half: float, f1: float,
             half: np.ndarray, whole: np.ndarray) -> np.ndarray:
        if self.interaction:
            k1 = self.drive(psi, f0)
            k2 = self.drive(half * (psi + 0.5 * dt * k1), f_half)
            k3 = self.drive(half * psi + 0.5 * dt * k2, f_half)
            k4 = self.drive(whole * psi + dt * half * k3, f1)
            return whole * psi + dt / 6.0 * (whole * k1 + 2.0 * half * (k2 + k3) + k4)

        k1 = self.full(psi, f0)
        k2 = self.full(psi + 0.5 * dt * k1, f_half)
        k3 = self.full(psi + 0.5 * dt * k2, f_half)
        k4 = self.full(psi + dt * k3, f1)
        return psi + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def norm_decay_rate(self, psi: np.ndarray) -> np.ndarray:
        """<psi| sum_i L_i+ L_i |psi>, the instantaneous loss of norm"""
        return np.sum(self.decay * np.abs(psi) ** 2, axis=-1)

    def jump(self, row: np.ndarray, rng: np.random.Generator) -> Tuple[np.ndarray, int]:
        """Apply one jump to a single state vector, channel drawn by ||L_i psi||^2"""
        weights = np.sum(self.channel_weights * np.abs(row) ** 2, axis=-1)
        total = weights.sum()
        jumped = np.zeros_like(row)
        if total <= 0.0:
            return row / np.linalg.norm(row), -1

        channel = DOWNWARD if rng.random() * total < weights[DOWNWARD] else UPWARD
        if channel == DOWNWARD:
            jumped[:-1] = self.sqrt_n[1:] * row[1:]
        else:
            jumped[1:] = self.sqrt_n[1:] * row[:-1]
        return jumped / np.linalg.norm(jumped), channel


@dataclass
class ChunkResult:
    """Per-sample records of the trajectories start..stop-1"""
    start: int
    stop: int
    mean_n: np.ndarray          # (B, T)
    normal_moment: np.ndarray   # (B, T)
    populations: np.ndarray     # (B, T, k + 1)
    failed_from: np.ndarray     # (B,) first failed sample, T if none
    jump_counts: np.ndarray     # (B,)
    jump_times: List[List[float]] = field(default_factory=list)

    @property
    def valid(self) -> np.ndarray:
        samples = self.mean_n.shape[1]
        return np.arange(samples)[None, :] < self.failed_from[:, None]


@dataclass
class TrajectoryRecord:
    """Observables of one pure-state trajectory on the sample grid"""
    index: int
    times: np.ndarray
    mean_n: np.ndarray
    normal_moment: np.ndarray
    populations: np.ndarray
    jump_count: int
    jump_times: List[float]
    failed_from: Optional[int] = None


def simulate_chunk(cfg: TrajectoryConfig, p: SystemParams, train: PulseTrain, start: int, stop: int) -> ChunkResult:
    """
    Run trajectories start..stop-1 together

    Each trajectory draws only from its own stream: the initial eigenvector,
    then one threshold per jump interval and one channel choice per jump.
    """
    train = train.spanning(cfg.t_end)
    dt = step_size(cfg, p, train)
    steps_per_sample = int(round(cfg.sample_dt / dt))
    times = cfg.sample_times()
    samples = times.size
    k = min(cfg.report_populations, p.dim - 1)
    n = np.arange(p.dim, dtype=float)

    kernel = TrajectoryKernel(p, train, cfg.integrator)
    half, whole = kernel.factors(dt)

    weights, vectors = np.linalg.eigh(resolve_initial_state(cfg, p))
    weights = np.clip(weights, 0.0, None)
    cumulative = np.cumsum(weights / weights.sum())

    batch = stop - start
    rngs = [trajectory_rng(cfg.seed, index) for index in range(start, stop)]
    psi = np.empty((batch, p.dim), dtype=complex)
    for row, rng in enumerate(rngs):
        choice = min(int(np.searchsorted(cumulative, rng.random(), side="right")), p.dim - 1)
        psi[row] = vectors[:, choice]
    thresholds = np.array([rng.random() for rng in rngs])

    mean_n = np.zeros((batch, samples))
    moment = np.zeros((batch, samples))
    pops = np.zeros((batch, samples, k + 1))
    failed_from = np.full(batch, samples, dtype=int)
    jump_counts = np.zeros(batch, dtype=int)
    jump_times: List[List[float]] = [[] for _ in range(batch)]

    def record(index: int):
        probs = np.abs(psi) ** 2
        probs = probs / np.sum(probs, axis=1)[:, None]
        mean_n[:, index] = np.sum(probs * n, axis=1)
        moment[:, index] = np.sum(probs * n * (n - 1.0), axis=1)
        pops[:, index, :] = probs[:, :k + 1]
        top = np.sum(probs[:, -TRUNCATION_LEVELS:], axis=1)
        overflow = (top > TRUNCATION_TOLERANCE) & (failed_from == samples)
        failed_from[overflow] = index

    record(0)
    for index in range(1, samples):
        t_start = times[index - 1]
        f = envelope(train, t_start + dt * np.arange(2 * steps_per_sample + 1) / 2.0)
        for step in range(steps_per_sample):
            psi = kernel.step(psi, dt, f[2 * step], f[2 * step + 1], f[2 * step + 2], half, whole)
            norms = np.sum(np.abs(psi) ** 2, axis=1)
            for row in np.flatnonzero(norms <= thresholds):
                psi[row], channel = kernel.jump(psi[row], rngs[row])
                if channel >= 0:
                    jump_counts[row] += 1
                    jump_times[row].append(float(t_start + (step + 1) * dt))
                thresholds[row] = rngs[row].random()
        record(index)

    return ChunkResult(
        start=start,
        stop=stop,
        mean_n=mean_n,
        normal_moment=moment,
        populations=pops,
        failed_from=failed_from,
        jump_counts=jump_counts,
        jump_times=jump_times,
    )


def run_trajectory(cfg: TrajectoryConfig, index: int, p: SystemParams, train: PulseTrain) -> TrajectoryRecord:
    """Observables of trajectory `index`; a deterministic function of (seed, index)"""
    chunk = simulate_chunk(cfg, p, train, index, index + 1)
    failed = int(chunk.failed_from[0])
    return TrajectoryRecord(
        index=index,
        times=cfg.sample_times(),
        mean_n=chunk.mean_n[0],
        normal_moment=chunk.normal_moment[0],
        populations=chunk.populations[0],
        jump_count=int(chunk.jump_counts[0]),
        jump_times=chunk.jump_times[0],
        failed_from=None if failed == chunk.mean_n.shape[1] else failed,
    )


@dataclass
class EnsembleAccumulator:
    """
    Per-sample sums over trajectories

    Sums of squares and the n x n(n-1) cross term feed the standard errors.
    Jump data is kept per trajectory, ordered by index.
    """
    count: np.ndarray
    failures: np.ndarray
    sum_n: np.ndarray
    sum_n_sq: np.ndarray
    sum_moment: np.ndarray
    sum_moment_sq: np.ndarray
    sum_cross: np.ndarray
    sum_pops: np.ndarray
    sum_pops_sq: np.ndarray
    trajectories: int = 0
    segments: List[Tuple[int, np.ndarray, List[List[float]]]] = field(default_factory=list)

    @classmethod
    def empty(cls, samples: int, k: int) -> "EnsembleAccumulator":
        zeros = np.zeros(samples)
        return cls(
            count=np.zeros(samples, dtype=int),
            failures=np.zeros(samples, dtype=int),
            sum_n=zeros.copy(),
            sum_n_sq=zeros.copy(),
            sum_moment=zeros.copy(),
            sum_moment_sq=zeros.copy(),
            sum_cross=zeros.copy(),
            sum_pops=np.zeros((samples, k + 1)),
            sum_pops_sq=np.zeros((samples, k + 1)),
        )

    @classmethod
    def from_chunk(cls, chunk: ChunkResult) -> "EnsembleAccumulator":
        valid = chunk.valid
        n = np.where(valid, chunk.mean_n, 0.0)
        m = np.where(valid, chunk.normal_moment, 0.0)
        pops = np.where(valid[:, :, None], chunk.populations, 0.0)
        return cls(
            count=valid.sum(axis=0),
            failures=(~valid).sum(axis=0),
            sum_n=n.sum(axis=0),
            sum_n_sq=(n * n).sum(axis=0),
            sum_moment=m.sum(axis=0),
            sum_moment_sq=(m * m).sum(axis=0),
            sum_cross=(n * m).sum(axis=0),
            sum_pops=pops.sum(axis=0),
            sum_pops_sq=(pops * pops).sum(axis=0),
            trajectories=chunk.stop - chunk.start,
            segments=[(chunk.start, chunk.jump_counts, chunk.jump_times)],
        )

    def merge(self, other: "EnsembleAccumulator") -> "EnsembleAccumulator":
        """Commutative: sums add elementwise, jump segments stay sorted by index"""
        return EnsembleAccumulator(
            count=self.count + other.count,
            failures=self.failures + other.failures,
            sum_n=self.sum_n + other.sum_n,
            sum_n_sq=self.sum_n_sq + other.sum_n_sq,
            sum_moment=self.sum_moment + other.sum_moment,
            sum_moment_sq=self.sum_moment_sq + other.sum_moment_sq,
            sum_cross=self.sum_cross + other.sum_cross,
            sum_pops=self.sum_pops + other.sum_pops,
            sum_pops_sq=self.sum_pops_sq + other.sum_pops_sq,
            trajectories=self.trajectories + other.trajectories,
            segments=sorted(self.segments + other.segments, key=lambda s: s[0]),
        )

    @property
    def jump_counts(self) -> np.ndarray:
        if not self.segments:
            return np.zeros(0, dtype=int)
        return np.concatenate([s[1] for s in self.segments])

    @property
    def jump_times(self) -> List[List[float]]:
        return [times for segment in self.segments for times in segment[2]]

    @property
    def failure_fraction(self) -> np.ndarray:
        return self.failures / max(self.trajectories, 1)

    def series(self, times: np.ndarray, envelope_values: np.ndarray,
               threshold: float = G2_UNDEFINED_THRESHOLD) -> ObservableSeries:
        """
        Bin-wise means and standard errors

        g2 is formed from the ensemble moments; its standard error follows
        from the delta method on <n(n-1)> / <n>^2.
        """
        count = self.count.astype(float)
        safe = np.maximum(count, 1.0)
        mean_n = self.sum_n / safe
        mean_m = self.sum_moment / safe
        populations = np.clip(self.sum_pops / safe[:, None], 0.0, 1.0)

        with np.errstate(invalid="ignore", divide="ignore"):
            dof = np.where(count > 1, count - 1.0, np.nan)
            var_n = np.maximum((self.sum_n_sq - count * mean_n ** 2) / dof, 0.0)
            var_m = np.maximum((self.sum_moment_sq - count * mean_m ** 2) / dof, 0.0)
            cov = (self.sum_cross - count * mean_n * mean_m) / dof
            var_pops = np.maximum((self.sum_pops_sq - count[:, None] * populations ** 2) / dof[:, None], 0.0)

            defined = mean_n >= threshold
            g2 = np.where(defined, np.maximum(mean_m, 0.0) / mean_n ** 2, np.nan)
            g2_var = (var_m / mean_n ** 4 + 4.0 * mean_m ** 2 * var_n / mean_n ** 6
                      - 4.0 * mean_m * cov / mean_n ** 5) / safe
            g2_stderr = np.where(defined, np.sqrt(np.maximum(g2_var, 0.0)), np.nan)

        return ObservableSeries(
            times=times,
            mean_n=mean_n,
            g2=g2,
            populations=populations,
            variance_n=np.maximum(mean_m + mean_n - mean_n ** 2, 0.0),
            envelope=np.asarray(envelope_values, dtype=float),
            g2_threshold=threshold,
            mean_n_stderr=np.sqrt(var_n / safe),
            g2_stderr=g2_stderr,
            failures=self.failures.copy(),
            extras={
                "population_stderr": np.sqrt(var_pops / safe[:, None]),
                "trajectory_count": self.count.copy(),
            },
        )


def chunk_bounds(n_traj: int, chunk_size: int) -> List[Tuple[int, int]]:
    """Fixed index ranges; the reduction never depends on how they are scheduled"""
    return [(start, min(start + chunk_size, n_traj)) for start in range(0, n_traj, chunk_size)]


def _summarize(accumulator: EnsembleAccumulator, cfg: TrajectoryConfig, p: SystemParams,
               train: PulseTrain, started: float) -> Tuple[ObservableSeries, Dict[str, Any]]:
    times = cfg.sample_times()
    spanning = train.spanning(cfg.t_end)
    fraction = accumulator.failure_fraction
    worst = float(fraction.max()) if fraction.size else 0.0

    diagnostics = {
        "integrator": cfg.integrator,
        "dt": step_size(cfg, p, spanning),
        "n_traj": cfg.n_traj,
        "seed": cfg.seed,
        "chunk_size": cfg.chunk_size,
        "pulse_count": spanning.count,
        "total_jumps": int(accumulator.jump_counts.sum()),
        "mean_jumps": float(accumulator.jump_counts.mean()) if accumulator.trajectories else 0.0,
        "max_failure_fraction": worst,
        "wall_clock_seconds": time.perf_counter() - started,
    }

    if worst > MAX_TRAJECTORY_FAILURE_FRACTION:
        first = int(np.argmax(fraction > MAX_TRAJECTORY_FAILURE_FRACTION))
        raise TruncationOverflowError(
            f"{worst:.2%} of trajectories overflowed the truncation (first at t={times[first]:.4g}, dim={p.dim})",
            diagnostics=diagnostics,
        )
    if worst > 0.0:
        logger.warning(f"Trajectories: up to {worst:.2%} of trajectories failed per sample bin")

    return accumulator.series(times, envelope(spanning, times)), diagnostics


def ensemble_accumulate(cfg: TrajectoryConfig, p: SystemParams, train: PulseTrain) -> EnsembleAccumulator:
    """Run every chunk in index order and merge the results"""
    samples, k = cfg.n_samples, min(cfg.report_populations, p.dim - 1)
    accumulators = [
        EnsembleAccumulator.from_chunk(simulate_chunk(cfg, p, train, start, stop))
        for start, stop in chunk_bounds(cfg.n_traj, cfg.chunk_size)
    ]
    return reduce(EnsembleAccumulator.merge, accumulators, EnsembleAccumulator.empty(samples, k))


def ensemble_average(cfg: TrajectoryConfig, p: SystemParams, train: PulseTrain) -> ObservableSeries:
    """
    Ensemble means with standard errors

    Raises:
        TruncationOverflowError: if a sample bin loses more than the allowed fraction
    """
    started = time.perf_counter()
    series, _ = _summarize(ensemble_accumulate(cfg, p, train), cfg, p, train, started)
    return series


async def ensemble_average_async(cfg: TrajectoryConfig, p: SystemParams, train: PulseTrain,
                                 executor: Optional[Executor] = None,
                                 max_concurrent: int = DEFAULT_MAX_CONCURRENT
                                 ) -> Tuple[ObservableSeries, Dict[str, Any], EnsembleAccumulator]:
    """Concurrent variant of ensemble_average; bitwise identical results"""
    started = time.perf_counter()
    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(max_concurrent)

    async def run_chunk(start: int, stop: int) -> EnsembleAccumulator:
        async with semaphore:
            chunk = await loop.run_in_executor(executor, simulate_chunk, cfg, p, train, start, stop)
            logger.debug(f"Trajectories {start}..{stop - 1} done")
            return EnsembleAccumulator.from_chunk(chunk)

    # gather preserves submission order, so the merge order is fixed
    accumulators = await asyncio.gather(*(run_chunk(a, b) for a, b in chunk_bounds(cfg.n_traj, cfg.chunk_size)))
    empty = EnsembleAccumulator.empty(cfg.n_samples, min(cfg.report_populations, p.dim - 1))
    accumulator = reduce(EnsembleAccumulator.merge, accumulators, empty)
    series, diagnostics = _summarize(accumulator, cfg, p, train, started)
    return series, diagnostics, accumulator


class TrajectorySolver(BaseSolver):
    """Stochastic path: jump-unraveling ensemble with standard errors"""

    def __init__(self, name: str = "trajectories", chunk_size: Optional[int] = None,
                 max_concurrent: int = DEFAULT_MAX_CONCURRENT, use_processes: bool = False, **kwargs):
        super().__init__(name, SolverType.STOCHASTIC)
        self.chunk_size = chunk_size
        self.max_concurrent = max_concurrent
        self.use_processes = use_processes

    async def initialize(self) -> bool:
        if self.max_concurrent < 1:
            self.last_error = f"max_concurrent must be >= 1, got {self.max_concurrent}"
            logger.error(self.last_error)
            self.is_available = False
            return False
        self.is_available = True
        return True

    def validate_params(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> tuple[bool, str]:
        if not isinstance(cfg, EvolutionConfig):
            return False, f"Expected EvolutionConfig, got {type(cfg).__name__}"
        if isinstance(cfg.initial_state, np.ndarray) and cfg.initial_state.shape != (p.dim, p.dim):
            return False, f"Initial state of shape {cfg.initial_state.shape} does not match dim={p.dim}"
        return True, ""

    def _config(self, cfg: EvolutionConfig) -> TrajectoryConfig:
        if not isinstance(cfg, TrajectoryConfig):
            cfg = TrajectoryConfig.from_evolution(cfg)
        if self.chunk_size is not None and cfg.chunk_size != self.chunk_size:
            cfg = TrajectoryConfig.from_evolution(cfg, n_traj=cfg.n_traj, seed=cfg.seed, chunk_size=self.chunk_size)
        return cfg

    async def _perform_solve(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> SolveResult:
        cfg = self._config(cfg)
        logger.info(f"Trajectories: {cfg.n_traj} trajectories, seed {cfg.seed}, dim={p.dim}")

        if self.use_processes:
            with ProcessPoolExecutor(max_workers=self.max_concurrent) as executor:
                series, diagnostics, _ = await ensemble_average_async(cfg, p, train, executor, self.max_concurrent)
        else:
            series, diagnostics, _ = await ensemble_average_async(cfg, p, train, None, self.max_concurrent)

        logger.info(f"Trajectories finished in {diagnostics['wall_clock_seconds']:.2f}s, "
                    f"{diagnostics['total_jumps']} jumps")
        return SolveResult(solver=self.name, series=series, diagnostics=diagnostics)
