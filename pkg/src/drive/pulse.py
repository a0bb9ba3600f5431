#!/usr/bin/env python3
"""
Gaussian pulse-train drive
Envelope f(t) = sum_n exp(-(t - t0 - n*tau)^2 / T^2) and resonance bookkeeping
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple, Union

import numpy as np

from config import DEFAULT_T0, ENVELOPE_CUTOFF_WIDTHS, PULSE_WINDOW_WIDTHS
from errors import InvalidParameterError
from fock.operators import SystemParams

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class PulseTrain:
    """
    Parameters of the pulsed drive, times in units of 1/gamma

    count=None means an unbounded train.
    """
    omega: complex
    width_T: float
    period_tau: float
    t0: float = DEFAULT_T0
    count: Optional[int] = None

    def __post_init__(self):
        if not self.width_T > 0:
            raise InvalidParameterError(f"Pulse duration T must be > 0, got {self.width_T}")
        if not self.period_tau > 0:
            raise InvalidParameterError(f"Pulse separation tau must be > 0, got {self.period_tau}")
        if self.count is not None and self.count < 1:
            raise InvalidParameterError(f"Pulse count must be >= 1, got {self.count}")

    def spanning(self, t_end: float) -> "PulseTrain":
        """Copy with count fixed to the window-spanning default when unset"""
        if self.count is not None:
            return self
        return replace(self, count=default_count(t_end, self.period_tau))


def default_count(t_end: float, period_tau: float) -> int:
    """Number of pulses that spans the window [0, t_end]: ceil(t_end / tau) + 1"""
    return int(math.ceil(t_end / period_tau)) + 1


def envelope(train: PulseTrain, t: ArrayLike) -> ArrayLike:
    """
    Evaluate the pulse-train envelope

    Terms further than 8T from t are dropped; each contributes < e^-64.

    Args:
        train (PulseTrain): Drive parameters
        t (float | ndarray): Time(s) in units of 1/gamma

    Returns:
        float | ndarray: f(t), same shape as t
    """
    scalar = np.isscalar(t)
    times = np.atleast_1d(np.asarray(t, dtype=float))
    cutoff = ENVELOPE_CUTOFF_WIDTHS * train.width_T
    tau = train.period_tau

    first = np.maximum(np.ceil((times - train.t0 - cutoff) / tau), 0.0)
    last = np.floor((times - train.t0 + cutoff) / tau)
    if train.count is not None:
        last = np.minimum(last, train.count - 1)

    total = np.zeros_like(times)
    terms = int(math.ceil(2.0 * cutoff / tau)) + 1
    for j in range(terms):
        n = first + j
        active = n <= last
        offset = times - train.t0 - n * tau
        total += np.where(active, np.exp(-(offset / train.width_T) ** 2), 0.0)

    return float(total[0]) if scalar else total


def drive_amplitude(train: PulseTrain, t: float) -> complex:
    """Instantaneous drive Omega * f(t)"""
    return complex(train.omega) * envelope(train, t)


def pulse_centers(train: PulseTrain, t_end: float) -> List[float]:
    """Centers of the pulses whose window reaches into [0, t_end]"""
    count = train.count if train.count is not None else default_count(t_end, train.period_tau)
    reach = PULSE_WINDOW_WIDTHS * train.width_T
    centers = [train.t0 + n * train.period_tau for n in range(count)]
    return [c for c in centers if c - reach <= t_end]


def pulse_windows(train: PulseTrain, t_end: float, half_width: float = PULSE_WINDOW_WIDTHS,
                  complete_only: bool = False) -> List[Tuple[float, float]]:
    """
    Windows [c - 3T, c + 3T] per pulse, clipped to [0, t_end]

    complete_only drops windows that t_end cuts off; extrema counts over a
    truncated window undercount. Clipping at t = 0 is kept, the run starts there.
    """
    reach = half_width * train.width_T
    windows = [(c - reach, c + reach) for c in pulse_centers(train, t_end)]
    if complete_only:
        windows = [(a, b) for a, b in windows if b <= t_end]
    return [(max(0.0, a), min(t_end, b)) for a, b in windows]


def max_envelope(train: PulseTrain, t_end: float) -> float:
    """Largest envelope value over [0, t_end], sampled on a dense grid and at pulse centers"""
    grid = np.linspace(0.0, t_end, 4001)
    centers = np.asarray([c for c in pulse_centers(train, t_end) if 0.0 <= c <= t_end] or [0.0])
    return float(max(np.max(envelope(train, grid)), np.max(envelope(train, centers))))


def resonance_detuning(n: int, chi: float) -> float:
    """
    Detuning that makes the |0> -> |n> transition resonant, -chi (n - 1)

    Raises:
        InvalidParameterError: if n < 1
    """
    if n < 1:
        raise InvalidParameterError(f"Transition order must be >= 1, got {n}")
    return -chi * (n - 1)


@dataclass
class SelectivityReport:
    """Outcome of the 1/gamma > T > 1/chi and tau*gamma > 1 checks"""
    gamma_T: float
    chi_T: float
    tau_gamma: float
    warnings: List[str] = field(default_factory=list)

    @property
    def within_lifetime(self) -> bool:
        return self.gamma_T < 1.0

    @property
    def selective(self) -> bool:
        return self.chi_T > 1.0

    @property
    def separated(self) -> bool:
        return self.tau_gamma > 1.0

    @property
    def is_valid(self) -> bool:
        return self.within_lifetime and self.selective and self.separated


def validate_selectivity(train: PulseTrain, p: SystemParams) -> SelectivityReport:
    """
    Check the pulse-duration window and pulse separation (advisory only)

    Returns:
        SelectivityReport: inequality values plus warnings for each violation
    """
    report = SelectivityReport(
        gamma_T=p.gamma * train.width_T,
        chi_T=abs(p.chi) * train.width_T,
        tau_gamma=train.period_tau * p.gamma,
    )
    if not report.within_lifetime:
        report.warnings.append(f"Pulse longer than photon lifetime: gamma*T = {report.gamma_T:.3g} >= 1")
    if not report.selective:
        report.warnings.append(f"Pulse spectrum wider than Kerr shift: chi*T = {report.chi_T:.3g} <= 1")
    if not report.separated:
        report.warnings.append(f"Pulse separation below photon lifetime: tau*gamma = {report.tau_gamma:.3g} <= 1")

    for warning in report.warnings:
        logger.warning(f"Selectivity: {warning}")
    return report
