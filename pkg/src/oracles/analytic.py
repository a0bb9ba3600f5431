#!/usr/bin/env python3
"""
Analytic references for the solvers
Linear cavity amplitude, displaced-thermal moments, thermal relaxation and the two-level Rabi limit
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.integrate import solve_ivp

from config import DEFAULT_DT_MAX, G2_UNDEFINED_THRESHOLD
from drive.pulse import PulseTrain, envelope
from errors import InvalidParameterError, NumericalError
from fock.operators import SystemParams

logger = logging.getLogger(__name__)


@dataclass
class LinearCavitySolution:
    """<a>(t) of the chi = 0 cavity on a sample grid"""
    times: np.ndarray
    alpha: np.ndarray
    n_th: float

    @property
    def mean_n(self) -> np.ndarray:
        return np.abs(self.alpha) ** 2 + self.n_th


def linear_cavity_alpha(p: SystemParams, train: PulseTrain, times: np.ndarray,
                        alpha0: complex = 0j, dt_max: float = DEFAULT_DT_MAX) -> LinearCavitySolution:
    """
    Integrate d(alpha)/dt = -(i delta + gamma/2) alpha - i Omega f(t)

    The first moment closes exactly at chi = 0. Uses an 8th-order
    Dormand-Prince integrator with max_step <= dt_max / 10.

    Args:
        p (SystemParams): Physical configuration, chi must be 0
        train (PulseTrain): Drive parameters
        times (ndarray): Increasing sample grid starting at the initial time
        alpha0 (complex): Amplitude at times[0]

    Raises:
        InvalidParameterError: if chi != 0
    """
    if p.chi != 0:
        raise InvalidParameterError(f"Linear cavity oracle needs chi = 0, got {p.chi}")

    times = np.asarray(times, dtype=float)
    omega = complex(train.omega)
    rate = complex(p.gamma / 2.0, p.delta)

    def rhs(t, y):
        alpha = complex(y[0], y[1])
        derivative = -rate * alpha - 1j * omega * envelope(train, t)
        return [derivative.real, derivative.imag]

    max_step = min(dt_max / 10.0, train.width_T / 20.0)
    solution = solve_ivp(
        rhs,
        (times[0], times[-1]),
        [complex(alpha0).real, complex(alpha0).imag],
        method="DOP853",
        t_eval=times,
        max_step=max_step,
        rtol=1e-11,
        atol=1e-13,
    )
    if not solution.success:
        raise NumericalError(f"Linear cavity integration failed: {solution.message}")

    return LinearCavitySolution(times=times, alpha=solution.y[0] + 1j * solution.y[1], n_th=p.n_th)


@dataclass
class DisplacedThermalStats:
    mean_n: float
    g2: Optional[float]


def displaced_thermal_stats(alpha: complex, n_th: float,
                            threshold: float = G2_UNDEFINED_THRESHOLD) -> DisplacedThermalStats:
    """
    Exact <n> and g2 of D(alpha) rho_th D(alpha)+

    g2 = 1 + (n_th^2 + 2 n_th |alpha|^2) / (|alpha|^2 + n_th)^2, undefined for <n> below threshold.
    """
    if n_th < 0:
        raise InvalidParameterError(f"Thermal occupation must be >= 0, got {n_th}")
    coherent = abs(alpha) ** 2
    mean_n = coherent + n_th
    if mean_n < threshold:
        return DisplacedThermalStats(mean_n=mean_n, g2=None)
    return DisplacedThermalStats(mean_n=mean_n, g2=1.0 + (n_th ** 2 + 2.0 * n_th * coherent) / mean_n ** 2)


def thermal_relaxation(mean_n0: float, n_th: float, t: np.ndarray, gamma: float = 1.0) -> np.ndarray:
    """Drive-free <n>(t) = n_th + (<n>(0) - n_th) e^{-gamma t}"""
    return n_th + (mean_n0 - n_th) * np.exp(-gamma * np.asarray(t, dtype=float))


@dataclass
class RabiPrediction:
    """Two-level estimate of the population cycling during one pulse"""
    pulse_area: float
    cycles: float
    warnings: List[str] = field(default_factory=list)


def two_level_rabi_check(p: SystemParams, train: PulseTrain) -> RabiPrediction:
    """
    Pulse area 2 |Omega| T sqrt(pi) and the expected oscillation count area / 2 pi

    Advisory: warns when the drive is detuned or the ladder is not selective.
    """
    area = 2.0 * abs(complex(train.omega)) * train.width_T * math.sqrt(math.pi)
    prediction = RabiPrediction(pulse_area=area, cycles=area / (2.0 * math.pi))

    if p.delta != 0:
        prediction.warnings.append(f"Two-level limit assumes delta = 0, got {p.delta}")
    if abs(p.chi) * train.width_T <= 1.0:
        prediction.warnings.append(f"Weak selectivity: chi*T = {abs(p.chi) * train.width_T:.3g}")
    for warning in prediction.warnings:
        logger.warning(f"Rabi check: {warning}")
    return prediction


@dataclass
class RabiConsistency:
    predicted: float
    observed: int
    within_tolerance: bool


def rabi_consistency(prediction: RabiPrediction, observed_maxima: int, tolerance: float = 1.0) -> RabiConsistency:
    """Compare an observed per-pulse maxima count with the predicted cycles, +/- one cycle"""
    return RabiConsistency(
        predicted=prediction.cycles,
        observed=int(observed_maxima),
        within_tolerance=abs(observed_maxima - prediction.cycles) <= tolerance,
    )
