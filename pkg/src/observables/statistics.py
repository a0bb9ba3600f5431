#!/usr/bin/env python3
"""
Photon statistics of a single-mode state
Populations, mean photon number, zero-delay g2 and number variance
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from config import CONSISTENCY_TOLERANCE, G2_UNDEFINED_THRESHOLD, POSITIVITY_TOLERANCE
from errors import ConsistencyError, InvalidParameterError

logger = logging.getLogger(__name__)


class PhotonStatistics(Enum):
    """Classification of the photon-number distribution against a Poissonian"""
    SUB_POISSONIAN = "sub-poissonian"
    POISSONIAN = "poissonian"
    SUPER_POISSONIAN = "super-poissonian"


@dataclass
class ObservableRecord:
    """Measured quantities of the mode at one sample time"""
    t: float
    mean_n: float
    g2: Optional[float]
    populations: np.ndarray
    variance_n: float
    g2_threshold: float = G2_UNDEFINED_THRESHOLD

    @property
    def g2_defined(self) -> bool:
        return self.g2 is not None


def _diagonal(rho: np.ndarray) -> np.ndarray:
    return np.real(np.diagonal(np.asarray(rho)))


def populations(rho: np.ndarray, k: int) -> np.ndarray:
    """
    Number-state populations P(0..k) = <n|rho|n>, clamped to [0, 1]

    Args:
        rho (ndarray): Density matrix
        k (int): Highest reported level, k < dim
    """
    diagonal = _diagonal(rho)
    if not 0 <= k < diagonal.size:
        raise InvalidParameterError(f"Report count {k} must lie in 0..{diagonal.size - 1}")
    values = diagonal[:k + 1]
    clamped = np.clip(values, 0.0, 1.0)
    magnitude = float(np.max(np.abs(clamped - values))) if values.size else 0.0
    if magnitude > POSITIVITY_TOLERANCE:
        logger.warning(f"Clamped populations by up to {magnitude:.3e}")
    elif magnitude > 0.0:
        logger.debug(f"Clamped populations by up to {magnitude:.3e}")
    return clamped


def mean_photon_number(rho: np.ndarray) -> float:
    """Tr(rho n)"""
    diagonal = _diagonal(rho)
    return max(float(np.dot(np.arange(diagonal.size), diagonal)), 0.0)


def normal_ordered_moment(rho: np.ndarray) -> float:
    """Tr(rho a+ a+ a a) = Tr(rho n(n-1)); n(n-1) is diagonal"""
    diagonal = _diagonal(rho)
    n = np.arange(diagonal.size, dtype=float)
    return float(np.dot(n * (n - 1.0), diagonal))


def photon_number_variance(rho: np.ndarray) -> float:
    """Tr(rho n^2) - Tr(rho n)^2"""
    diagonal = _diagonal(rho)
    n = np.arange(diagonal.size, dtype=float)
    mean = float(np.dot(n, diagonal))
    return max(float(np.dot(n * n, diagonal)) - mean * mean, 0.0)


def g2_from_moments(mean_n: float, normal_moment: float,
                    threshold: float = G2_UNDEFINED_THRESHOLD) -> Optional[float]:
    """<a+a+aa> / <a+a>^2, or None below the division guard"""
    if mean_n < threshold:
        return None
    return max(normal_moment / (mean_n * mean_n), 0.0)


def g2_zero_delay(rho: np.ndarray, threshold: float = G2_UNDEFINED_THRESHOLD) -> Optional[float]:
    """
    Zero-delay second-order correlation function

    Returns:
        Optional[float]: g2, or None when <n> is below threshold
    """
    return g2_from_moments(mean_photon_number(rho), normal_ordered_moment(rho), threshold)


def record_from_state(rho: np.ndarray, t: float, k: int) -> ObservableRecord:
    """Collect all observables of rho into one record"""
    return ObservableRecord(
        t=float(t),
        mean_n=mean_photon_number(rho),
        g2=g2_zero_delay(rho),
        populations=populations(rho, k),
        variance_n=photon_number_variance(rho),
    )


def classify_statistics(g2: float, tolerance: float = 1e-9) -> PhotonStatistics:
    """g2 below/at/above one means sub-Poissonian/Poissonian/super-Poissonian"""
    if g2 < 1.0 - tolerance:
        return PhotonStatistics.SUB_POISSONIAN
    if g2 > 1.0 + tolerance:
        return PhotonStatistics.SUPER_POISSONIAN
    return PhotonStatistics.POISSONIAN


@dataclass
class VarianceCheck:
    """Result of checking <(dn)^2> = <n> + <n>^2 (g2 - 1)"""
    direct: float
    from_g2: float
    ratio: float
    statistics: PhotonStatistics


def variance_consistency(rec: ObservableRecord,
                         tolerance: float = CONSISTENCY_TOLERANCE) -> VarianceCheck:
    """
    Verify the variance identity for a record and classify its statistics

    Raises:
        InvalidParameterError: if the record has no defined g2
        ConsistencyError: if the two variance evaluations disagree
    """
    if not rec.g2_defined:
        raise InvalidParameterError(f"g2 undefined at t={rec.t}: <n> = {rec.mean_n:.3e}")

    from_g2 = rec.mean_n + rec.mean_n ** 2 * (rec.g2 - 1.0)
    deviation = abs(from_g2 - rec.variance_n)
    if deviation > tolerance * max(1.0, abs(rec.variance_n)):
        raise ConsistencyError(
            f"Variance identity violated at t={rec.t}: direct {rec.variance_n:.12g} vs {from_g2:.12g}",
            diagnostics={"deviation": deviation},
        )

    return VarianceCheck(
        direct=rec.variance_n,
        from_g2=from_g2,
        ratio=rec.variance_n / rec.mean_n,
        statistics=classify_statistics(rec.g2),
    )
