#!/usr/bin/env python3
"""
Time series of observables on a sample grid
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import find_peaks

from config import G2_UNDEFINED_THRESHOLD
from observables.statistics import ObservableRecord


@dataclass
class ObservableSeries:
    """
    Per-sample observables; g2 holds NaN where it is undefined

    Standard errors and failure counts are only filled by ensemble solvers.
    """
    times: np.ndarray
    mean_n: np.ndarray
    g2: np.ndarray
    populations: np.ndarray
    variance_n: np.ndarray
    envelope: np.ndarray
    g2_threshold: float = G2_UNDEFINED_THRESHOLD
    mean_n_stderr: Optional[np.ndarray] = None
    g2_stderr: Optional[np.ndarray] = None
    failures: Optional[np.ndarray] = None
    extras: Dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def g2_defined(self) -> np.ndarray:
        return ~np.isnan(self.g2)

    @property
    def report_count(self) -> int:
        """Highest reported population index k"""
        return int(self.populations.shape[1]) - 1

    def population(self, n: int) -> np.ndarray:
        return self.populations[:, n]

    def record(self, index: int) -> ObservableRecord:
        g2 = self.g2[index]
        return ObservableRecord(
            t=float(self.times[index]),
            mean_n=float(self.mean_n[index]),
            g2=None if np.isnan(g2) else float(g2),
            populations=self.populations[index].copy(),
            variance_n=float(self.variance_n[index]),
            g2_threshold=self.g2_threshold,
        )

    def window_mask(self, start: float, end: float) -> np.ndarray:
        """Samples with start <= t <= end, widened by a relative 1e-9 for floating-point grid rounding"""
        slack = 1e-9 * max(1.0, abs(end))
        return (self.times >= start - slack) & (self.times <= end + slack)


def series_from_records(records: Sequence[ObservableRecord], envelope: np.ndarray) -> ObservableSeries:
    """Stack per-sample records into arrays"""
    return ObservableSeries(
        times=np.array([r.t for r in records]),
        mean_n=np.array([r.mean_n for r in records]),
        g2=np.array([np.nan if r.g2 is None else r.g2 for r in records]),
        populations=np.vstack([r.populations for r in records]),
        variance_n=np.array([r.variance_n for r in records]),
        envelope=np.asarray(envelope, dtype=float),
        g2_threshold=records[0].g2_threshold if records else G2_UNDEFINED_THRESHOLD,
    )


def count_oscillation_maxima(values: np.ndarray, times: np.ndarray,
                             window: Tuple[float, float], prominence: float = 0.02) -> int:
    """
    Count local maxima of a population curve inside a time window

    Maxima less prominent than `prominence` are treated as integration ripple.
    """
    start, end = window
    mask = (times >= start) & (times <= end)
    segment = np.asarray(values)[mask]
    if segment.size < 3:
        return 0
    peaks, _ = find_peaks(segment, prominence=prominence)
    return int(peaks.size)


def maxima_per_window(values: np.ndarray, times: np.ndarray,
                      windows: Sequence[Tuple[float, float]], prominence: float = 0.02) -> List[int]:
    return [count_oscillation_maxima(values, times, w, prominence) for w in windows]
