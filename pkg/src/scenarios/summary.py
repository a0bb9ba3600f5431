#!/usr/bin/env python3
"""
Run summaries
Peak and dip extraction from an ObservableSeries over pulse windows
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config import FRONT_RISE_FRACTION, PULSE_WINDOW_WIDTHS
from drive.pulse import PulseTrain, pulse_windows
from fock.operators import SystemParams
from observables.series import ObservableSeries, maxima_per_window
from oracles.analytic import rabi_consistency, two_level_rabi_check


def _optional(value) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    return None if np.isnan(value) else value


def _min_defined(values: np.ndarray, mask: np.ndarray) -> Optional[float]:
    selected = values[mask & ~np.isnan(values)]
    return float(selected.min()) if selected.size else None


@dataclass
class PulseWindowStats:
    """Extrema inside one window [c - 3T, c + 3T]"""
    center: float
    window: List[float]
    peak_mean_n: float
    peak_time: float
    g2_at_peak: Optional[float]
    min_g2: Optional[float]
    front_g2_peak: Optional[float]
    front_mean_n: Optional[float]
    p1_maxima: int
    p2_maxima: int


@dataclass
class RunSummary:
    """Peak, dip and baseline values of one (scenario, sweep value, solver) run"""
    scenario: str
    solver: str
    sweep_path: Optional[str]
    sweep_value: Optional[Any]
    max_mean_n: float
    max_mean_n_time: float
    max_p1: float
    max_p2: Optional[float]
    g2_at_peak: Optional[float]
    variance_ratio_at_peak: Optional[float]
    min_g2_in_pulses: Optional[float]
    front_g2_peak: Optional[float]
    pre_pulse_g2_baseline: Optional[float]
    periodic_peak_mean_n: Optional[float]
    pulses: List[PulseWindowStats] = field(default_factory=list)
    rabi: Optional[Dict[str, Any]] = None
    windows: Dict[str, Any] = field(default_factory=dict)
    wall_clock_seconds: Optional[float] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return to_plain(asdict(self))


def to_plain(value):
    """Convert numpy scalars and containers to YAML-friendly builtins"""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_plain(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return _optional(value)
    if isinstance(value, float) and np.isnan(value):
        return None
    return value


def summarize(series: ObservableSeries, train: PulseTrain, p: SystemParams, t_end: float,
              scenario: str, solver: str, diagnostics: Optional[Dict[str, Any]] = None,
              sweep_path: Optional[str] = None, sweep_value: Optional[Any] = None) -> RunSummary:
    """
    Extract the reported peaks and dips

    Pulse statistics use the windows [c - 3T, c + 3T] that t_end does not
    cut off. A pulse front is the part of [c - 3T, c] where <n> has
    risen above its value at the window start by FRONT_RISE_FRACTION of the
    pulse's rise; the pre-pulse baseline is [0, t0 - 3T].
    """
    times = series.times
    reach = PULSE_WINDOW_WIDTHS * train.width_T
    spanning = train.spanning(t_end)
    windows = pulse_windows(spanning, t_end, complete_only=True)
    p1 = series.population(1)
    p2 = series.population(2) if series.report_count >= 2 else None
    p1_maxima = maxima_per_window(p1, times, windows)
    p2_maxima = maxima_per_window(p2, times, windows) if p2 is not None else [0] * len(windows)

    peak = int(np.argmax(series.mean_n))
    peak_g2 = _optional(series.g2[peak])
    peak_ratio = float(series.variance_n[peak] / series.mean_n[peak]) if series.mean_n[peak] > 0 else None

    pulses = []
    for (start, end), p1_count, p2_count in zip(windows, p1_maxima, p2_maxima):
        center = end - reach
        window = series.window_mask(start, end)
        if not window.any():
            continue
        local = np.flatnonzero(window)
        local_peak = int(local[np.argmax(series.mean_n[local])])

        before = float(series.mean_n[local[0]])
        rise = float(series.mean_n[local_peak]) - before
        rising = series.mean_n >= before + FRONT_RISE_FRACTION * rise
        front_idx = np.flatnonzero(series.window_mask(start, center) & rising & series.g2_defined) \
            if rise > 0 else np.empty(0, dtype=int)
        front_peak = int(front_idx[np.argmax(series.g2[front_idx])]) if front_idx.size else None

        pulses.append(PulseWindowStats(
            center=float(center),
            window=[float(start), float(end)],
            peak_mean_n=float(series.mean_n[local_peak]),
            peak_time=float(times[local_peak]),
            g2_at_peak=_optional(series.g2[local_peak]),
            min_g2=_min_defined(series.g2, window),
            front_g2_peak=None if front_peak is None else float(series.g2[front_peak]),
            front_mean_n=None if front_peak is None else float(series.mean_n[front_peak]),
            p1_maxima=p1_count,
            p2_maxima=p2_count,
        ))

    in_pulses = np.zeros(len(series), dtype=bool)
    for start, end in pulse_windows(spanning, t_end):
        in_pulses |= series.window_mask(start, end)

    baseline_end = train.t0 - reach
    baseline = series.window_mask(0.0, baseline_end) & series.g2_defined if baseline_end > 0 else None
    pre_pulse = float(np.mean(series.g2[baseline])) if baseline is not None and baseline.any() else None

    fronts = [s.front_g2_peak for s in pulses if s.front_g2_peak is not None]

    rabi = None
    if p.delta == 0 and pulses:
        prediction = two_level_rabi_check(p, train)
        checks = [rabi_consistency(prediction, s.p1_maxima) for s in pulses]
        rabi = {
            "pulse_area": prediction.pulse_area,
            "predicted_cycles": prediction.cycles,
            "observed_maxima": [c.observed for c in checks],
            "within_tolerance": all(c.within_tolerance for c in checks),
        }

    diagnostics = dict(diagnostics or {})
    wall_clock = diagnostics.pop("wall_clock_seconds", None)

    return RunSummary(
        scenario=scenario,
        solver=solver,
        sweep_path=sweep_path,
        sweep_value=sweep_value,
        max_mean_n=float(series.mean_n[peak]),
        max_mean_n_time=float(times[peak]),
        max_p1=float(np.max(p1)),
        max_p2=float(np.max(p2)) if p2 is not None else None,
        g2_at_peak=peak_g2,
        variance_ratio_at_peak=peak_ratio,
        min_g2_in_pulses=_min_defined(series.g2, in_pulses),
        front_g2_peak=max(fronts) if fronts else None,
        pre_pulse_g2_baseline=pre_pulse,
        periodic_peak_mean_n=pulses[-1].peak_mean_n if pulses else None,
        pulses=pulses,
        rabi=rabi,
        windows={
            "pulse_half_width": reach,
            "front": "[c - 3T, c], where <n> has risen",
            "front_rise_fraction": FRONT_RISE_FRACTION,
            "baseline": [0.0, baseline_end],
            "sample_dt": float(times[1] - times[0]) if len(times) > 1 else None,
        },
        wall_clock_seconds=wall_clock,
        diagnostics=diagnostics,
    )


def sweep_curve(summaries: Sequence[RunSummary]) -> List[Dict[str, Any]]:
    """max P1 against the swept value, in sweep order"""
    return [{"value": to_plain(s.sweep_value), "max_p1": s.max_p1} for s in summaries]
