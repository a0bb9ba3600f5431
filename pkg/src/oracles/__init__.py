"""
Analytic oracles used to certify the solvers
"""

from oracles.analytic import (
    LinearCavitySolution,
    DisplacedThermalStats,
    RabiPrediction,
    RabiConsistency,
    linear_cavity_alpha,
    displaced_thermal_stats,
    thermal_relaxation,
    two_level_rabi_check,
    rabi_consistency,
)

__all__ = [
    "LinearCavitySolution",
    "DisplacedThermalStats",
    "RabiPrediction",
    "RabiConsistency",
    "linear_cavity_alpha",
    "displaced_thermal_stats",
    "thermal_relaxation",
    "two_level_rabi_check",
    "rabi_consistency",
]
