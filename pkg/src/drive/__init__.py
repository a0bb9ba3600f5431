"""
Pulsed drive: Gaussian pulse-train envelope and resonance detunings
"""

from drive.pulse import (
    PulseTrain,
    SelectivityReport,
    default_count,
    envelope,
    drive_amplitude,
    pulse_centers,
    pulse_windows,
    max_envelope,
    resonance_detuning,
    validate_selectivity,
)

__all__ = [
    "PulseTrain",
    "SelectivityReport",
    "default_count",
    "envelope",
    "drive_amplitude",
    "pulse_centers",
    "pulse_windows",
    "max_envelope",
    "resonance_detuning",
    "validate_selectivity",
]
