#!/usr/bin/env python3
"""
Pulse-train drive tests
"""

import math

import numpy as np
import pytest

from drive.pulse import (
    PulseTrain,
    default_count,
    drive_amplitude,
    envelope,
    max_envelope,
    pulse_centers,
    pulse_windows,
    resonance_detuning,
    validate_selectivity,
)
from errors import InvalidParameterError
from fock.operators import SystemParams


def brute_force_envelope(train: PulseTrain, t: np.ndarray) -> np.ndarray:
    count = train.count
    return sum(np.exp(-((t - train.t0 - n * train.period_tau) / train.width_T) ** 2) for n in range(count))


@pytest.mark.unit
class TestEnvelope:

    def test_unit_peak_at_pulse_center(self, standard_train):
        assert envelope(standard_train, 2.0) == 1.0
        assert envelope(standard_train, 2.0 + 3 * 5.5) == 1.0

    def test_scalar_and_array_inputs(self, standard_train):
        assert isinstance(envelope(standard_train, 1.0), float)
        values = envelope(standard_train, np.linspace(0.0, 10.0, 7))
        assert values.shape == (7,)

    def test_pre_pulse_tail(self, standard_train):
        assert envelope(standard_train, 0.0) == pytest.approx(math.exp(-25.0), rel=1e-12)

    def test_matches_direct_sum_for_overlapping_pulses(self):
        train = PulseTrain(omega=1.0, width_T=0.4, period_tau=0.5, t0=1.0, count=12)
        t = np.linspace(0.0, 8.0, 801)
        np.testing.assert_allclose(envelope(train, t), brute_force_envelope(train, t), atol=1e-12)

    def test_finite_count_stops_the_train(self):
        train = PulseTrain(omega=6.0, width_T=0.4, period_tau=5.5, count=2)
        assert envelope(train, 2.0 + 5.5) == 1.0
        assert envelope(train, 2.0 + 2 * 5.5) == 0.0

    def test_drive_amplitude(self, standard_train):
        assert drive_amplitude(standard_train, 2.0) == 6.0 + 0j
        complex_train = PulseTrain(omega=3.0 + 4.0j, width_T=0.4, period_tau=5.5)
        assert abs(drive_amplitude(complex_train, 2.0)) == pytest.approx(5.0)

    def test_max_envelope(self, standard_train):
        assert max_envelope(standard_train, 22.0) == pytest.approx(1.0)


@pytest.mark.unit
class TestPulseTrain:

    @pytest.mark.parametrize("kwargs", [
        {"width_T": 0.0},
        {"period_tau": -1.0},
        {"count": 0},
    ])
    def test_invalid_train_rejected(self, kwargs):
        with pytest.raises(InvalidParameterError):
            PulseTrain(**{"omega": 6.0, "width_T": 0.4, "period_tau": 5.5, **kwargs})

    def test_default_count_spans_window(self):
        assert default_count(22.0, 5.5) == 5
        assert default_count(16.0, 4.0) == 5
        train = PulseTrain(omega=6.0, width_T=0.4, period_tau=5.5).spanning(22.0)
        assert train.count == 5

    def test_spanning_keeps_explicit_count(self):
        train = PulseTrain(omega=6.0, width_T=0.4, period_tau=5.5, count=2)
        assert train.spanning(100.0).count == 2

    def test_pulse_centers_and_windows(self, standard_train):
        centers = pulse_centers(standard_train, 22.0)
        assert centers == pytest.approx([2.0, 7.5, 13.0, 18.5])
        windows = pulse_windows(standard_train, 22.0)
        assert windows[0] == pytest.approx((0.8, 3.2))
        assert windows[-1] == pytest.approx((17.3, 19.7))

    def test_window_clipped_at_origin(self):
        train = PulseTrain(omega=6.0, width_T=0.8, period_tau=4.0, t0=1.0)
        assert pulse_windows(train, 10.0)[0][0] == 0.0

    def test_complete_windows_drop_trailing_cut(self):
        # long pulses over 16/gamma: the last two windows run past t_end
        train = PulseTrain(omega=8.0, width_T=0.8, period_tau=4.0, t0=2.0)
        clipped = pulse_windows(train, 16.0)
        np.testing.assert_allclose(clipped[-2:], [(11.6, 16.0), (15.6, 16.0)])
        complete = pulse_windows(train, 16.0, complete_only=True)
        np.testing.assert_allclose(complete, [(0.0, 4.4), (3.6, 8.4), (7.6, 12.4)])


@pytest.mark.unit
class TestResonances:

    def test_resonance_detuning(self):
        assert resonance_detuning(1, 15.0) == 0.0
        assert resonance_detuning(2, 30.0) == -30.0
        assert resonance_detuning(3, 10.0) == -20.0
        with pytest.raises(InvalidParameterError):
            resonance_detuning(0, 15.0)

    def test_selectivity_of_builtin_operating_point(self, standard_train, onephoton_params):
        report = validate_selectivity(standard_train, onephoton_params)
        assert report.is_valid
        assert report.warnings == []
        assert report.chi_T == pytest.approx(6.0)

    def test_selectivity_warnings(self):
        train = PulseTrain(omega=1.0, width_T=2.0, period_tau=0.5)
        report = validate_selectivity(train, SystemParams(chi=0.2))
        assert not report.within_lifetime
        assert not report.selective
        assert not report.separated
        assert len(report.warnings) == 3
