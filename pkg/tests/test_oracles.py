#!/usr/bin/env python3
"""
Analytic oracle tests, including certification of the master-equation solver in the chi = 0 limit
"""

import math

import numpy as np
import pytest

from drive.pulse import PulseTrain
from errors import InvalidParameterError
from fock.operators import SystemParams
from fock.states import displaced_thermal_state
from observables.statistics import g2_zero_delay, mean_photon_number
from oracles.analytic import (
    displaced_thermal_stats,
    linear_cavity_alpha,
    rabi_consistency,
    thermal_relaxation,
    two_level_rabi_check,
)
from solvers.core import EvolutionConfig
from solvers.implementations.master_equation import evolve
from tests.test_helpers import SolverTolerancePresets


@pytest.fixture
def weak_train():
    return PulseTrain(omega=1.0, width_T=0.4, period_tau=5.5)


@pytest.mark.unit
class TestLinearCavity:

    def test_free_decay(self, linear_params, drive_free_train):
        times = np.linspace(0.0, 5.0, 51)
        solution = linear_cavity_alpha(linear_params, drive_free_train, times, alpha0=1.0 + 0j)
        np.testing.assert_allclose(np.abs(solution.alpha), np.exp(-times / 2.0), rtol=1e-9)

    def test_detuning_rotates_amplitude(self, drive_free_train):
        p = SystemParams(chi=0.0, delta=2.0, dim=10)
        times = np.linspace(0.0, 1.0, 11)
        solution = linear_cavity_alpha(p, drive_free_train, times, alpha0=1.0 + 0j)
        np.testing.assert_allclose(solution.alpha, np.exp(-(0.5 + 2.0j) * times), atol=1e-9)

    def test_mean_n_includes_thermal_occupation(self, weak_train):
        p = SystemParams(chi=0.0, n_th=0.3, dim=10)
        solution = linear_cavity_alpha(p, weak_train, np.linspace(0.0, 4.0, 41))
        np.testing.assert_allclose(solution.mean_n, np.abs(solution.alpha) ** 2 + 0.3)

    def test_kerr_cavity_rejected(self, onephoton_params, standard_train):
        with pytest.raises(InvalidParameterError):
            linear_cavity_alpha(onephoton_params, standard_train, np.linspace(0.0, 1.0, 3))


@pytest.mark.unit
class TestClosedForms:

    @pytest.mark.parametrize("alpha,n_th", [(0.7, 0.1), (1.2 - 0.5j, 0.58), (0.0, 1.9)])
    def test_displaced_thermal_matches_state(self, alpha, n_th):
        rho = displaced_thermal_state(50, alpha, n_th)
        stats = displaced_thermal_stats(alpha, n_th)
        assert stats.mean_n == pytest.approx(mean_photon_number(rho), abs=1e-6)
        assert stats.g2 == pytest.approx(g2_zero_delay(rho), abs=1e-5)

    def test_limits(self):
        assert displaced_thermal_stats(1.0, 0.0).g2 == pytest.approx(1.0)
        assert displaced_thermal_stats(0.0, 0.4).g2 == pytest.approx(2.0)
        assert displaced_thermal_stats(0.0, 0.0).g2 is None
        with pytest.raises(InvalidParameterError):
            displaced_thermal_stats(1.0, -0.1)

    def test_thermal_relaxation(self):
        t = np.array([0.0, 1.0, 50.0])
        values = thermal_relaxation(2.0, 0.5, t)
        assert values[0] == 2.0
        assert values[1] == pytest.approx(0.5 + 1.5 * math.exp(-1.0))
        assert values[2] == pytest.approx(0.5)
        assert thermal_relaxation(0.0, 0.5, 1.0, gamma=2.0) == pytest.approx(0.5 * (1.0 - math.exp(-2.0)))


@pytest.mark.unit
class TestRabiLimit:

    def test_pulse_area_and_cycles(self, onephoton_params, standard_train):
        prediction = two_level_rabi_check(onephoton_params, standard_train)
        assert prediction.pulse_area == pytest.approx(8.508, abs=1e-3)
        assert prediction.cycles == pytest.approx(1.354, abs=1e-3)
        assert prediction.warnings == []

    def test_cycles_scale_with_drive(self, onephoton_params, standard_train):
        strong = PulseTrain(omega=14.0, width_T=0.4, period_tau=5.5)
        ratio = two_level_rabi_check(onephoton_params, strong).cycles / \
            two_level_rabi_check(onephoton_params, standard_train).cycles
        assert ratio == pytest.approx(14.0 / 6.0)

    def test_warnings_outside_two_level_limit(self, twophoton_params, standard_train):
        assert any("delta" in w for w in two_level_rabi_check(twophoton_params, standard_train).warnings)
        weak = two_level_rabi_check(SystemParams(chi=2.0), standard_train)
        assert any("selectivity" in w for w in weak.warnings)

    def test_consistency_tolerance(self, onephoton_params, standard_train):
        prediction = two_level_rabi_check(onephoton_params, standard_train)
        assert rabi_consistency(prediction, 2).within_tolerance
        assert rabi_consistency(prediction, 1).within_tolerance
        assert not rabi_consistency(prediction, 3).within_tolerance


@pytest.mark.integration
class TestMasterEquationCertification:

    def test_vacuum_response_matches_linear_cavity(self, linear_params, weak_train):
        cfg = EvolutionConfig(t_end=10.0, initial_state="vacuum")
        trajectory = evolve(cfg, linear_params, weak_train)
        oracle = linear_cavity_alpha(linear_params, weak_train.spanning(10.0), trajectory.times)
        np.testing.assert_allclose(trajectory.expect_a, oracle.alpha, atol=SolverTolerancePresets.LINEAR_CAVITY)
        np.testing.assert_allclose(trajectory.series.mean_n, oracle.mean_n, atol=SolverTolerancePresets.LINEAR_CAVITY)

    def test_thermal_response_is_displaced_thermal(self, weak_train):
        p = SystemParams(chi=0.0, n_th=0.3, dim=20)
        trajectory = evolve(EvolutionConfig(t_end=6.0), p, weak_train)
        oracle = linear_cavity_alpha(p, weak_train.spanning(6.0), trajectory.times)
        np.testing.assert_allclose(trajectory.expect_a, oracle.alpha, atol=SolverTolerancePresets.DISPLACED_THERMAL)

        expected_g2 = [displaced_thermal_stats(alpha, 0.3).g2 for alpha in oracle.alpha]
        np.testing.assert_allclose(trajectory.series.g2, expected_g2, atol=SolverTolerancePresets.DISPLACED_THERMAL)
        np.testing.assert_allclose(trajectory.series.mean_n, oracle.mean_n,
                                   atol=SolverTolerancePresets.DISPLACED_THERMAL)
