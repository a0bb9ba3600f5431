#!/usr/bin/env python3
"""
Acceptance tests on the builtin operating points
Photon blockade, two-photon selectivity, thermal bunching, squeezing dips and Rabi cycling
"""

import pytest

from scenarios.config import builtin_document, parse_scenario
from scenarios.summary import RunSummary, summarize
from solvers.implementations.master_equation import evolve


def run_builtin(name: str, t_end=None, sweep_values=None) -> list[RunSummary]:
    """Master-equation summaries of a builtin, optionally over a shorter window"""
    document = builtin_document(name)
    if t_end is not None:
        document["evolution"]["t_end"] = t_end
    if sweep_values is not None:
        document["sweep"]["values"] = sweep_values
    scenario = parse_scenario(document)

    summaries = []
    for point in scenario.points():
        trajectory = evolve(point.evolution, point.params, point.train)
        summaries.append(summarize(
            trajectory.series, point.train, point.params, point.evolution.t_end,
            scenario=name, solver="master-equation", diagnostics=trajectory.diagnostics,
            sweep_path=scenario.sweep.path if scenario.sweep else None, sweep_value=point.sweep_value,
        ))
    return summaries


@pytest.mark.slow
@pytest.mark.integration
class TestBuiltinScenarios:

    def test_one_photon_blockade(self):
        (summary,) = run_builtin("fig1-onephoton")
        print(f"📈 max P1 = {summary.max_p1:.3f}, max <n> = {summary.max_mean_n:.3f}, "
              f"g2 at peak = {summary.g2_at_peak:.3f}")
        assert summary.max_p1 == pytest.approx(0.8, abs=0.1)
        assert summary.max_mean_n == pytest.approx(0.9, abs=0.1)
        assert summary.g2_at_peak < 0.5
        assert len(summary.pulses) == 4
        assert summary.diagnostics["max_trace_drift_rate"] < 1e-8

    def test_two_photon_selectivity(self):
        (summary,) = run_builtin("fig1-twophoton")
        print(f"📈 max P1 = {summary.max_p1:.3f}, max P2 = {summary.max_p2:.3f}, "
              f"max <n> = {summary.max_mean_n:.3f}")
        assert summary.max_p2 > summary.max_p1
        assert summary.max_p2 == pytest.approx(0.64, abs=0.1)
        assert summary.max_p1 == pytest.approx(0.3, abs=0.1)
        assert summary.max_mean_n == pytest.approx(1.9, rel=0.15)
        assert summary.g2_at_peak == pytest.approx(0.6, abs=0.1)
        assert summary.variance_ratio_at_peak == pytest.approx(0.24, abs=0.1)

    @pytest.mark.parametrize("name", ["fig2-onephoton", "fig2-twophoton"])
    def test_thermal_bunching_before_first_pulse(self, name):
        (summary,) = run_builtin(name, t_end=4.0)
        assert summary.pre_pulse_g2_baseline == pytest.approx(2.0, abs=0.1)

    def test_two_photon_front_bunches_above_thermal_baseline(self):
        (one,) = run_builtin("fig2-onephoton", t_end=4.0)
        (two,) = run_builtin("fig2-twophoton", t_end=4.0)
        print(f"📈 front g2: one-photon {one.front_g2_peak}, two-photon {two.front_g2_peak} "
              f"at <n> = {two.pulses[0].front_mean_n}")
        assert two.front_g2_peak > two.pre_pulse_g2_baseline + 0.2
        assert one.front_g2_peak < two.front_g2_peak

    def test_thermal_occupation_degrades_excitation(self):
        summaries = run_builtin("fig3-sweep")
        values = [s.sweep_value for s in summaries]
        assert values == [0.0, 0.1, 0.25, 0.5, 1.0, 1.9]
        max_p1 = [s.max_p1 for s in summaries]
        print(f"📉 max P1 over n_th {values}: {max_p1}")
        assert all(a > b for a, b in zip(max_p1, max_p1[1:]))
        assert max_p1[-1] < 0.5 * max_p1[0]

    def test_thermal_squeezing_dip(self):
        # measured dips sit well above the quoted values, see DESIGN.md
        (moderate,) = run_builtin("fig4a", t_end=8.0)
        (hot,) = run_builtin("fig4c", t_end=8.0)
        print(f"📉 fig4a: <n> {moderate.max_mean_n:.3f}, g2 {moderate.g2_at_peak:.3f}, "
              f"ratio {moderate.variance_ratio_at_peak:.3f}; fig4c min g2 {hot.min_g2_in_pulses:.3f}")
        assert moderate.g2_at_peak < 1.0
        assert moderate.variance_ratio_at_peak < 1.0
        assert hot.min_g2_in_pulses > moderate.min_g2_in_pulses

    def test_long_pulse_rabi_cycles(self):
        (weak,) = run_builtin("fig1-onephoton", t_end=4.0)
        (summary,) = run_builtin("fig5a")
        print(f"🔁 fig5a: predicted {summary.rabi['predicted_cycles']:.2f}, "
              f"observed {summary.rabi['observed_maxima']}")
        assert summary.rabi["predicted_cycles"] == pytest.approx(3.61, abs=0.01)
        assert summary.rabi["observed_maxima"] == [4, 4, 4]
        assert summary.rabi["within_tolerance"]
        assert summary.pulses[0].p1_maxima > weak.pulses[0].p1_maxima

    def test_long_pulse_two_photon_cycles(self):
        (short,) = run_builtin("fig1-twophoton", t_end=4.0)
        (long,) = run_builtin("fig5b", t_end=8.0)
        print(f"🔁 P2 maxima in the first pulse: {short.pulses[0].p2_maxima} -> {long.pulses[0].p2_maxima}")
        assert long.rabi is None
        assert long.pulses[0].p2_maxima > short.pulses[0].p2_maxima

    def test_strong_pump_adds_rabi_cycles(self):
        (weak,) = run_builtin("fig1-onephoton", t_end=4.0)
        (strong,) = run_builtin("fig6a", t_end=4.0)
        print(f"🔁 P1 maxima in the first pulse: {weak.pulses[0].p1_maxima} -> {strong.pulses[0].p1_maxima}")
        assert strong.pulses[0].p1_maxima > weak.pulses[0].p1_maxima
        assert strong.rabi["predicted_cycles"] == pytest.approx(weak.rabi["predicted_cycles"] * 14.0 / 6.0)
