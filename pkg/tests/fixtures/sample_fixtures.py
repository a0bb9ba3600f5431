#!/usr/bin/env python3
"""
Sample scenario fixtures for consistent test data
Provides small scenario documents that run in seconds
"""

import pytest


@pytest.fixture
def tiny_scenario_document(results_dir):
    """
    One short pulse at a small truncation
    Output goes to the test's isolated results directory
    """
    return {
        "name": "tiny",
        "description": "short single-pulse run",
        "system": {"chi": 15, "gamma": 1.0, "delta": 0.0, "n_th": 0.0, "dim": 8},
        "pulses": {"omega": 6, "width_T": 0.4, "period_tau": 5.5, "t0": 1.5, "count": None},
        "evolution": {"t_end": 3.0, "dt_max": 0.01, "sample_dt": 0.05,
                      "initial_state": "thermal", "integrator": "rk4-interaction"},
        "solver": "master-equation",
        "trajectories": {"n_traj": 20, "seed": 7},
        "output": {"directory": str(results_dir), "report_populations": 3},
    }


@pytest.fixture
def tiny_sweep_document(tiny_scenario_document):
    """The tiny scenario swept over the thermal occupation"""
    document = dict(tiny_scenario_document)
    document["name"] = "tiny-sweep"
    document["system"] = dict(document["system"], dim=10)
    document["sweep"] = {"path": "system.n_th", "values": [0.0, 0.05, 0.1]}
    return document
