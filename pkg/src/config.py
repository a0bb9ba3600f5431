#!/usr/bin/env python3
"""
Configuration module for the Kerr resonator simulator
Contains logging setup, numerical defaults and tolerances
"""

import logging

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# Physical defaults (all rates in units of gamma, hbar = 1)
DEFAULT_GAMMA = 1.0
DEFAULT_DIM = 50          # n_max is typically 50
DEFAULT_T0 = 2.0          # center of the first pulse, units of 1/gamma
AUTO_DIM_FLOOR = 12
AUTO_DIM_HEADROOM = 6

# Integration
STEP_SAFETY_FACTOR = 0.05
MIN_STEP = 1e-9
DEFAULT_DT_MAX = 0.01
DEFAULT_SAMPLE_DT = 0.05
DEFAULT_INTEGRATOR = 'rk4-interaction'
ENVELOPE_CUTOFF_WIDTHS = 8.0

# Tolerances
HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-8
POSITIVITY_TOLERANCE = 1e-8
TRUNCATION_TOLERANCE = 1e-6
TRUNCATION_LEVELS = 3
G2_UNDEFINED_THRESHOLD = 1e-6
CONSISTENCY_TOLERANCE = 1e-8

# Reporting
DEFAULT_REPORT_POPULATIONS = 5
PULSE_WINDOW_WIDTHS = 3.0
FRONT_RISE_FRACTION = 0.05

# Trajectory ensembles
DEFAULT_N_TRAJ = 500
DEFAULT_SEED = 20140501
TRAJECTORY_CHUNK_SIZE = 250
MAX_TRAJECTORY_FAILURE_FRACTION = 0.01
DEFAULT_MAX_CONCURRENT = 4

# Solver configuration
SOLVERS = {
    'master-equation': {
        'enabled': True,
    },
    'trajectories': {
        'enabled': True,
        'chunk_size': TRAJECTORY_CHUNK_SIZE,
        'max_concurrent': DEFAULT_MAX_CONCURRENT,
    },
}

# Solver selection order when a scenario asks for "both"
SOLVER_ORDER = ['master-equation', 'trajectories']

# CLI exit codes
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3
