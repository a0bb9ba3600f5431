#!/usr/bin/env python3
"""
Kerr Resonator Simulator
Pulsed, thermal, dissipative Kerr resonator: master-equation and quantum-trajectory solvers
"""

from config import logger
from scenarios.runner import ScenarioRunner
from cli import main
from solvers import SolverManager, BaseSolver, SolverType

__version__ = "1.0.0"

__all__ = [
    "logger",
    "ScenarioRunner",
    "SolverManager",
    "BaseSolver",
    "SolverType",
    "main"
]
