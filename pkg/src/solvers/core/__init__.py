"""
Solver Core Components
"""

from solvers.core.types import (
    SolverType,
    Integrator,
    EvolutionConfig,
    TrajectoryConfig,
    StateTrajectory,
    SolveResult,
)
from solvers.core.base_solver import BaseSolver
from solvers.core.manager import SolverManager

__all__ = [
    "SolverType",
    "Integrator",
    "EvolutionConfig",
    "TrajectoryConfig",
    "StateTrajectory",
    "SolveResult",
    "BaseSolver",
    "SolverManager",
]
