"""
Solvers Package
Master-equation and quantum-trajectory integration plus solver management
"""

from solvers.core import (
    BaseSolver,
    EvolutionConfig,
    Integrator,
    SolveResult,
    SolverManager,
    SolverType,
    StateTrajectory,
    TrajectoryConfig,
)
from solvers.implementations import MasterEquationSolver, TrajectorySolver

__all__ = [
    'BaseSolver',
    'EvolutionConfig',
    'Integrator',
    'SolveResult',
    'SolverManager',
    'SolverType',
    'StateTrajectory',
    'TrajectoryConfig',
    'MasterEquationSolver',
    'TrajectorySolver',
]
