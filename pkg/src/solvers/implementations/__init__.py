"""
Solver Implementations
"""

from solvers.implementations.master_equation import (
    LindbladGenerator,
    MasterEquationSolver,
    evolve,
    liouvillian_apply,
    step_size,
)
from solvers.implementations.trajectories import (
    EnsembleAccumulator,
    TrajectoryKernel,
    TrajectoryRecord,
    TrajectorySolver,
    ensemble_average,
    run_trajectory,
)

__all__ = [
    "LindbladGenerator",
    "MasterEquationSolver",
    "evolve",
    "liouvillian_apply",
    "step_size",
    "EnsembleAccumulator",
    "TrajectoryKernel",
    "TrajectoryRecord",
    "TrajectorySolver",
    "ensemble_average",
    "run_trajectory",
]
