"""
Mocks package for solver testing

Provides mock solvers with analytic output for predictable testing
of the solver manager and scenario runner.
"""

from tests.mocks.solver import MockSolver, MockSolverFactory, coherent_series

__all__ = [
    'MockSolver',
    'MockSolverFactory',
    'coherent_series',
]
