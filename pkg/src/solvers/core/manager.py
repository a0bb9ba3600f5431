#!/usr/bin/env python3
"""
Solver Manager
Manages solver registration and direct dispatch (no fallbacks)
"""

import logging
from typing import Any, Dict, List, Optional

from drive.pulse import PulseTrain
from fock.operators import SystemParams
from solvers.core.base_solver import BaseSolver
from solvers.core.types import EvolutionConfig, SolveResult

logger = logging.getLogger(__name__)


class SolverManager:
    """Manages solver registration and direct dispatch (no fallbacks)"""

    def __init__(self):
        self.solvers: Dict[str, BaseSolver] = {}
        self.logger = logger

    def register_solver(self, solver: BaseSolver):
        """Register a solver"""
        self.solvers[solver.name] = solver
        self.logger.info(f"Registered solver: {solver.name}")

    async def initialize(self, solver_configs: Dict[str, Dict[str, Any]]):
        """Initialize all registered solvers"""
        for name, solver in self.solvers.items():
            if name not in solver_configs or not solver_configs[name].get('enabled', True):
                self.logger.info(f"Skipping disabled solver: {name}")
                continue

            try:
                success = await solver.initialize()
                if success:
                    self.logger.info(f"Successfully initialized solver: {name}")
                else:
                    self.logger.warning(f"Failed to initialize solver: {name}")
            except Exception as e:
                self.logger.error(f"Error initializing solver {name}: {e}")

    async def solve_with_solver(self, solver_name: str, p: SystemParams, train: PulseTrain,
                                cfg: EvolutionConfig) -> tuple[Optional[SolveResult], str]:
        """
        Run the named solver (no fallback)

        Lookup, availability and parameter failures come back as (None, message);
        numerical failures propagate as exceptions.

        Returns:
            tuple[Optional[SolveResult], str]: (result, error_message)
        """
        if solver_name not in self.solvers:
            available = list(self.solvers.keys())
            error_msg = f"Solver '{solver_name}' not found. Available solvers: {available}"
            self.logger.error(error_msg)
            return None, error_msg

        solver = self.solvers[solver_name]

        if not solver.is_available:
            error_msg = f"Solver '{solver_name}' is not available. Last error: {solver.last_error}"
            self.logger.error(error_msg)
            return None, error_msg

        is_valid, validation_error = solver.validate_params(p, train, cfg)
        if not is_valid:
            error_msg = f"Invalid parameters for {solver_name}: {validation_error}"
            self.logger.error(error_msg)
            return None, error_msg

        self.logger.info(f"Solving with {solver_name}")
        result = await solver.solve(p, train, cfg)
        self.logger.info(f"Successfully solved with {solver_name}")
        return result, ""

    def list_available_solvers(self) -> List[str]:
        """List names of all available solvers"""
        return [name for name, solver in self.solvers.items() if solver.is_available]
