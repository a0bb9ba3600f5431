#!/usr/bin/env python3
"""
Base Solver Interface
Contains the abstract base class that all solvers must implement
"""

import logging
from abc import ABC, abstractmethod

from drive.pulse import PulseTrain
from errors import KerrSimError, SolverValidationError
from fock.operators import SystemParams
from solvers.core.types import EvolutionConfig, SolveResult, SolverType
from solvers.utils.validation import StateValidationResult, ValidationConfig, validate_diagnostics

logger = logging.getLogger(__name__)


class BaseSolver(ABC):
    """Abstract base class for master-equation and trajectory solvers"""

    def __init__(self, name: str, solver_type: SolverType):
        self.name = name
        self.solver_type = solver_type
        self.is_available = False
        self.error_count = 0
        self.last_error = None

    @abstractmethod
    async def initialize(self) -> bool:
        """
        Prepare the solver for use

        Returns:
            bool: True if the solver can run
        """
        pass

    async def solve(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> SolveResult:
        """
        Run the solver and validate its output (template method)

        Args:
            p (SystemParams): Physical configuration
            train (PulseTrain): Drive parameters
            cfg (EvolutionConfig): Time grid and integration settings

        Returns:
            SolveResult: Observable series and diagnostics

        Raises:
            KerrSimError: parameter or numerical failures, with error counters updated
        """
        try:
            result = await self._perform_solve(p, train, cfg)
        except KerrSimError as e:
            logger.error(f"{self.name}: Solve failed: {e}")
            self.last_error = str(e)
            self.error_count += 1
            raise

        validation_result = self.validate_output(result)
        if not validation_result.is_valid:
            self.last_error = "; ".join(validation_result.errors)
            self.error_count += 1
            raise SolverValidationError(
                f"{self.name}: output failed validation: {validation_result.errors}",
                diagnostics=result.diagnostics,
            )
        return result

    @abstractmethod
    async def _perform_solve(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> SolveResult:
        """Solver-specific implementation (without validation)"""
        pass

    @abstractmethod
    def validate_params(self, p: SystemParams, train: PulseTrain, cfg: EvolutionConfig) -> tuple[bool, str]:
        """
        Validate that this solver can handle the given configuration

        Returns:
            tuple[bool, str]: (is_valid, error_message)
        """
        pass

    def validate_output(self, result: SolveResult, config: ValidationConfig = None) -> StateValidationResult:
        """
        Check the invariants recorded in the run diagnostics

        Args:
            result (SolveResult): Solver output
            config (ValidationConfig): Tolerances (uses defaults if None)
        """
        validation_result = validate_diagnostics(result.diagnostics, config)

        if validation_result.is_valid:
            logger.info(f"{self.name}: Output validation passed ({len(result.series)} samples)")
        else:
            for error in validation_result.errors:
                logger.warning(f"{self.name}: Validation error - {error}")
        for warning in validation_result.warnings:
            logger.warning(f"{self.name}: Validation warning - {warning}")

        return validation_result
