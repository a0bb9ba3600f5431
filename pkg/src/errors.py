#!/usr/bin/env python3
"""
Exception hierarchy for the simulator
ValueError subclasses signal bad input, RuntimeError subclasses numerical failure
"""

from typing import Any, Dict, Optional


class KerrSimError(Exception):
    """Root of all simulator errors"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InvalidParameterError(KerrSimError, ValueError):
    """A physical or numerical parameter is out of range"""


class DimensionMismatchError(InvalidParameterError):
    """A state or operator does not match the configured truncation"""


class ConfigError(KerrSimError, ValueError):
    """A scenario document failed to parse or validate"""


class NumericalError(KerrSimError, RuntimeError):
    """Base class for failures during integration"""


class TruncationOverflowError(NumericalError):
    """Population leaked into the top levels of the truncated basis"""


class StepUnderflowError(NumericalError):
    """The stability cap demands an integration step below the floor"""


class ConsistencyError(NumericalError):
    """Two independent evaluations of the same observable disagree"""


class SolverValidationError(NumericalError):
    """A solver emitted states that violate the density-matrix invariants"""
