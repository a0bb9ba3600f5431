#!/usr/bin/env python3
"""
State Validation Utilities
Contains checks of the density-matrix invariants and of truncation adequacy
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from config import (
    HERMITIAN_TOLERANCE,
    POSITIVITY_TOLERANCE,
    TRACE_TOLERANCE,
    TRUNCATION_LEVELS,
    TRUNCATION_TOLERANCE,
)
from errors import DimensionMismatchError, TruncationOverflowError

logger = logging.getLogger(__name__)


@dataclass
class StateValidationResult:
    """Result of validating a density matrix or a solver run"""
    is_valid: bool
    hermitian_deviation: Optional[float] = None
    trace: Optional[float] = None
    min_eigenvalue: Optional[float] = None
    top_population: Optional[float] = None
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def has_errors(self) -> bool:
        return len(self.errors) > 0

    def has_warnings(self) -> bool:
        return len(self.warnings) > 0


@dataclass
class ValidationConfig:
    """Tolerances for state validation"""
    hermitian_tolerance: float = HERMITIAN_TOLERANCE
    trace_tolerance: float = TRACE_TOLERANCE
    positivity_tolerance: float = POSITIVITY_TOLERANCE
    truncation_tolerance: float = TRUNCATION_TOLERANCE
    truncation_levels: int = TRUNCATION_LEVELS
    # per unit time, before renormalization
    trace_drift_tolerance: float = TRACE_TOLERANCE


def top_population(populations: np.ndarray, levels: int = TRUNCATION_LEVELS) -> float:
    """Population held by the highest `levels` basis states (diagonal or density matrix)"""
    values = np.asarray(populations)
    if values.ndim == 2:
        values = np.real(np.diagonal(values))
    return float(np.sum(np.real(values[..., -levels:]), axis=-1).max()) if values.size else 0.0


def check_shape(rho: np.ndarray, dim: int):
    """
    Raises:
        DimensionMismatchError: if rho is not dim x dim
    """
    shape = np.shape(rho)
    if shape != (dim, dim):
        raise DimensionMismatchError(f"State of shape {shape} does not match truncation dim={dim}")


def check_truncation(rho: np.ndarray, t: float, config: ValidationConfig = None) -> float:
    """
    Verify that the top levels of the basis stay unpopulated

    Returns:
        float: population of the top levels

    Raises:
        TruncationOverflowError: if it exceeds the tolerance
    """
    if config is None:
        config = ValidationConfig()
    top = top_population(rho, config.truncation_levels)
    if top > config.truncation_tolerance:
        dim = np.shape(rho)[-1]
        raise TruncationOverflowError(
            f"Top {config.truncation_levels} levels hold population {top:.3e} at t={t:.4g} "
            f"(dim={dim}); increase the truncation",
            diagnostics={"t": float(t), "top_population": top, "dim": int(dim)},
        )
    return top


def validate_density_matrix(rho: np.ndarray, dim: Optional[int] = None,
                            config: ValidationConfig = None) -> StateValidationResult:
    """
    Check Hermiticity, unit trace and numerical positivity

    Args:
        rho (ndarray): Candidate density matrix
        dim (int): Expected truncation (None skips the shape check)
        config (ValidationConfig): Tolerances (uses defaults if None)

    Returns:
        StateValidationResult: Detailed validation results
    """
    if config is None:
        config = ValidationConfig()

    matrix = np.asarray(rho)
    result = StateValidationResult(is_valid=True)

    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        result.is_valid = False
        result.errors.append(f"Not a square matrix: shape {matrix.shape}")
        return result
    if dim is not None and matrix.shape[0] != dim:
        result.is_valid = False
        result.errors.append(f"Shape {matrix.shape} does not match dim={dim}")
        return result
    if not np.all(np.isfinite(matrix)):
        result.is_valid = False
        result.errors.append("Matrix contains non-finite entries")
        return result

    result.hermitian_deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
    if result.hermitian_deviation > config.hermitian_tolerance:
        result.is_valid = False
        result.errors.append(f"Not Hermitian: max deviation {result.hermitian_deviation:.3e}")

    result.trace = float(np.real(np.trace(matrix)))
    if abs(result.trace - 1.0) > config.trace_tolerance:
        result.is_valid = False
        result.errors.append(f"Trace {result.trace:.12g} differs from 1")

    result.min_eigenvalue = float(np.min(np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))))
    if result.min_eigenvalue < -config.positivity_tolerance:
        result.is_valid = False
        result.errors.append(f"Negative eigenvalue {result.min_eigenvalue:.3e}")

    result.top_population = top_population(matrix, config.truncation_levels)
    if result.top_population > config.truncation_tolerance:
        result.warnings.append(f"Top levels hold population {result.top_population:.3e}")

    return result


def validate_diagnostics(diagnostics: Dict[str, Any], config: ValidationConfig = None) -> StateValidationResult:
    """
    Validate the invariants a solver recorded while it ran

    Missing keys are skipped, so solvers report only what they measure.
    """
    if config is None:
        config = ValidationConfig()

    result = StateValidationResult(is_valid=True)
    result.min_eigenvalue = diagnostics.get("min_eigenvalue")
    result.top_population = diagnostics.get("max_top_population")

    drift = diagnostics.get("max_trace_drift_rate")
    if drift is not None and drift > config.trace_drift_tolerance:
        result.is_valid = False
        result.errors.append(f"Trace drift {drift:.3e} per unit time exceeds {config.trace_drift_tolerance:.1e}")

    if result.min_eigenvalue is not None and result.min_eigenvalue < -config.positivity_tolerance:
        result.is_valid = False
        result.errors.append(f"Sampled state with eigenvalue {result.min_eigenvalue:.3e}")

    if result.top_population is not None and result.top_population > config.truncation_tolerance:
        result.is_valid = False
        result.errors.append(f"Top-level population {result.top_population:.3e} exceeds tolerance")

    failures = diagnostics.get("max_failure_fraction")
    if failures:
        result.warnings.append(f"Up to {failures:.2%} of trajectories failed in a sample bin")

    return result
