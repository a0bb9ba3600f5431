"""
Solver Utilities
"""

from solvers.utils.validation import (
    StateValidationResult,
    ValidationConfig,
    check_shape,
    check_truncation,
    top_population,
    validate_density_matrix,
    validate_diagnostics,
)

__all__ = [
    "StateValidationResult",
    "ValidationConfig",
    "check_shape",
    "check_truncation",
    "top_population",
    "validate_density_matrix",
    "validate_diagnostics",
]
