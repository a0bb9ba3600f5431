#!/usr/bin/env python3
"""
Density-matrix constructors on the truncated number basis
"""

import math

import numpy as np
from scipy.linalg import expm

from errors import InvalidParameterError
from fock.operators import annihilation, _check_dim, _frozen

# Hermitian, unit-trace dim x dim complex matrix
DensityMatrix = np.ndarray


def _diagonal_state(populations: np.ndarray) -> DensityMatrix:
    populations = populations / populations.sum()
    return _frozen(np.diag(populations).astype(complex))


def vacuum(dim: int) -> DensityMatrix:
    """Projector |0><0|"""
    return fock_state(dim, 0)


def fock_state(dim: int, n: int) -> DensityMatrix:
    """
    Number-state projector |n><n|

    Raises:
        InvalidParameterError: if n is outside 0..dim-1
    """
    _check_dim(dim)
    if not 0 <= n < dim:
        raise InvalidParameterError(f"Fock level {n} outside truncated basis of size {dim}")
    populations = np.zeros(dim)
    populations[n] = 1.0
    return _diagonal_state(populations)


def thermal_state(dim: int, n_th: float) -> DensityMatrix:
    """
    Gibbs state of the mode with mean occupation n_th

    Populations follow p_n ~ (n_th / (1 + n_th))^n and are renormalized over
    the truncated basis, so the trace is exactly one.
    """
    _check_dim(dim)
    if not n_th >= 0:
        raise InvalidParameterError(f"Thermal occupation must be >= 0, got {n_th}")
    if n_th == 0:
        return vacuum(dim)
    ratio = n_th / (1.0 + n_th)
    return _diagonal_state(ratio ** np.arange(dim, dtype=float))


def coherent_amplitudes(dim: int, alpha: complex) -> np.ndarray:
    """Normalized number-basis amplitudes of |alpha>, renormalized over the truncation"""
    _check_dim(dim)
    alpha = complex(alpha)
    amplitudes = np.empty(dim, dtype=complex)
    amplitudes[0] = 1.0
    for n in range(1, dim):
        amplitudes[n] = amplitudes[n - 1] * alpha / math.sqrt(n)
    amplitudes *= math.exp(-abs(alpha) ** 2 / 2.0)
    return amplitudes / np.linalg.norm(amplitudes)


def coherent_state(dim: int, alpha: complex) -> DensityMatrix:
    """Coherent-state projector with Poissonian populations e^{-|a|^2}|a|^{2n}/n!"""
    amplitudes = coherent_amplitudes(dim, alpha)
    return _frozen(np.outer(amplitudes, amplitudes.conj()))


def displaced_thermal_state(dim: int, alpha: complex, n_th: float, padding: int = 20) -> DensityMatrix:
    """
    D(alpha) rho_th D(alpha)+ built in a padded basis and truncated to dim

    This is the state class the driven linear cavity relaxes into; it is used
    to cross-check the closed-form displaced-thermal statistics.
    """
    _check_dim(dim)
    work_dim = dim + padding
    a = np.asarray(annihilation(work_dim))
    displacement = expm(complex(alpha) * a.conj().T - complex(alpha).conjugate() * a)
    rho = displacement @ np.asarray(thermal_state(work_dim, n_th)) @ displacement.conj().T
    rho = rho[:dim, :dim]
    rho = 0.5 * (rho + rho.conj().T)
    return _frozen(rho / np.trace(rho).real)


def temp_to_nth(hbar_omega_over_kT: float) -> float:
    """
    Bose-Einstein occupation 1 / (exp(hbar*omega / k T) - 1)

    Raises:
        InvalidParameterError: if the ratio is not strictly positive
    """
    if not hbar_omega_over_kT > 0:
        raise InvalidParameterError(f"hbar*omega/kT must be > 0, got {hbar_omega_over_kT}")
    # exp(-x) / (1 - exp(-x)) stays finite for large x
    return math.exp(-hbar_omega_over_kT) / -math.expm1(-hbar_omega_over_kT)
