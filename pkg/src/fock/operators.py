#!/usr/bin/env python3
"""
Truncated Fock-space operators
Dense ladder operators and the rotating-frame Hamiltonian of the driven Kerr mode
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from config import DEFAULT_GAMMA
from errors import InvalidParameterError

# Dense complex dim x dim matrix on the basis |0>..|dim-1>
FockOperator = np.ndarray


@dataclass(frozen=True)
class SystemParams:
    """Physical configuration of the resonator, all rates in units of gamma"""
    chi: float
    delta: float = 0.0
    n_th: float = 0.0
    dim: int = 50
    gamma: float = DEFAULT_GAMMA

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 2:
            raise InvalidParameterError(f"Truncation dim must be an integer >= 2, got {self.dim!r}")
        if not self.n_th >= 0:
            raise InvalidParameterError(f"Thermal occupation must be >= 0, got {self.n_th}")
        if not self.gamma > 0:
            raise InvalidParameterError(f"Dissipation rate must be > 0, got {self.gamma}")
        if not (math.isfinite(self.chi) and math.isfinite(self.delta)):
            raise InvalidParameterError("chi and delta must be finite")

    @property
    def downward_rate(self) -> float:
        """Rate of the emission channel, (n_th + 1) gamma"""
        return (self.n_th + 1.0) * self.gamma

    @property
    def upward_rate(self) -> float:
        """Rate of the absorption channel, n_th gamma"""
        return self.n_th * self.gamma

    def with_updates(self, **changes) -> "SystemParams":
        return replace(self, **changes)


def _check_dim(dim: int):
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise InvalidParameterError(f"Truncation dim must be an integer >= 2, got {dim!r}")


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix.flags.writeable = False
    return matrix


def annihilation(dim: int) -> FockOperator:
    """
    Annihilation operator a with a|n> = sqrt(n)|n-1>

    Args:
        dim (int): Truncation size (basis |0>..|dim-1>)

    Returns:
        FockOperator: entry (n-1, n) = sqrt(n), zero elsewhere
    """
    _check_dim(dim)
    return _frozen(np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex))


def creation(dim: int) -> FockOperator:
    """Creation operator a+, the adjoint of annihilation(dim)"""
    return _frozen(annihilation(dim).conj().T.copy())


def number(dim: int) -> FockOperator:
    """Number operator a+a, diagonal 0..dim-1"""
    _check_dim(dim)
    return _frozen(np.diag(np.arange(dim, dtype=float)).astype(complex))


def ladder_energies(dim: int, chi: float, delta: float = 0.0) -> np.ndarray:
    """Diagonal of the undriven rotating-frame Hamiltonian, delta*n + chi*n(n-1)"""
    _check_dim(dim)
    n = np.arange(dim, dtype=float)
    return delta * n + chi * n * (n - 1.0)


def transition_energy(n: int, chi: float, omega0: float = 0.0) -> float:
    """Energy of the |0> -> |n> multiphoton transition, n*omega0 + chi*n(n-1)"""
    if n < 0:
        raise InvalidParameterError(f"Photon number must be >= 0, got {n}")
    return n * omega0 + chi * n * (n - 1)


def effective_hamiltonian(p: SystemParams, drive: complex) -> FockOperator:
    """
    Rotating-frame Hamiltonian H = delta*n + chi*a+^2 a^2 + (drive*a+ + drive^* a)

    Args:
        p (SystemParams): System parameters
        drive (complex): Instantaneous drive amplitude Omega*f(t)

    Returns:
        FockOperator: Hermitian matrix, hbar absorbed into frequency units
    """
    drive = complex(drive)
    if not (math.isfinite(drive.real) and math.isfinite(drive.imag)):
        raise InvalidParameterError(f"Drive amplitude must be finite, got {drive}")

    a = annihilation(p.dim)
    hamiltonian = np.diag(ladder_energies(p.dim, p.chi, p.delta)).astype(complex)
    hamiltonian += drive * a.conj().T + drive.conjugate() * a
    return _frozen(hamiltonian)
