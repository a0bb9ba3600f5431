"""
Fock-space core: ladder operators, Kerr Hamiltonian and state constructors
"""

from fock.operators import (
    FockOperator,
    SystemParams,
    annihilation,
    creation,
    number,
    ladder_energies,
    transition_energy,
    effective_hamiltonian,
)
from fock.states import (
    DensityMatrix,
    vacuum,
    fock_state,
    thermal_state,
    coherent_amplitudes,
    coherent_state,
    displaced_thermal_state,
    temp_to_nth,
)

__all__ = [
    "FockOperator",
    "SystemParams",
    "annihilation",
    "creation",
    "number",
    "ladder_energies",
    "transition_energy",
    "effective_hamiltonian",
    "DensityMatrix",
    "vacuum",
    "fock_state",
    "thermal_state",
    "coherent_amplitudes",
    "coherent_state",
    "displaced_thermal_state",
    "temp_to_nth",
]
