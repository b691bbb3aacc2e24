"""Spin entanglement of two scattered electrons at order (v/c)^2.

Hartree atomic units throughout: hbar = m_e = e = 1 and c = 1/alpha.
"""

__version__ = "0.1.0"

from .constants import ALPHA
from .spin_algebra import (
    SpinState,
    bell_state,
    pauli,
    projected_spin_dot,
    swap_operator,
    symmetric_state,
)
from .entanglement import SchmidtForm, concurrence, is_separable, schmidt_decompose
from .kinematics import Kinematics, TwoElectronState, cm_kinematics, make_kinematics, make_state
from .potentials import coulomb_kernel, spin_orbit_kernel, spin_spin_kernel, total_kernel
from .fourier_oracle import oracle_fourier
from .born1 import AmplitudeOperator, first_born, selection_rule_report, transition_amplitude
from .born2 import (
    IntermediateGrid,
    brown_mittleman,
    crossed_element,
    crossed_grid,
    diff_potential,
    ladder_element,
    ladder_grid,
)
from .evolution import EvolutionRecord, scan_entanglement, scatter_spin

__all__ = [
    "ALPHA",
    "SpinState", "bell_state", "pauli", "projected_spin_dot", "swap_operator", "symmetric_state",
    "SchmidtForm", "concurrence", "is_separable", "schmidt_decompose",
    "Kinematics", "TwoElectronState", "cm_kinematics", "make_kinematics", "make_state",
    "coulomb_kernel", "spin_orbit_kernel", "spin_spin_kernel", "total_kernel",
    "oracle_fourier",
    "AmplitudeOperator", "first_born", "selection_rule_report", "transition_amplitude",
    "IntermediateGrid", "brown_mittleman", "crossed_element", "crossed_grid",
    "diff_potential", "ladder_element", "ladder_grid",
    "EvolutionRecord", "scan_entanglement", "scatter_spin",
]
