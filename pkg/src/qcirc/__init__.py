"""Exact statevector simulation of small quantum circuits and the classic oracle algorithms."""
from .circuit import Circuit, CircuitError, Control, validate
from .linalg import SquareUnitary, StateVector, apply_unitary, check_unitary, kron
from .sim import exact_distribution, final_state, run, sample

__version__ = "0.1.0"

__all__ = [
    "Circuit", "CircuitError", "Control", "validate",
    "SquareUnitary", "StateVector", "apply_unitary", "check_unitary", "kron",
    "exact_distribution", "final_state", "run", "sample",
]
