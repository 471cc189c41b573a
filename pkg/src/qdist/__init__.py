"""Distinguishability of quantum states and the quantumness of channels.

Core entry points: :func:`d_rho`, :func:`d_pi`, :func:`compare`,
:func:`analyze` and :func:`witness`.
"""
from .analysis import figure1_curves, hypothesis_test, w_min, witness, witness_at, witness_scan
from .channels import KrausMap, amplitude_damping, analyze, apply, bipartite_damping, depolarizing, dual_apply
from .distances import EqualityCase, compare, d_alpha, d_classical, d_pi, d_rho, max_expectation
from .errors import QDistError
from .states import DensityMatrix, difference, difference_from_spectrum, realize_states

__all__ = [
    "DensityMatrix", "EqualityCase", "KrausMap", "QDistError",
    "amplitude_damping", "analyze", "apply", "bipartite_damping", "compare",
    "d_alpha", "d_classical", "d_pi", "d_rho", "depolarizing", "difference",
    "difference_from_spectrum", "dual_apply", "figure1_curves", "hypothesis_test",
    "max_expectation", "realize_states", "w_min", "witness", "witness_at", "witness_scan",
]
__version__ = "0.1.0"
