"""Exact algebra and verification tools for second-order conformal superintegrable Laplace systems.

The layers, bottom up: ``algebra`` (exact polynomials and rational functions
over Q and Q(i)), ``phase_space`` and ``diffop`` (classical and quantum
symmetries), ``killing`` and ``bd_canonical`` (conformal Killing tensors,
Bertrand-Darboux equations, canonical potential equations), ``integrability``
and ``closure`` (integrability conditions and their derived closure),
``stackel`` and ``pentaspherical`` (transforms and coordinates), and
``harness`` (the command-line verification runner).
"""

from .algebra import GaussianRational, I, Polynomial, RationalFunction, VariableRegistry
from .diffop import DiffOperator, commutator, compose
from .phase_space import ClassicalHamiltonian, PhaseFunction, PhaseSpace, poisson_bracket

__version__ = "0.1.0"

__all__ = [
    "ClassicalHamiltonian",
    "DiffOperator",
    "GaussianRational",
    "I",
    "PhaseFunction",
    "PhaseSpace",
    "Polynomial",
    "RationalFunction",
    "VariableRegistry",
    "commutator",
    "compose",
    "poisson_bracket",
]
