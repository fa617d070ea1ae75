from .gaussian import GaussianRational, I
from .polynomial import Polynomial, poly_divrem
from .rational import PoleError, RationalFunction
from .registry import RegistryMismatch, UnknownVariable, VariableKind, VariableRegistry

__all__ = [
    "GaussianRational",
    "I",
    "Polynomial",
    "poly_divrem",
    "PoleError",
    "RationalFunction",
    "RegistryMismatch",
    "UnknownVariable",
    "VariableKind",
    "VariableRegistry",
]
