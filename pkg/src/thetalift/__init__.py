"""Regularized theta lift evaluations and recurrences for mock theta coefficients."""

from .arith import kronecker, l_value_minus1
from .identities import IdentityReport, convention_search
from .lift import PiMultiple, lift_cm_i, lift_finite, lift_series
from .quadforms import BinaryQF, hurwitz

__all__ = [
    "BinaryQF",
    "IdentityReport",
    "PiMultiple",
    "convention_search",
    "hurwitz",
    "kronecker",
    "l_value_minus1",
    "lift_cm_i",
    "lift_finite",
    "lift_series",
]

__version__ = "0.1.0"
