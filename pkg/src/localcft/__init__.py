"""localcft: exact-arithmetic local class field theory at desk scale.

Truncated Witt vectors, unramified p-adic fields, Eisenstein extensions,
Artin-Hasse unit coordinates, norm groups and the Neukirch / Hazewinkel
reciprocity maps over finite residue fields, together with brute-force
verifiers for the classical theorems these objects satisfy.
"""

__version__ = "0.1.0"

from .residue_field import FieldSpec, FqElem, RatFuncField, RatFuncElem, solve_artin_schreier
from .witt import WittVec, structure_polys, enumerate_witt, to_integer, from_integer
from .errors import (BudgetError, CheckFailure, FieldMismatch, NotEisenstein,
                     PrecisionError)

__all__ = [
    "FieldSpec", "FqElem", "RatFuncField", "RatFuncElem", "solve_artin_schreier",
    "WittVec", "structure_polys", "enumerate_witt", "to_integer", "from_integer",
    "BudgetError", "CheckFailure", "FieldMismatch", "NotEisenstein", "PrecisionError",
    "__version__",
]
