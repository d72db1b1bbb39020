"""Finite fields, towers, F_q[T], residue fields and F_p linear algebra."""

from .apoly import (APoly, ResidueField, apoly_divmod, apoly_gcd, enumerate_primes, factor_apoly,
                    generates_residue_field, is_irreducible, necklace_count, reduce_mod_prime)
from .fields import (GF, FieldElement, FieldError, FieldTower, ModulusSearchError, build_tower,
                     frobenius, norm)
from .poly import ZERO_DEGREE

__all__ = [
    "APoly", "FieldElement", "FieldError", "FieldTower", "GF", "ModulusSearchError", "ResidueField",
    "ZERO_DEGREE", "apoly_divmod", "apoly_gcd", "build_tower", "enumerate_primes", "factor_apoly",
    "frobenius", "generates_residue_field", "is_irreducible", "necklace_count", "norm",
    "reduce_mod_prime",
]
