"""Exact integer, mod-p and cyclotomic linear algebra."""

from .abelian import AbelianGroup, factorize, is_prime, primary_part, valuation
from .cyclotomic import CycInt, cyc_canonical, cyclotomic_polynomial, euler_phi
from .fpmatrix import FpMatrix, kernel_mod_p, rref, stack
from .intmatrix import (
    Elimination,
    IntMatrix,
    SNFResult,
    cokernel_group,
    determinant,
    elementary_divisors,
    eliminate,
    integer_kernel,
    rank_mod,
    smith_normal_form,
)

__all__ = [
    "AbelianGroup",
    "CycInt",
    "Elimination",
    "FpMatrix",
    "IntMatrix",
    "SNFResult",
    "cokernel_group",
    "cyc_canonical",
    "cyclotomic_polynomial",
    "determinant",
    "elementary_divisors",
    "eliminate",
    "euler_phi",
    "factorize",
    "integer_kernel",
    "is_prime",
    "kernel_mod_p",
    "primary_part",
    "rank_mod",
    "rref",
    "smith_normal_form",
    "stack",
    "valuation",
]
