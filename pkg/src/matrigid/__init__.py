"""Exact computations for matroid rigidity: Laman and slope complexes, Tutte
polynomials, photo counts over finite fields, and generic rigidity matroids."""

from .gf import FFMatrix, FieldElement, FiniteField, field_new, nullspace_basis, rank
from .matroid import Complex, LinearMatroid

__all__ = [
    "Complex",
    "FFMatrix",
    "FieldElement",
    "FiniteField",
    "LinearMatroid",
    "field_new",
    "nullspace_basis",
    "rank",
]
__version__ = "0.1.0"
