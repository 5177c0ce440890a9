"""Exact computations with evolution algebras, their tensor products and the
classification of 4-dimensional perfect tensorially decomposable ones."""

from .algebra import AlgebraStructure, tensor_algebra
from .classification import ClassificationReport, classify, instantiate_family, invariants
from .decompose import ZeroProfile, orbit_search, screen, zero_profile
from .evolution import EvolutionAlgebra, NotPerfectError, natural_basis_change, tensor_evolution
from .linalg import Matrix, Permutation, Polynomial, charpoly, det, kron, minpoly, rank

__all__ = [
    "AlgebraStructure", "ClassificationReport", "EvolutionAlgebra", "Matrix", "NotPerfectError",
    "Permutation", "Polynomial", "ZeroProfile", "charpoly", "classify", "det", "instantiate_family",
    "invariants", "kron", "minpoly", "natural_basis_change", "orbit_search", "rank", "screen",
    "tensor_algebra", "tensor_evolution", "zero_profile",
]
__version__ = "0.1.0"
