"""Exact computations with finite-dimensional Lie triple systems."""

from .cochains import (Cochain, CohomologyResult, cohomology_dim, is_3_cocycle, is_5_cocycle, is_coboundary,
                       loday_delta, yamaguti_delta)
from .deformation import (are_compatible, check_infinitesimal_deformation, is_nijenhuis, operator_polynomial,
                          trivial_deformation)
from .errors import InputError, LieTripleError, MathematicalError
from .extension import (AbelianExtension, are_equivalent, build_extension, classify_extensions, equivalence_map,
                        induced_data)
from .fields import GF, QQ
from .fundamental import verify_leibniz, verify_leibniz_rep
from .linalg import Matrix, kernel_basis, quotient_dim, rank, rref, solve
from .lts import LieTripleSystem, LtsMorphism, from_lie_algebra, is_homomorphism, verify_lts
from .representation import Representation, adjoint_rep, verify_representation, zero_rep

__all__ = [
    "AbelianExtension", "Cochain", "CohomologyResult", "GF", "InputError", "LieTripleError", "LieTripleSystem",
    "LtsMorphism", "MathematicalError", "Matrix", "QQ", "Representation", "adjoint_rep", "are_compatible",
    "are_equivalent", "build_extension", "check_infinitesimal_deformation", "classify_extensions",
    "cohomology_dim", "equivalence_map", "from_lie_algebra", "induced_data", "is_3_cocycle", "is_5_cocycle",
    "is_coboundary", "is_homomorphism", "is_nijenhuis", "kernel_basis", "loday_delta", "operator_polynomial",
    "quotient_dim", "rank", "rref", "solve", "trivial_deformation", "verify_leibniz", "verify_leibniz_rep",
    "verify_lts", "verify_representation", "yamaguti_delta", "zero_rep",
]
