"""Exact computations for Lie-Yamaguti algebras and their compatible pairs.

All arithmetic is over the rationals (``fractions.Fraction`` entries in
numpy object arrays); nothing is ever rounded.
"""

from .cochain import Cochain, circle, graded_bracket, mc_pair_residual, mc_residual
from .cohom import (CohomologyResult, DeformationGenerator, check_deformation_generator, cohomology_dim,
                    deform, delta, delta_c, verify_cocycle_theorem)
from .compat import (CompatibleLy, CompatRepresentation, check_compat_derivation, check_compat_representation,
                     check_compatible, check_linear_combinations, compat_adjoint, compat_semidirect, inner_derivation,
                     linear_combination)
from .errors import (AxiomFailure, DimensionMismatch, FormatError, JacobiViolation, MalformedInput,
                     ResourceCapExceeded)
from .exact import Matrix, Rational
from .lya import (BilinearMap, LinearMap, LyAlgebra, TrilinearMap, check_derivation, check_homomorphism,
                  check_lya, derivation_space, direct_sum, from_lie)
from .rb import (CompatPreLy, PreLy, check_compat_pre_lya, check_pre_lya, check_rb, check_rb_compatible,
                 induce_pre_lya, search_rb, subadjacent)
from .rep import Representation, adjoint, check_representation, semidirect
from .report import CheckReport, all_ok

__all__ = [
    "AxiomFailure", "BilinearMap", "CheckReport", "Cochain", "CohomologyResult", "CompatPreLy",
    "CompatRepresentation", "CompatibleLy", "DeformationGenerator", "DimensionMismatch", "FormatError",
    "JacobiViolation", "LinearMap", "LyAlgebra", "MalformedInput", "Matrix", "PreLy", "Rational",
    "Representation", "ResourceCapExceeded", "TrilinearMap", "adjoint", "all_ok", "check_compat_derivation",
    "check_compat_pre_lya", "check_compat_representation", "check_compatible", "check_deformation_generator",
    "check_derivation", "check_homomorphism", "check_lya", "check_pre_lya", "check_linear_combinations", "check_rb",
    "check_rb_compatible", "check_representation", "circle", "cohomology_dim", "compat_adjoint",
    "compat_semidirect", "deform", "delta", "delta_c", "derivation_space", "direct_sum", "from_lie",
    "graded_bracket", "induce_pre_lya", "inner_derivation", "linear_combination", "mc_pair_residual",
    "mc_residual", "search_rb", "semidirect", "subadjacent", "verify_cocycle_theorem",
]
