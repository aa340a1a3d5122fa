"""Exact certificates for periodic derivations and prederivations of nilpotent Lie algebras."""

from .scalar import CycloScalar, Poly, field_arith, modulus_squared, parse_scalar, poly_divides_cyclic, \
    poly_squarefree, unit_order
from .linalg import Matrix, Subspace, inverse, min_poly, nullspace, solve, subspace_ops
from .lie import LieAlgebra, bracket, direct_sum, make_algebra, quotient, series
from .deriv import (LinearMap, derivation_space, extend_order, inverse_derivation_check, is_member, periodic_order,
                    prederivation_space)
from .grading import (HexGrading, TriGrading, derivation_to_grading, grading_to_derivation, triangular_to_hexagonal,
                      verify_hexagonal, verify_triangular)
from .freenil import (FreePresentation, build_partition_ideal, check_estimates, free_nilpotent,
                      grading_to_presentation, partition_search, presentation_to_grading)
from .engel import (PropertyFWitness, ad_power_zero, em_span_bound, engel_identity, pre_engel_witness,
                    property_f_falsify)
from .units import UnitSystem, eigenform_family_check, oracle_enumerate, solve_units

__all__ = [
    "CycloScalar", "Poly", "field_arith", "modulus_squared", "parse_scalar", "poly_divides_cyclic",
    "poly_squarefree", "unit_order",
    "Matrix", "Subspace", "inverse", "min_poly", "nullspace", "solve", "subspace_ops",
    "LieAlgebra", "bracket", "direct_sum", "make_algebra", "quotient", "series",
    "LinearMap", "derivation_space", "extend_order", "inverse_derivation_check", "is_member", "periodic_order",
    "prederivation_space",
    "HexGrading", "TriGrading", "derivation_to_grading", "grading_to_derivation", "triangular_to_hexagonal",
    "verify_hexagonal", "verify_triangular",
    "FreePresentation", "build_partition_ideal", "check_estimates", "free_nilpotent", "grading_to_presentation",
    "partition_search", "presentation_to_grading",
    "PropertyFWitness", "ad_power_zero", "em_span_bound", "engel_identity", "pre_engel_witness",
    "property_f_falsify",
    "UnitSystem", "eigenform_family_check", "oracle_enumerate", "solve_units",
]
