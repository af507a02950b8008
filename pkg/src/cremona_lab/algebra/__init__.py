"""Exact arithmetic over small finite fields."""

from .errors import (
    AlgebraError,
    DescriptorMismatch,
    DivisionByZero,
    NonPrime,
    NotUnivariate,
    ParseError,
    ReducibleModulus,
    UnknownVariable,
    UnsupportedSize,
    WrongCharacteristic,
)
from .fields import (
    FieldDescriptor,
    FieldElement,
    artin_schreier_solve,
    field_make,
    is_irreducible_over_prime_field,
    sqrt_char2,
)
from .parse import make_ring, parse_polynomial, parse_vars
from .poly import (
    Polynomial,
    PolyRing,
    RationalFunction,
    compose_assignments,
    poly_partial,
    poly_subst,
    univariate_squarefree,
)

__all__ = [
    "AlgebraError",
    "DescriptorMismatch",
    "DivisionByZero",
    "FieldDescriptor",
    "FieldElement",
    "NonPrime",
    "NotUnivariate",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "RationalFunction",
    "ReducibleModulus",
    "UnknownVariable",
    "UnsupportedSize",
    "WrongCharacteristic",
    "artin_schreier_solve",
    "compose_assignments",
    "field_make",
    "is_irreducible_over_prime_field",
    "make_ring",
    "parse_polynomial",
    "parse_vars",
    "poly_partial",
    "poly_subst",
    "sqrt_char2",
    "univariate_squarefree",
]
