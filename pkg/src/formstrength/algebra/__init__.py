"""Exact fields and linear algebra."""

from formstrength.algebra.fields import (
    BinaryField,
    Field,
    PrimeField,
    QuadraticExtension,
    RationalField,
    artin_schreier_solve,
    field_from_order,
    parse_field,
)
from formstrength.algebra.linalg import (
    Matrix,
    det,
    inverse,
    kernel_basis,
    pfaffian,
    rank,
    rref,
    solve,
)

__all__ = [
    "BinaryField",
    "Field",
    "Matrix",
    "PrimeField",
    "QuadraticExtension",
    "RationalField",
    "artin_schreier_solve",
    "det",
    "field_from_order",
    "inverse",
    "kernel_basis",
    "parse_field",
    "pfaffian",
    "rank",
    "rref",
    "solve",
]
