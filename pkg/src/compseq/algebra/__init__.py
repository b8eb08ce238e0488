from .cyclotomic import CycInt, cyc_is_zero, cyc_zero_mask, cyclotomic_poly, reduction_matrix
from .field import (
    DEFAULT_PRIMITIVE_POLYS,
    GaloisField,
    find_primitive_poly,
    is_prime,
    load_primitive_table,
    make_field,
)
from .poly import FieldPoly, interpolate, interpolate_many


def trace(field: GaloisField, x):
    """Absolute trace Tr(x) = x + x^p + ... + x^(p^(n-1)), as an int in [0, p)."""
    return field.trace(x)


__all__ = [
    "CycInt",
    "DEFAULT_PRIMITIVE_POLYS",
    "FieldPoly",
    "GaloisField",
    "cyc_is_zero",
    "cyc_zero_mask",
    "cyclotomic_poly",
    "find_primitive_poly",
    "interpolate",
    "interpolate_many",
    "is_prime",
    "load_primitive_table",
    "make_field",
    "reduction_matrix",
    "trace",
]
