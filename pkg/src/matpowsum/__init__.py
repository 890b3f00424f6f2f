"""Exact power sums of matrices over finite rings, with brute-force verification."""

from .builtins import builtin, direct_product, gaussian, gf, null_ring, parse_ring, quaternion, trunc_poly, zn
from .ring import BudgetExceeded, RingSpec, SpecStructureError, load_spec, validate_spec

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "RingSpec",
    "SpecStructureError",
    "builtin",
    "direct_product",
    "gaussian",
    "gf",
    "load_spec",
    "null_ring",
    "parse_ring",
    "quaternion",
    "trunc_poly",
    "validate_spec",
    "zn",
]
