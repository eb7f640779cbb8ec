"""Exact arithmetic: rationals, parameter polynomials and fractions, formal
polynomials in del/lam/mu/nu."""

from fractions import Fraction as Rational

from .formal import (
    DEL,
    FORMAL_VARS,
    LAM,
    MU,
    NU,
    FormalPoly,
    FormalRing,
    SelfReferenceError,
    falling,
    fp_add,
    fp_coeff_in,
    fp_compose,
    fp_degree,
    fp_eval,
    fp_from_coeffs,
    fp_mul,
    fp_substitute,
)
from .params import (
    IncompleteAssignmentError,
    NotDivisibleError,
    ParamPoly,
    PoleError,
    SymbolUniverseError,
    as_rational,
    poly_gcd,
)
from .scalar import Scalar, scalar_reduce

__all__ = [
    "DEL", "LAM", "MU", "NU", "FORMAL_VARS",
    "Rational", "ParamPoly", "Scalar", "FormalPoly", "FormalRing",
    "SymbolUniverseError", "IncompleteAssignmentError", "PoleError",
    "NotDivisibleError", "SelfReferenceError",
    "as_rational", "poly_gcd", "scalar_reduce", "falling",
    "fp_add", "fp_mul", "fp_substitute", "fp_compose", "fp_eval",
    "fp_coeff_in", "fp_degree", "fp_from_coeffs",
]
