"""Exact arithmetic kernel: rational linear algebra, polynomials, Gröbner bases."""

from .groebner import (
    EmptyVarietyError,
    GroebnerBasis,
    buchberger,
    ideal_equal,
    krull_dimension,
    normal_form,
    trim_generators,
)
from .linalg import MinorExpander, det, det_poly, rank, rref
from .poly import MultiPoly, ParseError, PolyRing, format_poly, parse_poly, parse_polys

__all__ = [
    "EmptyVarietyError", "GroebnerBasis", "MinorExpander", "MultiPoly", "ParseError",
    "PolyRing", "buchberger", "det", "det_poly", "format_poly", "ideal_equal",
    "krull_dimension", "normal_form", "parse_poly", "parse_polys", "rank", "rref",
    "trim_generators",
]
