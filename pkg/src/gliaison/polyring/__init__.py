"""Polynomial rings over GF(p), ideals and Groebner bases."""
from .ring import PolyRing, Polynomial, RingError, DEFAULT_CHAR, is_prime
from .parse import ParseError, InhomogeneousError, parse_file, parse_polynomial, ParsedFile
from .groebner import GBEngine, GBLimitError, Layout, minimal_generators
from .hilbert import HilbertSeries, monomial_numerator
from .ideal import Ideal, intersect, quotient, saturate, maximal_ideal, unit_ideal

__all__ = [
    "PolyRing", "Polynomial", "RingError", "DEFAULT_CHAR", "is_prime",
    "ParseError", "InhomogeneousError", "parse_file", "parse_polynomial", "ParsedFile",
    "GBEngine", "GBLimitError", "Layout", "minimal_generators",
    "HilbertSeries", "monomial_numerator",
    "Ideal", "intersect", "quotient", "saturate", "maximal_ideal", "unit_ideal",
]
