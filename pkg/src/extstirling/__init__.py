"""Exact extended Stirling numbers of the second kind and extended Bell polynomials."""

from extstirling.numeric import Poly, binomial, falling_factorial_poly, format_scalar, parse_scalar, poly_eval
from extstirling.stirling import StirlingTable, s2, s2r, s2r_poly, s2r_table
from extstirling.bell import bell_ext_eval, bell_ext_number, bell_ext_poly, bell_number, bell_poly

__all__ = [
    "Poly",
    "StirlingTable",
    "bell_ext_eval",
    "bell_ext_number",
    "bell_ext_poly",
    "bell_number",
    "bell_poly",
    "binomial",
    "falling_factorial_poly",
    "format_scalar",
    "parse_scalar",
    "poly_eval",
    "s2",
    "s2r",
    "s2r_poly",
    "s2r_table",
]
