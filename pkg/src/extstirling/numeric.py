"""Exact scalars, binomials and dense univariate polynomials.

Scalars are :class:`fractions.Fraction`, which is always reduced and keeps a
positive denominator.  Integer-valued quantities are carried as Fractions too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not an exact scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    """Parse the ``p/q`` form (``q`` optional), e.g. ``"-3/7"`` or ``"5"``."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational of the form p/q: {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, coefficients in ascending degree with no trailing zeros."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [as_scalar(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: ScalarLike) -> Poly:
        return cls((as_scalar(c),))

    @classmethod
    def monomial(cls, degree: int, c: ScalarLike = 1) -> Poly:
        return cls((ZERO,) * degree + (as_scalar(c),))

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | ScalarLike) -> Poly:
        if not isinstance(other, Poly):
            c = as_scalar(other)
            return Poly(tuple(a * c for a in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, v: ScalarLike) -> Fraction:
        return poly_eval(self, as_scalar(v))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = format_scalar(c)
            if i == 0:
                terms.append(cs)
            else:
                coef = "" if c == 1 else f"{cs}*" if c.denominator == 1 else f"({cs})*"
                terms.append(f"{coef}x" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    total = Poly()
    for p in polys:
        total = total + p
    return total


def poly_eval(p: Poly, v: Fraction) -> Fraction:
    """Horner evaluation."""
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * v + c
    return acc


def falling_factorial_poly(l: int) -> Poly:
    """(x)_l = x(x-1)...(x-l+1); the empty product for l = 0."""
    if l < 0:
        raise ValueError("falling factorial needs l >= 0")
    p = Poly.constant(1)
    for i in range(l):
        p = p * Poly((Fraction(-i), ONE))
    return p


def powers(base: Fraction, count: int) -> list[Fraction]:
    """[base^0, ..., base^(count-1)]."""
    out = [ONE] * count
    for i in range(1, count):
        out[i] = out[i - 1] * base
    return out

