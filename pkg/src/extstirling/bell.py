"""Bell polynomials and their extension by the shifted kernel e^t - 1 + r t."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from extstirling.numeric import (
    ONE,
    ZERO,
    Poly,
    ScalarLike,
    as_scalar,
    binomial,
    poly_eval,
    powers,
)
from extstirling.stirling import StirlingTable, s2_rows, s2r_poly, s2r_table


def bell_poly(n: int) -> Poly:
    """Bel_n(x) = sum_m S_2(n, m) x^m."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Poly(tuple(Fraction(c) for c in s2_rows(n)[n]))


def bell_number(n: int) -> Fraction:
    return poly_eval(bell_poly(n), ONE)


def bell_ext_number(n: int, r: ScalarLike) -> Fraction:
    """Bel_{n,r} as the row sum of the extended Stirling triangle."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(s2r_table(n, r).row(n), ZERO)


def bell_ext_number_binomial(n: int, r: ScalarLike) -> Fraction:
    """Bel_{n,r} = sum_k C(n, k) Bel_k r^(n-k), from e^(r t) e^(e^t - 1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    r = as_scalar(r)
    r_pow = powers(r, n + 1)
    bells = [sum(row) for row in s2_rows(n)]
    return sum((binomial(n, k) * bells[k] * r_pow[n - k] for k in range(n + 1)), ZERO)


def bell_ext_poly(n: int, r: ScalarLike, table: StirlingTable | None = None) -> Poly:
    """Bel_{n,r}(lam) = sum_m S_{2,r}(n, m) lam^m."""
    if n < 0:
        raise ValueError("n must be >= 0")
    r = as_scalar(r)
    if table is None or table.r != r or table.n_max < n:
        table = s2r_table(n, r)
    return Poly(table.row(n))


def bell_ext_eval(n: int, r: ScalarLike, lam: ScalarLike) -> Fraction:
    return poly_eval(bell_ext_poly(n, r), as_scalar(lam))


def binomial_shift_failures(n_max: int, r: ScalarLike, lam: ScalarLike) -> Iterator[int]:
    """n where Bel_{n,r}(lam) != sum_l C(n,l) (r lam)^l Bel_{n-l}(lam)."""
    r, lam = as_scalar(r), as_scalar(lam)
    table = s2r_table(n_max, r)
    classical = s2_rows(n_max)
    bell_at_lam = [poly_eval(Poly(tuple(Fraction(c) for c in row)), lam) for row in classical]
    shift_pow = powers(r * lam, n_max + 1)
    for n in range(n_max + 1):
        lhs = poly_eval(bell_ext_poly(n, r, table), lam)
        rhs = sum(
            (binomial(n, l) * shift_pow[l] * bell_at_lam[n - l] for l in range(n + 1)),
            ZERO,
        )
        if lhs != rhs:
            yield n


def verify_binomial_shift(n_max: int, r: ScalarLike, lam: ScalarLike) -> bool:
    return next(binomial_shift_failures(n_max, r, lam), None) is None


def _mixed_sides(
    n: int, r: Fraction, lam: Fraction, x: Fraction, table: StirlingTable
) -> tuple[Fraction, Fraction]:
    x_pow = powers(x, n + 1)
    lhs = sum(
        (binomial(n, m) * x_pow[n - m] * poly_eval(bell_ext_poly(m, r, table), lam) for m in range(n + 1)),
        ZERO,
    )
    lam_pow = powers(lam, n + 1)
    rhs = sum(
        (lam_pow[k] * poly_eval(s2r_poly(n, k, r, table), x) for k in range(n + 1)),
        ZERO,
    )
    return lhs, rhs


def verify_mixed_identity(n: int, r: ScalarLike, lam: ScalarLike, x: ScalarLike) -> bool:
    """sum_m C(n,m) x^(n-m) Bel_{m,r}(lam) == sum_k lam^k S_{2,r}(n, k | x)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    r = as_scalar(r)
    lhs, rhs = _mixed_sides(n, r, as_scalar(lam), as_scalar(x), s2r_table(n, r))
    return lhs == rhs


def interpolation_points(n: int) -> tuple[Fraction, ...]:
    """n + 1 distinct rationals, symmetric around 0 with a non-integer step."""
    return tuple(Fraction(2 * j - n, 3) for j in range(n + 1))


def verify_mixed_identity_in_x(n: int, r: ScalarLike, lam: ScalarLike) -> bool:
    """Both sides have degree <= n in x, so agreement at n + 1 points is identity in x."""
    r, lam = as_scalar(r), as_scalar(lam)
    table = s2r_table(n, r)
    return all(
        lhs == rhs
        for lhs, rhs in (_mixed_sides(n, r, lam, x, table) for x in interpolation_points(n))
    )


def mixed_identity_failures(
    n_max: int, r: ScalarLike, lam: ScalarLike, x: ScalarLike
) -> Iterator[int]:
    r, lam, x = as_scalar(r), as_scalar(lam), as_scalar(x)
    table = s2r_table(n_max, r)
    for n in range(n_max + 1):
        lhs, rhs = _mixed_sides(n, r, lam, x, table)
        if lhs != rhs:
            yield n
