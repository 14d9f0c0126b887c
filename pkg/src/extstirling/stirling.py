"""Classical and extended Stirling numbers of the second kind.

``s2r(n, k, r)`` is the coefficient of t^n/n! in (e^t - 1 + r t)^k / k!.  It is
computed from the finite sum

    S_{2,r}(n, k) = sum_{l=0}^{k} C(n, l) r^l S_2(n - l, k - l)

over classical Stirling numbers.  Off-triangle values (k > n or a negative
index) are 0 and S_{2,r}(0, 0) = 1, so S_{2,r}(n, 0) is 1 at n = 0 and 0 after.

With r = p/q every S_{2,r}(n, k) has denominator dividing q^k, so the verifiers
work on the integer table ``S_{2,r}(n, k) * q^k`` and compare cleared sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from extstirling.numeric import (
    ONE,
    Poly,
    ScalarLike,
    as_scalar,
    binomial,
    falling_factorial_poly,
    poly_sum,
)

IntTable = Sequence[Sequence[int]]


def s2_rows(n_max: int) -> list[list[int]]:
    """Classical triangle rows[n][k] = S_2(n, k), 0 <= k <= n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            above = prev[k] if k < n else 0
            row[k] = k * above + prev[k - 1]
        rows.append(row)
    return rows


def _at(table: IntTable, n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n or n >= len(table):
        return 0
    return table[n][k]


def _binomial_rows(n_max: int) -> list[list[int]]:
    return [[binomial(n, k) for k in range(n + 1)] for n in range(n_max + 1)]


def s2(n: int, k: int) -> Fraction:
    if n < 0 or k < 0:
        raise ValueError("s2 requires n, k >= 0")
    if k > n:
        return Fraction(0)
    return Fraction(s2_rows(n)[n][k])


def _scaled_rows(n_max: int, r: Fraction, classical: IntTable | None = None) -> list[list[int]]:
    """rows[n][k] = q^k * S_{2,r}(n, k) as an integer, for r = p/q."""
    p, q = r.numerator, r.denominator
    classical = classical if classical is not None else s2_rows(n_max)
    p_pow = [p**i for i in range(n_max + 1)]
    q_pow = [q**i for i in range(n_max + 1)]
    rows = []
    for n in range(n_max + 1):
        row = []
        for k in range(n + 1):
            acc = 0
            for l in range(k + 1):
                s = _at(classical, n - l, k - l)
                if s:
                    acc += binomial(n, l) * p_pow[l] * q_pow[k - l] * s
            row.append(acc)
        rows.append(row)
    return rows


def s2r(n: int, k: int, r: ScalarLike) -> Fraction:
    if n < 0 or k < 0:
        raise ValueError("s2r requires n, k >= 0")
    r = as_scalar(r)
    if k > n:
        return Fraction(0)
    classical = s2_rows(n)
    total = Fraction(0)
    r_pow = ONE
    for l in range(k + 1):
        total += binomial(n, l) * r_pow * _at(classical, n - l, k - l)
        r_pow *= r
    return total


@dataclass(frozen=True)
class StirlingTable:
    """Triangle values[n][k] = S_{2,r}(n, k) for 0 <= k <= n <= n_max."""

    r: Fraction
    n_max: int
    values: tuple[tuple[Fraction, ...], ...]

    def __getitem__(self, nk: tuple[int, int]) -> Fraction:
        n, k = nk
        if n > self.n_max:
            raise IndexError(f"n={n} exceeds table n_max={self.n_max}")
        if n < 0 or k < 0 or k > n:
            return Fraction(0)
        return self.values[n][k]

    def row(self, n: int) -> tuple[Fraction, ...]:
        return self.values[n]

    def entries(self) -> Iterator[tuple[int, int, Fraction]]:
        for n, row in enumerate(self.values):
            for k, v in enumerate(row):
                yield n, k, v


def s2r_table(n_max: int, r: ScalarLike) -> StirlingTable:
    r = as_scalar(r)
    q = r.denominator
    scaled = _scaled_rows(n_max, r)
    values = tuple(
        tuple(Fraction(v, q**k) for k, v in enumerate(row)) for row in scaled
    )
    return StirlingTable(r=r, n_max=n_max, values=values)


def s2r_poly(n: int, k: int, r: ScalarLike, table: StirlingTable | None = None) -> Poly:
    """S_{2,r}(n, k | x) = sum_{m=k}^{n} C(n, m) S_{2,r}(m, k) x^(n-m)."""
    if k < 0 or n < k:
        raise ValueError(f"s2r_poly needs n >= k >= 0, got n={n}, k={k}")
    r = as_scalar(r)
    if table is None or table.r != r or table.n_max < n:
        table = s2r_table(n, r)
    coeffs = [Fraction(0)] * (n - k + 1)
    for m in range(k, n + 1):
        coeffs[n - m] = binomial(n, m) * table[m, k]
    return Poly(tuple(coeffs))


# -- verifiers ---------------------------------------------------------------


def verify_defining_relation(n: int) -> bool:
    """x^n == sum_l S_2(n, l) (x)_l, compared coefficient-wise."""
    row = s2_rows(n)[n]
    rhs = poly_sum(falling_factorial_poly(l) * s for l, s in enumerate(row) if s)
    return rhs == Poly.monomial(n)


def inversion_failures(n_max: int, r: ScalarLike) -> Iterator[tuple[int, int]]:
    """Cells (n, m) where S_2(n, m) != sum_l C(n,l) (-r)^l S_{2,r}(n-l, m-l)."""
    r = as_scalar(r)
    p, q = r.numerator, r.denominator
    classical = s2_rows(n_max)
    scaled = _scaled_rows(n_max, r, classical)
    for n in range(n_max + 1):
        for m in range(n + 1):
            # both sides times q^m
            rhs = sum(
                binomial(n, l) * (-p) ** l * _at(scaled, n - l, m - l)
                for l in range(m + 1)
            )
            if rhs != classical[n][m] * q**m:
                yield n, m


def verify_inversion(n_max: int, r: ScalarLike) -> bool:
    return next(inversion_failures(n_max, r), None) is None


def _check_split(n: int, m: int, k: int) -> None:
    if m < 0 or k < 0 or n < m + k:
        raise ValueError(f"need n >= m + k with m, k >= 0, got n={n}, m={m}, k={k}")


def _split_cells(n_max: int, mk_max: int | None) -> Iterator[tuple[int, int, int]]:
    for n in range(n_max + 1):
        top = n if mk_max is None else min(n, mk_max)
        for m in range(top + 1):
            for k in range(top - m + 1):
                yield n, m, k


class _SplitContext:
    """Integer tables shared by the convolution and triple-sum cells of one sweep."""

    def __init__(self, n_max: int, r: Fraction):
        self.r = r
        self.p, self.q = r.numerator, r.denominator
        self.classical = s2_rows(n_max)
        self.scaled = _scaled_rows(n_max, r, self.classical)
        self.binom = _binomial_rows(n_max)

    def c(self, n: int, k: int) -> int:
        return _at(self.binom, n, k)

    def lhs_extended(self, n: int, m: int, k: int) -> int:
        # C(m+k, m) S_{2,r}(n, m+k) * q^(m+k)
        return self.c(m + k, m) * _at(self.scaled, n, m + k)

    def convolution(self, n: int, m: int, k: int) -> bool:
        # sum_l C(n,l) S_{2,r}(l,m) S_{2,r}(n-l,k), scaled by q^m * q^k
        rhs = sum(
            self.c(n, l) * _at(self.scaled, l, m) * _at(self.scaled, n - l, k)
            for l in range(m, n + 1)
        )
        return rhs == self.lhs_extended(n, m, k)

    def triple_sum(self, n: int, m: int, k: int) -> bool:
        p, q, s2t = self.p, self.q, self.classical
        rhs = 0
        for n1 in range(m, n + 1):
            c_outer = self.c(n, n1)
            for l in range(m + 1):
                a = self.c(n1, l) * _at(s2t, n1 - l, m - l)
                if not a:
                    continue
                for j in range(k + 1):
                    b = self.c(n - n1, j) * _at(s2t, n - n1 - j, k - j)
                    if b:
                        rhs += c_outer * a * b * p ** (l + j) * q ** (m + k - l - j)
        return rhs == self.lhs_extended(n, m, k)

    def inverse_triple_sum(self, n: int, m: int, k: int) -> bool:
        neg_p, sc = -self.p, self.scaled
        rhs = 0
        for n1 in range(m, n + 1):
            c_outer = self.c(n, n1)
            for l in range(m + 1):
                a = self.c(n1, l) * _at(sc, n1 - l, m - l)
                if not a:
                    continue
                for j in range(k + 1):
                    b = self.c(n - n1, j) * _at(sc, n - n1 - j, k - j)
                    if b:
                        rhs += c_outer * a * b * neg_p ** (l + j)
        lhs = self.c(m + k, m) * _at(self.classical, n, m + k) * self.q ** (m + k)
        return rhs == lhs


def verify_convolution(n: int, m: int, k: int, r: ScalarLike) -> bool:
    """C(m+k, m) S_{2,r}(n, m+k) == sum_{l=m}^{n} C(n,l) S_{2,r}(l,m) S_{2,r}(n-l,k)."""
    _check_split(n, m, k)
    return _SplitContext(n, as_scalar(r)).convolution(n, m, k)


def verify_triple_sum(n: int, m: int, k: int, r: ScalarLike) -> bool:
    """Extended convolution against the triple sum over classical S_2 values."""
    _check_split(n, m, k)
    return _SplitContext(n, as_scalar(r)).triple_sum(n, m, k)


def verify_inverse_triple_sum(n: int, m: int, k: int, r: ScalarLike) -> bool:
    """Classical convolution against the signed triple sum over S_{2,r} values."""
    _check_split(n, m, k)
    return _SplitContext(n, as_scalar(r)).inverse_triple_sum(n, m, k)


def split_failures(
    kind: str, n_max: int, r: ScalarLike, mk_max: int | None = None
) -> Iterator[tuple[int, int, int]]:
    """Failing (n, m, k) cells of a sweep over m + k <= n <= n_max.

    ``kind`` is one of ``convolution``, ``triple_sum``, ``inverse_triple_sum``;
    ``mk_max`` optionally caps m + k.
    """
    ctx = _SplitContext(n_max, as_scalar(r))
    check = {
        "convolution": ctx.convolution,
        "triple_sum": ctx.triple_sum,
        "inverse_triple_sum": ctx.inverse_triple_sum,
    }[kind]
    for cell in _split_cells(n_max, mk_max):
        if not check(*cell):
            yield cell


def split_cell_count(n_max: int, mk_max: int | None = None) -> int:
    return sum(1 for _ in _split_cells(n_max, mk_max))
