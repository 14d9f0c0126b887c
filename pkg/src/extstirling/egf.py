"""Truncated power series in t and coefficient extraction from generating functions.

This is the independent oracle for the closed forms: every value is read off the
defining series directly, as n! times the coefficient of t^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from extstirling.numeric import ONE, ZERO, ScalarLike, as_scalar


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a truncated series needs at least c_0")
        object.__setattr__(self, "coeffs", tuple(as_scalar(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Sequence[ScalarLike], order: int | None = None) -> TruncatedSeries:
        cs = [as_scalar(c) for c in coeffs]
        if order is not None:
            cs = (cs + [ZERO] * (order + 1))[: order + 1]
        return cls(tuple(cs))

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls((ZERO,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls((ONE,) + (ZERO,) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        _same_order(self, other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: ScalarLike) -> TruncatedSeries:
        c = as_scalar(c)
        return TruncatedSeries(tuple(a * c for a in self.coeffs))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_mul(self, other)


def _same_order(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise ValueError(f"series orders differ: {a.order} vs {b.order}")


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    _same_order(a, b)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for n in range(a.order + 1):
        acc = ZERO
        for i in range(n + 1):
            if ac[i] and bc[n - i]:
                acc += ac[i] * bc[n - i]
        out.append(acc)
    return TruncatedSeries(tuple(out))


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) for a with zero constant term, via n c_n = sum_{i=1}^{n} i a_i c_{n-i}."""
    if a[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    c = [ONE]
    for n in range(1, a.order + 1):
        acc = ZERO
        for i in range(1, n + 1):
            if a[i]:
                acc += i * a[i] * c[n - i]
        c.append(acc / n)
    return TruncatedSeries(tuple(c))


def exp_linear(x: ScalarLike, order: int) -> TruncatedSeries:
    """e^(x t) = sum x^i t^i / i!."""
    x = as_scalar(x)
    cs = [ONE]
    for i in range(1, order + 1):
        cs.append(cs[-1] * x / i)
    return TruncatedSeries(tuple(cs))


def kernel_series(r: ScalarLike, order: int) -> TruncatedSeries:
    """e^t - 1 + r t."""
    if order < 0:
        raise ValueError("order must be >= 0")
    r = as_scalar(r)
    cs = [ZERO]
    if order >= 1:
        cs.append(1 + r)
    for i in range(2, order + 1):
        cs.append(Fraction(1, math.factorial(i)))
    return TruncatedSeries(tuple(cs))


def kernel_power_over_factorial(r: ScalarLike, k: int, order: int) -> TruncatedSeries:
    """(e^t - 1 + r t)^k / k! by repeated multiplication."""
    kern = kernel_series(r, order)
    acc = TruncatedSeries.one(order)
    for _ in range(k):
        acc = series_mul(acc, kern)
    return acc.scale(Fraction(1, math.factorial(k)))


def extract_egf(series: TruncatedSeries, n: int) -> Fraction:
    return series[n] * math.factorial(n)


def s2r_via_egf(n: int, k: int, r: ScalarLike) -> Fraction:
    if n < 0 or k < 0:
        raise ValueError("n, k must be >= 0")
    if k > n:
        return ZERO
    return extract_egf(kernel_power_over_factorial(r, k, n), n)


def s2r_egf_triangle(n_max: int, r: ScalarLike) -> list[list[Fraction]]:
    """rows[n][k] = S_{2,r}(n, k) for the whole triangle from one chain of kernel powers.

    Truncating at n_max instead of n leaves every coefficient up to t^n unchanged.
    """
    kern = kernel_series(r, n_max)
    rows = [[ZERO] * (n + 1) for n in range(n_max + 1)]
    power = TruncatedSeries.one(n_max)
    for k in range(n_max + 1):
        if k:
            power = series_mul(power, kern)
        k_fact = math.factorial(k)
        for n in range(k, n_max + 1):
            rows[n][k] = power[n] * math.factorial(n) / k_fact
    return rows


def s2r_poly_via_egf(n: int, k: int, r: ScalarLike, x: ScalarLike) -> Fraction:
    """S_{2,r}(n, k | x) from e^(x t) (e^t - 1 + r t)^k / k!."""
    if k < 0 or n < k:
        raise ValueError(f"need n >= k >= 0, got n={n}, k={k}")
    series = series_mul(exp_linear(x, n), kernel_power_over_factorial(r, k, n))
    return extract_egf(series, n)


def bell_ext_via_egf(n: int, r: ScalarLike, lam: ScalarLike) -> Fraction:
    """Bel_{n,r}(lam) from exp(lam (e^t - 1 + r t))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    series = series_exp(kernel_series(r, n).scale(lam))
    return extract_egf(series, n)
