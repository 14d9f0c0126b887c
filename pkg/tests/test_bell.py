from fractions import Fraction

import pytest

from extstirling import bell
from extstirling.bell import (
    bell_ext_eval,
    bell_ext_number,
    bell_ext_number_binomial,
    bell_ext_poly,
    bell_number,
    bell_poly,
    interpolation_points,
    verify_binomial_shift,
    verify_mixed_identity,
    verify_mixed_identity_in_x,
)
from extstirling.config import PROBES
from extstirling.egf import bell_ext_via_egf
from extstirling.numeric import Poly
from oracles import block_counts

F = Fraction


def test_bell_poly_examples():
    assert bell_poly(0) == Poly.constant(1)
    assert bell_poly(2) == Poly((0, 1, 1))
    assert bell_poly(3) == Poly((0, 1, 3, 1))


def test_bell_numbers_match_partition_count():
    for n in range(9):
        assert bell_number(n) == sum(block_counts(n).values())
    assert [bell_number(n) for n in range(9)] == [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def test_bell_ext_number_examples():
    assert bell_ext_number(0, F(-3, 7)) == 1
    assert bell_ext_number(2, 1) == 5
    assert bell_ext_number(3, 1) == 15


@pytest.mark.parametrize("r", PROBES.r)
def test_row_sum_equals_binomial_form(r):
    for n in range(16):
        assert bell_ext_number(n, r) == bell_ext_number_binomial(n, r)


def test_bell_ext_poly_examples():
    assert bell_ext_poly(0, 4) == Poly.constant(1)
    for r in PROBES.r:
        assert bell_ext_poly(2, r) == Poly((0, 1, (1 + r) ** 2))
        assert bell_ext_poly(3, r) == Poly((0, 1, 3 * (1 + r), (1 + r) ** 3))


def test_bell_ext_eval_examples():
    assert bell_ext_eval(2, 0, 1) == 2
    assert bell_ext_eval(2, 1, 1) == 5
    assert bell_ext_eval(3, 1, F(1, 2)) == 3


@pytest.mark.parametrize("r", PROBES.r)
def test_eval_at_one_is_bell_number(r):
    for n in range(12):
        assert bell_ext_eval(n, r, 1) == bell_ext_number(n, r)


@pytest.mark.parametrize("r", PROBES.r)
def test_bell_ext_matches_egf(r):
    for lam in PROBES.lam:
        for n in range(10):
            assert bell_ext_eval(n, r, lam) == bell_ext_via_egf(n, r, lam)


def test_r0_reduces_to_bell_poly():
    for n in range(16):
        assert bell_ext_poly(n, 0) == bell_poly(n)


@pytest.mark.parametrize("n_max,r,lam", [(0, 3, 7), (10, 0, 2), (20, F(1, 2), F(2, 3))])
def test_binomial_shift_examples(n_max, r, lam):
    assert verify_binomial_shift(n_max, r, lam)


def test_mixed_identity_examples():
    assert verify_mixed_identity(0, 5, 2, 3)
    for r in PROBES.r:
        for lam in PROBES.lam:
            assert verify_mixed_identity(6, r, lam, 0)
    assert verify_mixed_identity(12, F(-3, 7), F(5, 2), F(-2, 5))


def test_mixed_identity_x0_collapses_to_theorem1():
    lhs, rhs = bell._mixed_sides(5, F(1, 2), F(2, 3), F(0), bell.s2r_table(5, F(1, 2)))
    assert lhs == rhs == bell_ext_eval(5, F(1, 2), F(2, 3))


def test_mixed_identity_in_x():
    assert len(set(interpolation_points(7))) == 8
    assert verify_mixed_identity_in_x(7, F(-3, 7), F(5, 2))


def test_mixed_identity_detects_corruption(monkeypatch):
    real = bell.s2r_poly

    def off_by_x(n, k, r, table=None):
        p = real(n, k, r, table)
        return p + Poly((0, 1)) if (n, k) == (4, 2) else p

    monkeypatch.setattr(bell, "s2r_poly", off_by_x)
    assert verify_mixed_identity(4, 1, 1, 0)  # the extra x term vanishes at x = 0
    assert not verify_mixed_identity(4, 1, 1, 1)
    assert not verify_mixed_identity_in_x(4, 1, 1)
    assert list(bell.mixed_identity_failures(5, 1, 1, F(-2, 5))) == [4]
