from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from qboard.qpoly import (BigPoly, linear_residue_actual, linear_residue_table, pochhammer_a, q_binomial,
                          q_factorial, q_int, q_pochhammer, q_pochhammer_value, q_power,
                          t_pochhammer_values)

from . import oracles

polys = st.lists(st.integers(-10 ** 6, 10 ** 6), max_size=8).map(lambda c: BigPoly(tuple(c)))


def test_small_values():
    assert q_int(3).coeffs == (1, 1, 1)
    assert q_binomial(2, 1).coeffs == (1, 1)
    assert q_binomial(2, 3).coeffs == ()
    assert q_factorial(3).coeffs == (1, 2, 2, 1)


def test_x_basis_of_full_2x2_q_rook():
    # (q^2 - 1)(q^2 - q) / (q - 1)^2 = q(q + 1) = x^2 + 3x + 2
    M2 = (q_power(2) - 1) * (q_power(2) - q_power(1)) // BigPoly((1, -2, 1))
    assert M2.to_x().coeffs == (2, 3, 1)


@given(polys)
def test_basis_change_is_an_involution(p):
    assert p.to_x().to_q() == p
    assert p.to_x().evaluate_q(7) == p(7)


@given(polys, polys)
def test_ring_operations_commute_with_evaluation(a, b):
    for v in (-2, 0, 3):
        assert (a + b)(v) == a(v) + b(v)
        assert (a * b)(v) == a(v) * b(v)
    if b:
        lead = b.coeffs[-1]
        if lead in (1, -1):
            assert (a * b) // b == a


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        q_power(2) // BigPoly((1, 1, 1))
    with pytest.raises(ValueError):
        q_power(2) // BigPoly((1, 2))


def test_mixed_basis_rejected():
    with pytest.raises(ValueError):
        q_power(1) + q_power(1).to_x()


def test_json_roundtrip_big_coefficients():
    p = q_factorial(30)
    doc = p.to_json()
    assert all(isinstance(c, str) for c in doc["coeffs"])
    assert BigPoly.from_json(doc) == p


@pytest.mark.parametrize("n", range(0, 13))
def test_values_at_one_and_integers(n):
    assert q_factorial(n)(1) == factorial(n)
    for k in range(n + 1):
        assert q_binomial(n, k)(1) == comb(n, k)
        for q in (2, 3, 4):
            assert q_binomial(n, k)(q) == oracles.q_binomial(n, k, q)


@pytest.mark.parametrize("k", range(0, 13))
def test_pochhammer_shape(k):
    coeffs = q_pochhammer(1, k)
    assert len(coeffs) == k + 1
    assert coeffs[0] == BigPoly.one()
    # leading coefficient in t: (-1)^k q^(k choose 2)
    assert coeffs[k] == (-1) ** k * q_power(comb(k, 2))
    for q in (2, 3):
        vals = [c(q) for c in coeffs]
        assert vals == t_pochhammer_values(q, k)
        assert sum(vals) == q_pochhammer_value(1, q, k)


def test_pochhammer_at_rational_q():
    # (t; 1/2)_2 = (1 - t)(1 - t/2)
    assert t_pochhammer_values(Fraction(1, 2), 2) == [1, Fraction(-3, 2), Fraction(1, 2)]


def test_pochhammer_a_matches_product():
    for a in (-1, 2, 3):
        for n in range(6):
            assert pochhammer_a(a, n)(5) == q_pochhammer_value(a, 5, n)


def test_linear_congruence_examples():
    t = linear_residue_table(5)
    assert t["q^n"] == (1, 5)
    assert t["qbinom(n,i)"][2] == (10, 30)
    one = linear_residue_table(1)
    assert one["[n]_q"] == (1, 0) and one["[n]!_q"] == (1, 0)
    with pytest.raises(ValueError):
        linear_residue_table(0)


@pytest.mark.parametrize("a", (2, 3, -1))
def test_linear_congruences_hold_up_to_30(a):
    for n in range(1, 31):
        assert linear_residue_table(n, a) == linear_residue_actual(n, a)
