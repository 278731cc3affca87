import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qboard.errors import FieldError
from qboard.gf import (GFMatrix, factor_prime_power, irreducible_polynomials, make_field, rank,
                       rank_batch)

from . import oracles

FIELD_SIZES = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)


def test_prime_power_factoring():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(25) == (5, 2)
    for bad in (1, 6, 12, 100):
        with pytest.raises(FieldError):
            factor_prime_power(bad)


def test_non_prime_power_field_rejected():
    with pytest.raises(FieldError):
        make_field(6)


def test_gf4_generator_squares_to_itself_plus_one():
    F = make_field(4)
    assert F.modulus == (1, 1, 1)
    assert F.mul[2, 2] == 3  # x * x = x + 1
    assert F.add[2, 3] == 1


@pytest.mark.parametrize("q", FIELD_SIZES)
def test_field_axioms(q):
    F = make_field(q)
    a = np.arange(q)
    add, mul = F.add, F.mul
    assert (add[a[:, None], a[None, :]] == add.T).all()
    assert (mul == mul.T).all()
    assert (add[:, 0] == a).all() and (mul[:, 1] == a).all()
    assert (add[a, F.neg] == 0).all()
    assert (mul[a[1:], F.inv[1:]] == 1).all()
    # associativity and distributivity on all triples
    x, y, z = np.meshgrid(a, a, a, indexing="ij")
    assert (add[add[x, y], z] == add[x, add[y, z]]).all()
    assert (mul[mul[x, y], z] == mul[x, mul[y, z]]).all()
    assert (mul[x, add[y, z]] == add[mul[x, y], mul[x, z]]).all()


def test_irreducible_counts():
    # number of monic irreducibles of degree e over GF(p)
    assert len(list(irreducible_polynomials(2, 2))) == 1
    assert len(list(irreducible_polynomials(2, 3))) == 2
    assert len(list(irreducible_polynomials(3, 2))) == 3
    assert len(list(irreducible_polynomials(2, 4))) == 3


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        make_field(4, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over GF(2)


def test_alternative_modulus_builds_distinct_context():
    a = make_field(8, (1, 1, 0, 1))
    b = make_field(8, (1, 0, 1, 1))
    assert a != b and a.q == b.q == 8


@settings(max_examples=60, deadline=None)
@given(st.sampled_from((2, 3, 5, 7)), st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_matches_prime_field_oracle(p, m, n, data):
    rows = [[data.draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(m)]
    M = GFMatrix.from_rows(rows, make_field(p))
    assert rank(M) == oracles.rank_mod_p(rows, p)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELD_SIZES), st.integers(1, 4), st.integers(1, 5), st.integers(0, 2 ** 32))
def test_rank_batch_matches_scalar_rank(q, m, n, seed):
    F = make_field(q)
    rng = np.random.default_rng(seed)
    mats = rng.integers(0, q, size=(20, m, n))
    mats[rng.random(mats.shape) < 0.4] = 0
    expect = [rank(GFMatrix.from_rows(M.tolist(), F)) for M in mats]
    assert rank_batch(F, mats).tolist() == expect


def test_support_of_matrix():
    F = make_field(3)
    M = GFMatrix.from_rows([[0, 2], [1, 0]], F)
    assert M.support().cells == {(0, 1), (1, 0)}
    assert M.rank() == 2
