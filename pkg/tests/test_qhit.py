import pytest
from hypothesis import given, settings, strategies as st

from qboard.board import Board, complement, identity_board
from qboard.errors import IntegrityError
from qboard.qcount import q_rook_vector
from qboard.qhit import (hit_from_rook_direct, inverse_transform_check, q_hit_direct, q_hit_genfun,
                         q_hit_vector, reciprocity_check, rook_from_hit)
from qboard.rookhit import hit_numbers

from . import oracles
from .test_board import boards

FULL2 = Board.full(2, 2)


def test_full_2x2_top_hit():
    # H_2(B, x + 1) = x^2 + 3x + 2
    for q in (2, 3, 4, 5):
        x = q - 1
        assert q_hit_direct(FULL2, q, 2) == x * x + 3 * x + 2
    assert q_hit_vector(FULL2, 3).values == (0, 0, 12)


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3), (1, 4)])
def test_empty_board_hits_nothing(m, n):
    for q in (2, 3, 4):
        H = q_hit_vector(Board.empty(m, n), q).values
        total = q ** (m * (m - 1) // 2) * oracles.q_factorial(n, q) // oracles.q_factorial(n - m, q)
        assert H == (total,) + (0,) * m


@settings(max_examples=50, deadline=None)
@given(boards(3, 4), st.sampled_from((2, 3, 4, 5)))
def test_forms_agree_and_reduce_to_hit_numbers(B, q):
    M = q_rook_vector(B, q)
    direct = q_hit_vector(B, q, M)
    assert q_hit_genfun(B, q, M).values == direct.values
    assert all((a - b) % (q - 1) == 0 for a, b in zip(direct.values, hit_numbers(B)))
    b, _ = B.oriented()
    assert direct[b.m] == M[b.m]
    assert direct[-1] == direct[b.m + 1] == 0


@settings(max_examples=50, deadline=None)
@given(boards(3, 4), st.sampled_from((2, 3, 4, 5, 7)))
def test_inverse_transform_round_trip(B, q):
    assert inverse_transform_check(B, q)


def test_hit_sum_is_independent_of_board():
    # sum_k H_k depends only on the grid shape
    for q in (2, 3):
        sums = {sum(q_hit_vector(Board.from_mask(2, 3, mask), q).values) for mask in range(64)}
        assert len(sums) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.integers(0, (1 << (n * n)) - 1).map(
    lambda mask: Board.from_mask(n, n, mask))), st.sampled_from((2, 3, 4)))
def test_reciprocity(B, q):
    assert reciprocity_check(B, q)


def test_reciprocity_single_index_and_shape_check():
    rep = reciprocity_check(identity_board(3), 3, d=1)
    assert rep and len(rep.lhs) == 1
    with pytest.raises(ValueError):
        reciprocity_check(Board.full(2, 3), 2)


def test_transposed_board_has_same_hits():
    B = Board.from_rows(["*.", "**", ".*"])
    assert q_hit_vector(B, 3).values == q_hit_vector(B.transpose(), 3).values


def test_non_integral_input_is_flagged():
    with pytest.raises(IntegrityError):
        rook_from_hit([0, 1, 0], 2, 3, 2)  # not the hit vector of any board


def test_rook_from_hit_inverts_direct_formula():
    M = [1, 7, 5]
    H = [hit_from_rook_direct(M, 2, 3, 3, k) for k in range(3)]
    assert rook_from_hit(H, 2, 3, 3) == M


def test_complement_of_full_board():
    # the empty board hits nothing, and H_0(empty) = q^(n(n-0) - 4) H_2(full) with n = 2
    assert q_hit_vector(complement(FULL2), 2).values[0] == q_hit_vector(FULL2, 2).values[2]
