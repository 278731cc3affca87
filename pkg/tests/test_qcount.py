import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qboard.board import Board, graph_summary
from qboard.errors import BudgetExceeded, FieldError
from qboard.gf import irreducible_polynomials, make_field
from qboard.qcount import (PatternGraph, connected_graph_orbits, m_bruteforce, m_counts, m_orbit,
                           moebius_transform, orbit_count_measured, orbit_count_pattern, q_rook,
                           q_rook_table, q_rook_vector, s_exact, support_table, template_board,
                           zeta_transform)
from qboard.rookhit import rook_numbers

from . import oracles
from .test_board import boards

FULL2 = Board.full(2, 2)


@pytest.mark.parametrize("m, n, q", [(2, 2, 2), (2, 2, 3), (2, 3, 4), (3, 3, 2), (3, 3, 3), (2, 4, 5)])
def test_full_grid_closed_form(m, n, q):
    got = m_orbit(Board.full(m, n), q).by_rank
    assert list(got) == [oracles.full_grid_rank_count(m, n, d, q) for d in range(min(m, n) + 1)]


@settings(max_examples=40, deadline=None)
@given(boards(3, 3), st.sampled_from((2, 3, 5)))
def test_brute_force_matches_prime_field_oracle(B, p):
    if p ** B.size <= 20000:
        assert list(m_bruteforce(B, p).by_rank) == oracles.m_counts_prime(B, p)


@settings(max_examples=60, deadline=None)
@given(boards(3, 4), st.sampled_from((2, 3, 4, 5, 7, 8, 9)))
def test_orbit_matches_brute_force(B, q):
    if q ** B.size <= 3 * 10 ** 5:
        assert m_orbit(B, q) == m_bruteforce(B, q)


def test_counts_partition_all_matrices():
    B = Board.from_rows(["**.", ".**", "*.*"])
    for q in (2, 3, 4, 7):
        assert m_orbit(B, q).total == q ** B.size


def test_min_rank_skips_low_ranks():
    B = Board.from_rows(["**.", ".**", "*.*"])
    full = m_orbit(B, 5)
    part = m_orbit(B, 5, min_rank=2)
    assert part.by_rank[:2] == (None, None) and part.by_rank[2:] == full.by_rank[2:]
    with pytest.raises(ValueError):
        part.total
    assert q_rook(B, 5, 3) == q_rook(B, 5, 3, method="brute")


def test_q_rook_full_2x2():
    for q in (2, 3, 4, 5):
        assert q_rook(FULL2, q, 2) == (q * q - 1) * (q * q - q) // (q - 1) ** 2


@settings(max_examples=40, deadline=None)
@given(boards(3, 3), st.sampled_from((2, 3, 4, 5)))
def test_q_rook_reduces_to_rook_number(B, q):
    M = q_rook_vector(B, q)
    r = rook_numbers(B)
    assert all((a - b) % (q - 1) == 0 for a, b in zip(M, r))


def test_representation_independence():
    B = Board.from_rows(["**.", ".**", "*.*"])
    for q, p, e in ((8, 2, 3), (9, 3, 2)):
        results = {m_orbit(B, q, make_field(q, mod)) for mod in irreducible_polynomials(p, e)}
        assert len(results) == 1


def test_field_mismatch_rejected():
    with pytest.raises(FieldError):
        m_orbit(FULL2, 3, make_field(5))
    with pytest.raises(FieldError):
        m_orbit(FULL2, 6)


def test_budgets():
    with pytest.raises(BudgetExceeded):
        m_bruteforce(Board.full(3, 3), 5, budget=10 ** 5)
    with pytest.raises(BudgetExceeded):
        m_orbit(Board.full(3, 3), 9, budget=1000)
    with pytest.raises(BudgetExceeded):
        m_orbit(Board.full(6, 5), 2)
    with pytest.raises(ValueError):
        m_counts(FULL2, 3, "magic")


def test_census_is_consistent():
    B = Board.from_rows(["**", "*."])
    counts, census = m_orbit(B, 3, census=True)
    assert len(census.by_support) == 8
    assert sum(sum(census.exact_counts(s)[d] for s in census.by_support) for d in range(3)) == 27
    assert census.exact_counts(B.mask) == list(s_exact(B, 3).by_rank)


def test_full_2x2_exact_support():
    # 8 = (q-1)^3 (q-2) matrices of rank 2 with full support at q = 3
    assert s_exact(FULL2, 3).by_rank == (0, 8, 8)
    for q in (2, 4, 5):
        assert s_exact(FULL2, q)[1] == (q - 1) ** 3


@settings(max_examples=25, deadline=None)
@given(boards(3, 3), st.sampled_from((2, 3, 4)))
def test_exact_support_methods_agree(B, q):
    direct = s_exact(B, q)
    assert s_exact(B, q, "moebius") == direct
    if q ** B.size <= 5000:
        assert s_exact(B, q, "moebius", counter="brute") == direct


@settings(max_examples=40, deadline=None)
@given(boards(3, 3), st.sampled_from((2, 3, 4, 5)))
def test_exact_support_divisible_by_orbit_size(B, q):
    size = (q - 1) ** (B.m + B.n - graph_summary(B).components)
    assert all(v % size == 0 for v in s_exact(B, q).by_rank)


@pytest.mark.parametrize("G, D", [(PatternGraph.Z, 2), (PatternGraph.SHOELACE, 2),
                                  (PatternGraph.WEDGE_COL, 1), (PatternGraph.WEDGE_ROW, 1)])
def test_pattern_orbits(G, D):
    for q in (2, 3, 4, 5, 7):
        assert orbit_count_measured(template_board(G), D, q) == orbit_count_pattern(G, D, q)
    with pytest.raises(ValueError):
        orbit_count_pattern(G, 3, 3)


def test_connected_graph_orbit_table():
    # (cells, rank) -> orbit count; the shoelace at full rank is the only q-dependent entry
    for q in (3, 4, 5):
        table = {(B.size, d): c for B, d, c in connected_graph_orbits(q)}
        assert table == {(1, 1): 1, (2, 1): 1, (3, 1): 0, (3, 2): 1, (4, 1): 1, (4, 2): q - 2}


def test_zeta_moebius_inverse():
    rng = np.random.default_rng(1)
    a = rng.integers(-50, 50, size=(1 << 6, 3))
    z = zeta_transform(a, 6)
    assert (moebius_transform(z, 6) == a).all()
    assert (z[-1] == a.sum(axis=0)).all()


def test_support_table_matches_per_board():
    T = support_table(2, 3, 3)
    contained = T.contained
    for mask in range(1 << 6):
        B = Board.from_mask(2, 3, mask)
        assert list(T.exact[mask]) == list(s_exact(B, 3).by_rank)
        assert list(contained[mask]) == list(m_orbit(B, 3).by_rank)
        assert T.components[mask] == graph_summary(B).components


def test_q_rook_table():
    tab = q_rook_table(2, 2, 4)
    assert list(tab[FULL2.mask]) == q_rook_vector(FULL2, 4)
