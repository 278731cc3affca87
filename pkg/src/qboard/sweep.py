"""Whole-grid tables: every board of an m x n grid at once, indexed by cell mask.

Rook numbers come from a subset-sum transform of the indicator of
non-attacking placements; q-rook numbers from the orbit support table; hit
and q-hit numbers from the corresponding linear transforms.  The per-board
functions elsewhere in the package are the reference these tables are
checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

import numpy as np

from . import _tpoly as tp
from .errors import BudgetExceeded
from .gf import make_field, rank_batch
from .qcount import support_table, zeta_transform
from .qhit import q_binomial_value, q_factorial_value

BRUTE_GRID_LIMIT = 2 * 10 ** 6


def popcounts(nbits: int) -> np.ndarray:
    masks = np.arange(1 << nbits, dtype=np.int64)
    out = np.zeros(masks.shape, dtype=np.int64)
    for b in range(nbits):
        out += (masks >> b) & 1
    return out


def transpose_index(m: int, n: int) -> np.ndarray:
    """perm[mask] = mask of the transposed board (n x m grid)."""
    masks = np.arange(1 << (m * n), dtype=np.int64)
    out = np.zeros(masks.shape, dtype=np.int64)
    for r in range(m):
        for c in range(n):
            out |= ((masks >> (r * n + c)) & 1) << (c * m + r)
    return out


@lru_cache(maxsize=None)
def rook_table(m: int, n: int) -> np.ndarray:
    """r_d(B) for every mask, shape (2**(mn), min(m,n) + 1)."""
    nb = m * n
    K = min(m, n)
    masks = np.arange(1 << nb, dtype=np.int64)
    pc = popcounts(nb)
    ok = np.ones(masks.shape, dtype=bool)
    for r in range(m):
        row = ((1 << n) - 1) << (r * n)
        ok &= popcounts(n)[(masks & row) >> (r * n)] <= 1
    for c in range(n):
        hits = np.zeros(masks.shape, dtype=np.int64)
        for r in range(m):
            hits += (masks >> (r * n + c)) & 1
        ok &= hits <= 1
    ind = np.zeros((1 << nb, K + 1), dtype=np.int64)
    for d in range(K + 1):
        ind[:, d] = ok & (pc == d)
    out = zeta_transform(ind, nb)
    out.setflags(write=False)
    return out


def hit_matrix(m: int, n: int) -> np.ndarray:
    """Integer matrix T with h = T r for boards oriented so that m <= n."""
    T = np.zeros((m + 1, m + 1), dtype=object)
    for i in range(m + 1):
        w = factorial(n - i) // factorial(n - m)
        for j, c in enumerate(tp.t_minus_1_pow(i)):
            T[j, i] += w * c
    return T


def qhit_matrix(m: int, n: int, q: int) -> np.ndarray:
    """Integer matrix T with H = T M (m <= n); every entry is a polynomial in q."""
    T = np.zeros((m + 1, m + 1), dtype=object)
    base = q_factorial_value(n - m, q)
    for k in range(m + 1):
        for i in range(k, m + 1):
            e = comb(k + 1, 2) + comb(m, 2) - i * k
            T[k, i] = ((-1) ** (i + k) * q ** e * (q_factorial_value(n - i, q) // base)
                       * q_binomial_value(i, k, q))
    return T


@dataclass(frozen=True)
class ShapeTables:
    """Tables for every board of one m x n grid at one q (m <= n after orientation)."""

    m: int
    n: int
    q: int
    sizes: np.ndarray = field(repr=False)
    components: np.ndarray = field(repr=False)
    rook: np.ndarray = field(repr=False)
    hit: np.ndarray = field(repr=False)
    exact: np.ndarray = field(repr=False)
    contained: np.ndarray = field(repr=False)
    qrook: np.ndarray = field(repr=False)
    qhit: np.ndarray = field(repr=False)


def _transpose_rows(arr: np.ndarray, perm: np.ndarray) -> np.ndarray:
    out = np.empty_like(arr)
    out[perm] = arr
    return out


def shape_tables(m: int, n: int, q: int, threads: int | None = None) -> ShapeTables:
    """All rook/hit/matrix-count tables of the m x n grid at q.

    A grid with m > n is served from the n x m tables through the mask
    transposition, so every board is reported in its own indexing.
    """
    if m > n:
        base = shape_tables(n, m, q, threads)
        perm = transpose_index(n, m)
        arrays = {k: _transpose_rows(getattr(base, k), perm)
                  for k in ("sizes", "components", "rook", "hit", "exact", "contained", "qrook", "qhit")}
        return ShapeTables(m, n, q, **arrays)
    nb = m * n
    st = support_table(m, n, q, threads)
    rook = rook_table(m, n)
    hit = (rook.astype(object) @ hit_matrix(m, n).T)
    contained = st.contained.astype(object)
    qrook = contained.copy()
    for d in range(qrook.shape[1]):
        qrook[:, d] = contained[:, d] // (q - 1) ** d
    qhit = qrook @ qhit_matrix(m, n, q).T
    return ShapeTables(m, n, q, popcounts(nb), np.asarray(st.components), rook, hit,
                       np.asarray(st.exact), contained, qrook, qhit)


def exact_support_bruteforce(m: int, n: int, q: int, limit: int = BRUTE_GRID_LIMIT) -> np.ndarray:
    """#S_d(C, q) for every support C of the grid, by ranking all q**(mn) matrices."""
    total = q ** (m * n)
    if total > limit:
        raise BudgetExceeded(f"q^(mn) = {total} exceeds {limit}")
    F = make_field(q)
    K = min(m, n)
    out = np.zeros((1 << (m * n), K + 1), dtype=np.int64)
    powers = q ** np.arange(m * n, dtype=np.int64)
    bits = np.int64(1) << np.arange(m * n, dtype=np.int64)
    step = 1 << 16
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        vals = (idx[:, None] // powers[None, :]) % q
        support = ((vals != 0) * bits[None, :]).sum(axis=1)
        ranks = rank_batch(F, vals.reshape(-1, m, n).astype(np.int32))
        np.add.at(out, (support, ranks), 1)
    return out
