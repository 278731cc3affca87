"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

from itertools import combinations, permutations, product
from math import prod

from qboard.board import Board
from qboard.rookhit import PatternGraph

_SHAPES = {(2, 1, 2): PatternGraph.WEDGE_ROW, (1, 2, 2): PatternGraph.WEDGE_COL,
           (2, 2, 3): PatternGraph.Z, (2, 2, 4): PatternGraph.SHOELACE}


def classify_pattern(board: Board):
    """Group cells into line-connected clusters and read off (rows, cols, cells) per cluster."""
    left = set(board.cells)
    special, edges = [], 0
    while left:
        cluster = {left.pop()}
        grew = True
        while grew:
            grew = False
            for cell in list(left):
                if any(cell[0] == o[0] or cell[1] == o[1] for o in cluster):
                    cluster.add(cell)
                    left.discard(cell)
                    grew = True
        sig = (len({r for r, _ in cluster}), len({c for _, c in cluster}), len(cluster))
        if sig == (1, 1, 1):
            edges += 1
        elif sig in _SHAPES:
            special.append(_SHAPES[sig])
        else:
            return None
    if len(special) > 1:
        return None
    return (special[0] if special else PatternGraph.EMPTY), edges


def rook_numbers(board: Board) -> list:
    """Count i-subsets of B with no two cells in a line."""
    cells = board.cell_list
    K = min(board.m, board.n)
    out = []
    for i in range(K + 1):
        count = 0
        for sub in combinations(cells, i):
            if len({r for r, _ in sub}) == i and len({c for _, c in sub}) == i:
                count += 1
        out.append(count)
    return out


def hit_numbers(board: Board) -> list:
    """Place m rooks in distinct columns of an m x n grid (m <= n) and count hits."""
    b, _ = board.oriented()
    out = [0] * (b.m + 1)
    for cols in permutations(range(b.n), b.m):
        out[sum((r, c) in b.cells for r, c in enumerate(cols))] += 1
    return out


def gen_rook(board: Board, F: PatternGraph, i: int) -> int:
    """Classify every subset of B."""
    cells = board.cell_list
    count = 0
    for k in range(len(cells) + 1):
        for sub in combinations(cells, k):
            if classify_pattern(Board(board.m, board.n, frozenset(sub))) == (F, i):
                count += 1
    return count


def gen_hit(board: Board, F: PatternGraph, d: int) -> int:
    """Classify every subset of the grid with the right shape."""
    m, n = board.m, board.n
    rest = min(m - F.rows, n - F.cols)
    if rest < 0:
        return 0
    size = {PatternGraph.EMPTY: 0, PatternGraph.Z: 3, PatternGraph.SHOELACE: 4,
            PatternGraph.WEDGE_ROW: 2, PatternGraph.WEDGE_COL: 2}[F] + rest
    grid = [(r, c) for r in range(m) for c in range(n)]
    count = 0
    for sub in combinations(grid, size):
        sigma = frozenset(sub)
        if classify_pattern(Board(m, n, sigma)) != (F, rest):
            continue
        if classify_pattern(Board(m, n, sigma & board.cells)) == (F, d):
            count += 1
    return count


def full_grid_rank_count(m: int, n: int, d: int, q: int) -> int:
    """Number of m x n matrices of rank d over GF(q)."""
    num = prod((q ** m - q ** i) * (q ** n - q ** i) for i in range(d))
    den = prod(q ** d - q ** i for i in range(d))
    return num // den


def q_int(n: int, q: int) -> int:
    return (q ** n - 1) // (q - 1) if q != 1 else n


def q_factorial(n: int, q: int) -> int:
    return prod(q_int(i, q) for i in range(1, n + 1))


def q_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    return q_factorial(n, q) // (q_factorial(k, q) * q_factorial(n - k, q))


def rank_mod_p(rows, p: int) -> int:
    """Gaussian elimination over the prime field GF(p)."""
    a = [list(r) for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], p - 2, p)
        for i in range(len(a)):
            if i != rank and a[i][c] % p:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def m_counts_prime(board: Board, p: int) -> list:
    """m_d over a prime field by enumerating every filling."""
    out = [0] * (min(board.m, board.n) + 1)
    cells = board.cell_list
    for vals in product(range(p), repeat=len(cells)):
        mat = [[0] * board.n for _ in range(board.m)]
        for (r, c), v in zip(cells, vals):
            mat[r][c] = v
        out[rank_mod_p(mat, p)] += 1
    return out

