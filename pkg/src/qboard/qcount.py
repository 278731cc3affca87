"""Counting matrices over GF(q) by rank, with support inside (or exactly) a board.

Two independent counters are provided.  ``m_bruteforce`` enumerates every
assignment of field values to the cells of B.  ``m_orbit`` walks the subsets
C of B and, for each, only the representatives of the torus action (rows and
columns scaled by units) whose spanning-forest entries are 1; each
representative stands for (q-1)**(m + n - components) matrices.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

import numpy as np

from ._kernels import rank_census, support_layout
from .board import Board, graph_summary, maxhit
from .errors import BudgetExceeded, FieldError, IntegrityError
from .gf import FieldContext, make_field, rank_batch
from .rookhit import PatternGraph, rook_numbers

DEFAULT_BUDGET = 10 ** 8
MAX_SUPPORT_CELLS = 26
_CHUNK = 1 << 18


def default_threads() -> int:
    env = os.environ.get("QBOARD_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _field(q: int, field: FieldContext | None) -> FieldContext:
    if field is None:
        return make_field(q)
    if field.q != q:
        raise FieldError(f"field has {field.q} elements, expected {q}")
    return field


@dataclass(frozen=True)
class RankCounts:
    """Matrix counts indexed by rank.

    ``mode`` is "contained" (m_d: support inside B) or "exact" (#S_d: support
    equal to B).  When ``min_rank`` > 0 only ranks >= min_rank were counted
    and lower entries are None.
    """

    q: int
    by_rank: tuple
    mode: str = "contained"
    min_rank: int = 0

    def __getitem__(self, d):
        return self.by_rank[d] if 0 <= d < len(self.by_rank) else 0

    @property
    def total(self) -> int:
        if self.min_rank:
            raise ValueError("partial census has no total")
        return sum(self.by_rank)

    def to_json(self) -> dict:
        return {"q": self.q, "mode": self.mode, "minRank": self.min_rank,
                "byRank": [None if v is None else str(v) for v in self.by_rank]}


@dataclass(frozen=True)
class OrbitCensus:
    """Per-support orbit counts: mask -> (orbits per rank, orbit size)."""

    q: int
    by_support: dict = dc_field(repr=False)

    def exact_counts(self, mask: int) -> list:
        orbits, size = self.by_support[mask]
        return [o * size for o in orbits]


def _grid_masks(board: Board, subset_masks: np.ndarray) -> np.ndarray:
    """Translate subset indices (bit j = j-th cell of B) into grid masks."""
    out = np.zeros(subset_masks.shape, dtype=np.int64)
    for j, (r, c) in enumerate(board.cell_list):
        out |= ((subset_masks >> j) & 1) << np.int64(r * board.n + c)
    return out


def _covering_subsets(board: Board, min_rank: int) -> np.ndarray:
    """Subset masks of B's cells that touch at least min_rank rows and columns."""
    c = board.size
    if c > MAX_SUPPORT_CELLS:
        raise BudgetExceeded(f"{c} cells exceed the support enumeration limit {MAX_SUPPORT_CELLS}")
    subs = np.arange(1 << c, dtype=np.int64)
    if min_rank <= 0:
        return subs
    for axis in (0, 1):
        groups = {}
        for j, cell in enumerate(board.cell_list):
            groups.setdefault(cell[axis], 0)
            groups[cell[axis]] |= 1 << j
        touched = np.zeros(subs.shape, dtype=np.int64)
        for bits in groups.values():
            touched += (subs & bits) != 0
        subs = subs[touched >= min_rank]
    return subs


@dataclass
class _Layout:
    cells: np.ndarray
    subsets: np.ndarray
    pos: np.ndarray
    nforest: np.ndarray
    nfree: np.ndarray
    comps: np.ndarray


def _layout(board: Board, subsets: np.ndarray) -> _Layout:
    cells = np.array([r * board.n + c for r, c in board.cell_list], dtype=np.int64)
    pos, nforest, nfree, comps = support_layout(board.m, board.n, cells, subsets)
    return _Layout(cells, subsets, pos, nforest, nfree, comps)


def representative_count(layout: _Layout, q: int) -> int:
    """Number of forest-normalised representatives the census will rank."""
    free, counts = np.unique(layout.nfree, return_counts=True)
    return sum(int(k) * (q - 1) ** int(f) for f, k in zip(free, counts))


def _census(board: Board, layout: _Layout, field: FieldContext, threads: int) -> np.ndarray:
    """Representative counts per support and rank, shape (S, min(m,n) + 1)."""
    S = layout.subsets.shape[0]
    K = min(board.m, board.n)
    out = np.zeros((S, board.m + 1), dtype=np.int64)
    if board.m == 0 or board.n == 0:
        out[:, 0] = 1
        return out
    args = (board.m, board.n, field.q, field.add, field.mul, field.neg, field.inv)
    bounds = [(a, min(a + _CHUNK, S)) for a in range(0, S, _CHUNK)]

    def run(span):
        a, b = span
        rank_census(*args, layout.pos[a:b], layout.nforest[a:b], layout.nfree[a:b], out[a:b])

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(run, bounds))
    else:
        for span in bounds:
            run(span)
    return out[:, :K + 1]


def _weighted_totals(reps: np.ndarray, nforest: np.ndarray, q: int, lo: int = 0) -> list:
    """sum over supports of reps[s, d] * (q-1)**nforest[s], exactly."""
    totals = [0] * reps.shape[1]
    for f in np.unique(nforest):
        rows = reps[nforest == f]
        scale = (q - 1) ** int(f)
        for d in range(lo, reps.shape[1]):
            totals[d] += int(rows[:, d].sum(dtype=np.int64)) * scale
    return totals


def m_bruteforce(board: Board, q: int, field: FieldContext | None = None,
                 budget: int = DEFAULT_BUDGET) -> RankCounts:
    """m_d(B, q) by ranking all q**#B matrices with support inside B."""
    F = _field(q, field)
    c = board.size
    total = q ** c
    if total > budget:
        raise BudgetExceeded(f"q^#B = {total} exceeds the budget {budget}; use m_orbit instead")
    counts = [0] * (min(board.m, board.n) + 1)
    if board.m == 0 or board.n == 0 or c == 0:
        counts[0] = 1
        return RankCounts(q, tuple(counts))
    rows = np.array([r for r, _ in board.cell_list])
    cols = np.array([col for _, col in board.cell_list])
    powers = q ** np.arange(c, dtype=np.int64)
    step = max(1, _CHUNK // max(board.m * board.n // 4, 1))
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        vals = (idx[:, None] // powers[None, :]) % q
        mats = np.zeros((idx.size, board.m, board.n), dtype=np.int32)
        mats[:, rows, cols] = vals
        ranks = rank_batch(F, mats)
        for d, k in zip(*np.unique(ranks, return_counts=True)):
            counts[int(d)] += int(k)
    return RankCounts(q, tuple(counts))


def m_orbit(board: Board, q: int, field: FieldContext | None = None, *, min_rank: int = 0,
            census: bool = False, threads: int | None = None, budget: int = DEFAULT_BUDGET):
    """m_d(B, q) by torus-orbit representatives of every support C inside B.

    With ``min_rank`` > 0 supports touching fewer than that many rows or
    columns are skipped (they cannot reach the rank) and lower ranks are
    reported as None.  With ``census`` the per-support OrbitCensus is
    returned as a second value.
    """
    F = _field(q, field)
    subsets = _covering_subsets(board, min_rank)
    layout = _layout(board, subsets)
    need = representative_count(layout, q)
    if need > budget:
        raise BudgetExceeded(f"{need} orbit representatives exceed the budget {budget}; "
                             "use a smaller q or raise --budget")
    reps = _census(board, layout, F, threads or default_threads())
    totals = _weighted_totals(reps, layout.nforest, q, min_rank)
    by_rank = tuple(None if d < min_rank else v for d, v in enumerate(totals))
    result = RankCounts(q, by_rank, "contained", min_rank)
    if not census:
        return result
    grid = _grid_masks(board, subsets)
    table = {}
    for s in range(subsets.shape[0]):
        table[int(grid[s])] = (tuple(int(v) for v in reps[s]), (q - 1) ** int(layout.nforest[s]))
    return result, OrbitCensus(q, table)


def m_counts(board: Board, q: int, method: str = "orbit", **kw) -> RankCounts:
    if method == "orbit":
        return m_orbit(board, q, **kw)
    if method == "brute":
        kw.pop("threads", None)
        return m_bruteforce(board, q, **kw)
    raise ValueError(f"unknown counting method {method!r}")


def s_exact(board: Board, q: int, method: str = "direct", field: FieldContext | None = None,
            counter: str = "orbit", budget: int = DEFAULT_BUDGET) -> RankCounts:
    """#S_d(B, q), the number of rank-d matrices whose support is exactly B.

    "direct" ranks the orbit representatives of B alone.  "moebius"
    alternates m_d(C, q) over the subboards C with maxhit(C) >= d, using the
    chosen ``counter`` ("orbit" or "brute") for the m_d(C, q).
    """
    F = _field(q, field)
    K = min(board.m, board.n)
    if method == "direct":
        layout = _layout(board, np.array([(1 << board.size) - 1], dtype=np.int64))
        if (q - 1) ** int(layout.nfree[0]) > budget:
            raise BudgetExceeded("representative count exceeds the budget")
        reps = _census(board, layout, F, 1)
        return RankCounts(q, tuple(_weighted_totals(reps, layout.nforest, q)), "exact")
    if method != "moebius":
        raise ValueError(f"unknown method {method!r}")
    cells = board.cell_list
    out = [0] * (K + 1)
    if counter == "orbit":
        subsets = np.arange(1 << len(cells), dtype=np.int64)
        layout = _layout(board, subsets)
        if representative_count(layout, q) > budget:
            raise BudgetExceeded("representative count exceeds the budget")
        exact = _census(board, layout, F, default_threads()).astype(object)
        exact *= np.array([(q - 1) ** int(f) for f in layout.nforest], dtype=object)[:, None]
        contained = zeta_transform(exact, len(cells))
        sub_boards = (Board(board.m, board.n, frozenset(cells[j] for j in range(len(cells)) if s >> j & 1))
                      for s in range(1 << len(cells)))
        rows = ((C, list(contained[s])) for s, C in enumerate(sub_boards))
    elif counter == "brute":
        from .board import subboards
        rows = ((C, list(m_bruteforce(C, q, F, budget).by_rank)) for C in subboards(board))
    else:
        raise ValueError(f"unknown counter {counter!r}")
    for C, m in rows:
        sign = -1 if (board.size - C.size) % 2 else 1
        mh = maxhit(C)
        for d in range(min(mh, K) + 1):
            out[d] += sign * int(m[d])
    return RankCounts(q, tuple(out), "exact")


def _to_q_rook(m_counts, q: int) -> list:
    out = []
    for d, v in enumerate(m_counts):
        if v is None:
            out.append(None)
            continue
        den = (q - 1) ** d
        if v % den:
            raise IntegrityError(f"m_{d} = {v} is not divisible by (q-1)^{d} at q = {q}")
        out.append(v // den)
    return out


def q_rook_vector(board: Board, q: int, method: str = "orbit", **kw) -> list:
    """[M_0(B, q), ..., M_min(m,n)(B, q)] with M_d = m_d / (q-1)^d."""
    return _to_q_rook(m_counts(board, q, method, **kw).by_rank, q)


def q_rook(board: Board, q: int, d: int, method: str = "orbit", **kw) -> int:
    if d < 0 or d > min(board.m, board.n):
        return 0
    if method == "orbit" and d > 0:
        kw.setdefault("min_rank", d)
    return q_rook_vector(board, q, method, **kw)[d]


_PATTERN_ORBITS = {
    (PatternGraph.Z, 2): lambda q: 1,
    (PatternGraph.SHOELACE, 2): lambda q: q - 2,
    (PatternGraph.WEDGE_COL, 1): lambda q: 1,
    (PatternGraph.WEDGE_ROW, 1): lambda q: 1,
}

_TEMPLATES = {
    PatternGraph.Z: Board.from_rows(["**", ".*"]),
    PatternGraph.SHOELACE: Board.from_rows(["**", "**"]),
    PatternGraph.WEDGE_COL: Board.from_rows(["**"]),
    PatternGraph.WEDGE_ROW: Board.from_rows(["*", "*"]),
}


def template_board(G: PatternGraph) -> Board:
    """The pattern's cells as a board in its own x by y grid."""
    return _TEMPLATES[G]


def orbit_count_pattern(G: PatternGraph, D: int, q: int) -> int:
    """Number of torus orbits of rank D among matrices with support G."""
    try:
        return _PATTERN_ORBITS[(G, D)](q)
    except KeyError:
        raise ValueError(f"unsupported pair ({G.label}, {D})") from None


def orbit_count_measured(board: Board, d: int, q: int) -> int:
    """#S_d(B, q) / (q-1)^(m + n - components), asserting exactness."""
    s = s_exact(board, q)[d]
    size = (q - 1) ** (board.m + board.n - graph_summary(board).components)
    if s % size:
        raise IntegrityError(f"#S_{d} = {s} is not a multiple of the orbit size {size}")
    return s // size


def connected_graph_orbits(q: int, max_side: int = 2) -> list:
    """(board, rank, orbit count) for every connected bipartite graph with all
    vertices active, at most ``max_side`` vertices per side, up to row and
    column relabelling."""
    seen, out = set(), []
    for x, y in product(range(1, max_side + 1), repeat=2):
        for bits in range(1, 1 << (x * y)):
            B = Board.from_mask(x, y, bits)
            g = graph_summary(B)
            if g.active_rows != x or g.active_cols != y or g.components_active != 1:
                continue
            key = _canonical(B)
            if key in seen:
                continue
            seen.add(key)
            for d in range(1, min(x, y) + 1):
                out.append((B, d, orbit_count_measured(B, d, q)))
    return out


def _canonical(board: Board) -> tuple:
    from itertools import permutations
    best = None
    for rp in permutations(range(board.m)):
        for cp in permutations(range(board.n)):
            key = (board.m, board.n, tuple(sorted((rp[r], cp[c]) for r, c in board.cells)))
            if best is None or key < best:
                best = key
    return best


def zeta_transform(arr: np.ndarray, nbits: int) -> np.ndarray:
    """out[S] = sum over T subset of S of arr[T], along axis 0 (length 2**nbits)."""
    a = np.array(arr, copy=True)
    tail = a.shape[1:]
    for b in range(nbits):
        v = a.reshape((-1, 2, 1 << b) + tail)
        v[:, 1] += v[:, 0]
    return a


def moebius_transform(arr: np.ndarray, nbits: int) -> np.ndarray:
    """Inverse of ``zeta_transform``."""
    a = np.array(arr, copy=True)
    tail = a.shape[1:]
    for b in range(nbits):
        v = a.reshape((-1, 2, 1 << b) + tail)
        v[:, 1] -= v[:, 0]
    return a


@dataclass(frozen=True)
class SupportTable:
    """#S_d and m_d for every board of the m x n grid, indexed by grid mask."""

    m: int
    n: int
    q: int
    exact: np.ndarray = dc_field(repr=False)
    components: np.ndarray = dc_field(repr=False)

    @property
    def contained(self) -> np.ndarray:
        return zeta_transform(self.exact, self.m * self.n)


@lru_cache(maxsize=8)
def support_table(m: int, n: int, q: int, threads: int | None = None) -> SupportTable:
    """Exact-support rank counts for all 2**(mn) supports of the grid, via the orbit census.

    Entries are int64; this is only used for grids with (q-1)**(mn) < 2**62.
    """
    if (q - 1) ** (m * n) >= 1 << 62 or q ** (m * n) >= 1 << 62:
        raise BudgetExceeded("counts would overflow 64-bit integers")
    grid = Board.full(m, n)
    subsets = np.arange(1 << (m * n), dtype=np.int64)
    layout = _layout(grid, subsets)
    reps = _census(grid, layout, make_field(q), threads or default_threads())
    scale = np.array([(q - 1) ** f for f in range(m * n + 1)], dtype=np.int64)
    exact = reps * scale[layout.nforest][:, None]
    exact.setflags(write=False)
    comps = layout.comps.copy()
    comps.setflags(write=False)
    return SupportTable(m, n, q, exact, comps)


def rook_table(m: int, n: int) -> np.ndarray:
    """r_d for every board of the m x n grid, shape (2**(mn), min(m,n) + 1)."""
    K = min(m, n)
    out = np.zeros((1 << (m * n), K + 1), dtype=np.int64)
    for mask in range(1 << (m * n)):
        out[mask] = rook_numbers(Board.from_mask(m, n, mask))[:K + 1]
    return out


def q_rook_table(m: int, n: int, q: int, threads: int | None = None) -> np.ndarray:
    """M_d(B, q) for every board of the m x n grid, as an object array of Python ints."""
    contained = support_table(m, n, q, threads).contained.astype(object)
    for d in range(contained.shape[1]):
        den = (q - 1) ** d
        col = contained[:, d]
        if any(v % den for v in col):
            raise IntegrityError(f"some m_{d} is not divisible by (q-1)^{d} at q = {q}")
        contained[:, d] = col // den
    return contained
