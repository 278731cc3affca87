"""Classical and generalized rook and hit numbers.

A generalized rook number r_{F,i}(B) counts cell sets sigma inside B whose
graph is F plus i disjoint edges (plus isolated vertices), for F one of the
five fixed patterns below.  The generalized hit number h_{F,d}(B) counts
cell sets sigma of the whole grid whose graph is F plus a maximal matching
of the leftover grid, with F inside B and exactly d matching edges in B.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, lcm

from . import _tpoly as tp
from .board import Board
from .errors import BudgetExceeded

ROOK_DP_LIMIT = 16


class PatternGraph(enum.Enum):
    EMPTY = ("Empty", 0, 0)
    Z = ("Z", 2, 2)
    SHOELACE = ("Shoelace", 2, 2)
    WEDGE_ROW = ("WedgeRow", 2, 1)
    WEDGE_COL = ("WedgeCol", 1, 2)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def rows(self) -> int:
        return self.value[1]

    @property
    def cols(self) -> int:
        return self.value[2]

    def transpose(self) -> "PatternGraph":
        swap = {PatternGraph.WEDGE_ROW: PatternGraph.WEDGE_COL,
                PatternGraph.WEDGE_COL: PatternGraph.WEDGE_ROW}
        return swap.get(self, self)

    @classmethod
    def parse(cls, name: str) -> "PatternGraph":
        key = name.strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "empty": cls.EMPTY, "e": cls.EMPTY, "none": cls.EMPTY,
            "z": cls.Z,
            "s": cls.SHOELACE, "shoelace": cls.SHOELACE, "k22": cls.SHOELACE,
            "wr": cls.WEDGE_ROW, "wedgerow": cls.WEDGE_ROW,
            "wc": cls.WEDGE_COL, "wedgecol": cls.WEDGE_COL,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown pattern graph {name!r}") from None


PATTERNS = tuple(PatternGraph)
LINEAR_PAIRS = (
    (PatternGraph.Z, 2),
    (PatternGraph.SHOELACE, 2),
    (PatternGraph.WEDGE_COL, 1),
    (PatternGraph.WEDGE_ROW, 1),
)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of comparing two exact polynomials (coefficient lists in t)."""

    ok: bool
    lhs: list
    rhs: list
    first_difference: int | None = None

    def __bool__(self):
        return self.ok

    @classmethod
    def compare(cls, lhs, rhs) -> "IdentityReport":
        lhs, rhs = tp.trim(lhs), tp.trim(rhs)
        diff = tp.first_difference(lhs, rhs)
        return cls(diff is None, lhs, rhs, diff)


def _falling(x, k: int):
    out = 1
    for j in range(k):
        out *= x - j
    return out


def _transpose_mask(m: int, n: int, mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        r, c = divmod(low.bit_length() - 1, n)
        out |= 1 << (c * m + r)
        mask ^= low
    return out


@lru_cache(maxsize=1 << 18)
def _rook_counts(m: int, n: int, mask: int) -> tuple:
    """(r_0, ..., r_min(m,n)) of the board with the given cell mask."""
    if n > m:
        return _rook_counts(n, m, _transpose_mask(m, n, mask))
    if n > ROOK_DP_LIMIT:
        raise BudgetExceeded(f"rook DP needs min(m, n) <= {ROOK_DP_LIMIT}")
    full_row = (1 << n) - 1
    dp = {0: 1}
    for r in range(m):
        bits = (mask >> (r * n)) & full_row
        if not bits:
            continue
        new = dict(dp)
        for used, cnt in dp.items():
            free = bits & ~used
            while free:
                low = free & -free
                key = used | low
                new[key] = new.get(key, 0) + cnt
                free ^= low
        dp = new
    out = [0] * (n + 1)
    for used, cnt in dp.items():
        out[used.bit_count()] += cnt
    return tuple(out)


def _hit_from_rook(r, m: int, n: int) -> list:
    """Hit numbers of an m x n grid (m <= n) from its rook numbers."""
    acc = []
    base = factorial(n - m)
    for i in range(min(m, len(r) - 1) + 1):
        if r[i]:
            acc = tp.add(acc, tp.scale(tp.t_minus_1_pow(i), r[i] * (factorial(n - i) // base)))
    return acc + [0] * (m + 1 - len(acc))


def rook_numbers(board: Board) -> list:
    """[r_0(B), ..., r_min(m,n)(B)]."""
    return list(_rook_counts(board.m, board.n, board.mask))


def hit_numbers(board: Board) -> list:
    """[h_0(B), ..., h_m(B)] with the board oriented so that m <= n."""
    b, _ = board.oriented()
    return _hit_from_rook(rook_numbers(b), b.m, b.n)


@lru_cache(maxsize=None)
def _placements(m: int, n: int, F: PatternGraph) -> tuple:
    """Every cell set of pattern F in the m x n grid, as (cell mask, line mask)."""
    def bit(r, c):
        return 1 << (r * n + c)

    def lines(rows, cols):
        out = 0
        for r in rows:
            out |= ((1 << n) - 1) << (r * n)
        for c in cols:
            for r in range(m):
                out |= bit(r, c)
        return out

    out = []
    if F is PatternGraph.EMPTY:
        out.append((0, 0))
    elif F is PatternGraph.WEDGE_ROW:
        for c in range(n):
            for a, b in combinations(range(m), 2):
                out.append((bit(a, c) | bit(b, c), lines((a, b), (c,))))
    elif F is PatternGraph.WEDGE_COL:
        for a in range(m):
            for c, d in combinations(range(n), 2):
                out.append((bit(a, c) | bit(a, d), lines((a,), (c, d))))
    else:
        for a, b in combinations(range(m), 2):
            for c, d in combinations(range(n), 2):
                block = [bit(a, c), bit(a, d), bit(b, c), bit(b, d)]
                ln = lines((a, b), (c, d))
                if F is PatternGraph.SHOELACE:
                    out.append((sum(block), ln))
                else:
                    for skip in range(4):
                        out.append((sum(block) - block[skip], ln))
    return tuple(out)


def _leftover(board: Board, F: PatternGraph) -> tuple[int, int]:
    return board.m - F.rows, board.n - F.cols


@lru_cache(maxsize=1 << 16)
def gen_rook_vector(board: Board, F: PatternGraph) -> tuple:
    """(r_{F,0}(B), ..., r_{F,M}(B)) with M = min(m - x, n - y)."""
    mr, nr = _leftover(board, F)
    if mr < 0 or nr < 0:
        return ()
    M = min(mr, nr)
    out = [0] * (M + 1)
    mask = board.mask
    for fmask, lmask in _placements(board.m, board.n, F):
        if fmask & mask == fmask:
            r = _rook_counts(board.m, board.n, mask & ~lmask)
            for i in range(min(M, len(r) - 1) + 1):
                out[i] += r[i]
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def gen_hit_vector(board: Board, F: PatternGraph) -> tuple:
    """(h_{F,0}(B), ..., h_{F,M}(B)) with M = min(m - x, n - y)."""
    mr, nr = _leftover(board, F)
    if mr < 0 or nr < 0:
        return ()
    lo, hi = min(mr, nr), max(mr, nr)
    out = [0] * (lo + 1)
    mask = board.mask
    for fmask, lmask in _placements(board.m, board.n, F):
        if fmask & mask == fmask:
            r = _rook_counts(board.m, board.n, mask & ~lmask)
            for d, h in enumerate(_hit_from_rook(r, lo, hi)):
                out[d] += h
    return tuple(out)


def gen_rook(board: Board, F: PatternGraph, i: int) -> int:
    vec = gen_rook_vector(board, F)
    return vec[i] if 0 <= i < len(vec) else 0


def gen_hit(board: Board, F: PatternGraph, d: int) -> int:
    vec = gen_hit_vector(board, F)
    return vec[d] if 0 <= d < len(vec) else 0


def check_gen_hit_rook(board: Board, F: PatternGraph) -> IdentityReport:
    """Compare both sides of the generalized rook-hit relation as polynomials in t."""
    mr, nr = _leftover(board, F)
    if mr < 0 or nr < 0:
        return IdentityReport.compare([], [])
    M, N = min(mr, nr), max(mr, nr)
    r = gen_rook_vector(board, F)
    lhs = []
    for i in range(M + 1):
        w = factorial(N - i) // factorial(N - M)
        lhs = tp.add(lhs, tp.scale(tp.t_minus_1_pow(i), r[i] * w))
    return IdentityReport.compare(lhs, list(gen_hit_vector(board, F)))


def falling_factorial_identity_check(board: Board, k: int) -> IdentityReport:
    """k-th derivative form of the rook-hit relation, both sides expanded in t."""
    b, _ = board.oriented()
    m, n = b.m, b.n
    if not 0 <= k <= m:
        raise ValueError(f"k must lie in [0, {m}]")
    r, h = rook_numbers(b), hit_numbers(b)
    lhs, rhs = [], []
    for i in range(m + 1):
        w = _falling(i, k)
        if not w:
            continue
        lhs = tp.add(lhs, tp.scale(tp.t_minus_1_pow(i), r[i] * w * factorial(n - i) // factorial(n - m)))
        rhs = tp.add(rhs, tp.scale(tp.shift(tp.t_minus_1_pow(k), i - k), w * h[i]))
    return IdentityReport.compare(lhs, rhs)


@dataclass(frozen=True)
class FGDForms:
    """f_{G,D}(B, t) two ways, both scaled by ``denominator`` to integer coefficients."""

    pattern: PatternGraph
    rank: int
    defect: int
    denominator: int
    direct: list
    expanded: list
    transposed: bool = False

    @property
    def agree(self) -> bool:
        return tp.trim(self.direct) == tp.trim(self.expanded)


def f_GD(board: Board, G: PatternGraph, D: int) -> FGDForms:
    """The rook-side sum f_{G,D} and its expansion in generalized hit numbers.

    direct:   sum_i r_{G,i-D}(B) (n-i)!/(n-m)! (t-1)^i
    expanded: (t-1)^D (N-M)!/(n-m)! (-1)^K sum_i [sum_l h_{G,i+l}(B) (-1)^l
              sum_j C(K,j) C(j,l) (-N-1)_{K-j} (i+l)_j] t^i,   K = n - D - N
    """
    if (G, D) not in LINEAR_PAIRS:
        raise ValueError(f"unsupported pair ({G.label}, {D})")
    b, transposed = board.oriented()
    if transposed:
        G = G.transpose()
    m, n = b.m, b.n
    mr, nr = _leftover(b, G)
    if mr < 0 or nr < 0:
        return FGDForms(G, D, 0, 1, [], [], transposed)
    M, N = min(mr, nr), max(mr, nr)
    K = n - D - N
    r = gen_rook_vector(b, G)
    h = gen_hit_vector(b, G)

    direct = []
    for i in range(D, M + D + 1):
        w = Fraction(factorial(n - i), factorial(n - m))
        direct = tp.add(direct, tp.scale(tp.t_minus_1_pow(i), r[i - D] * w))

    inner = []
    for i in range(M + 1):
        total = 0
        for l in range(K + 1):
            if i + l > M:
                break
            s = sum(comb(K, j) * comb(j, l) * _falling(-N - 1, K - j) * _falling(i + l, j)
                    for j in range(l, l + i + 1))
            total += h[i + l] * (-1) ** l * s
        inner.append(total)
    front = Fraction(factorial(N - M), factorial(n - m)) * (-1) ** K
    expanded = tp.scale(tp.mul(tp.t_minus_1_pow(D), inner), front)

    den = 1
    for x in direct + expanded:
        den = lcm(den, Fraction(x).denominator)
    return FGDForms(G, D, K, den,
                    [int(x * den) for x in direct], [int(x * den) for x in expanded], transposed)


def classify_pattern(board: Board):
    """Return (F, i) if G(board) is F plus i disjoint edges plus isolated vertices, else None."""
    m = board.m
    adj: dict = {}
    for r, c in board.cells:
        adj.setdefault(("r", r), set()).add(("c", c))
        adj.setdefault(("c", c), set()).add(("r", r))
    seen = set()
    special = []
    edges = 0
    for v in adj:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        x = sum(1 for u in comp if u[0] == "r")
        y = len(comp) - x
        k = sum(len(adj[u]) for u in comp if u[0] == "r")
        if (x, y, k) == (1, 1, 1):
            edges += 1
            continue
        kind = {(2, 1, 2): PatternGraph.WEDGE_ROW, (1, 2, 2): PatternGraph.WEDGE_COL,
                (2, 2, 3): PatternGraph.Z, (2, 2, 4): PatternGraph.SHOELACE}.get((x, y, k))
        if kind is None:
            return None
        special.append(kind)
    del m
    if len(special) > 1:
        return None
    return (special[0] if special else PatternGraph.EMPTY), edges
