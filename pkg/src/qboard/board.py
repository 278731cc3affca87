"""Boards: subsets of an m x n grid, their bi-colored graphs and rook placements.

Cells are stored 0-based internally; the text and JSON formats are 1-based.

Text format::

    <m> <n>
    m lines of exactly n characters from '*' (cell) and '.' (no cell)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import BoardParseError, BudgetExceeded

SUBBOARD_LIMIT = 30

FANO_ROWS = (
    "**...*.",
    ".**...*",
    "*.**...",
    ".*.**..",
    "..*.**.",
    "...*.**",
    "*...*.*",
)


@dataclass(frozen=True)
class Board:
    """A board B inside the grid [m] x [n]."""

    m: int
    n: int
    cells: frozenset

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("board dimensions must be non-negative")
        if not isinstance(self.cells, frozenset):
            object.__setattr__(self, "cells", frozenset(self.cells))
        for r, c in self.cells:
            if not (0 <= r < self.m and 0 <= c < self.n):
                raise ValueError(f"cell ({r + 1}, {c + 1}) outside [{self.m}]x[{self.n}]")

    @classmethod
    def from_cells(cls, m: int, n: int, cells: Iterable, one_based: bool = False) -> "Board":
        off = 1 if one_based else 0
        return cls(m, n, frozenset((int(r) - off, int(c) - off) for r, c in cells))

    @classmethod
    def from_mask(cls, m: int, n: int, mask: int) -> "Board":
        cells = []
        while mask:
            low = mask & -mask
            i = low.bit_length() - 1
            cells.append(divmod(i, n))
            mask ^= low
        return cls(m, n, frozenset(cells))

    @classmethod
    def full(cls, m: int, n: int) -> "Board":
        return cls(m, n, frozenset((r, c) for r in range(m) for c in range(n)))

    @classmethod
    def empty(cls, m: int, n: int) -> "Board":
        return cls(m, n, frozenset())

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "Board":
        rows = list(rows)
        n = len(rows[0]) if rows else 0
        cells = [(r, c) for r, line in enumerate(rows) for c, ch in enumerate(line) if ch == "*"]
        return cls(len(rows), n, frozenset(cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.cells

    def __repr__(self) -> str:
        return f"Board({self.m}x{self.n}, #B={len(self.cells)}, mask={self.mask:#x})"

    @property
    def size(self) -> int:
        return len(self.cells)

    @cached_property
    def cell_list(self) -> tuple:
        """Cells in row-major order."""
        return tuple(sorted(self.cells))

    @cached_property
    def mask(self) -> int:
        """Bitmask with bit r*n + c set for each cell."""
        out = 0
        for r, c in self.cells:
            out |= 1 << (r * self.n + c)
        return out

    def transpose(self) -> "Board":
        return Board(self.n, self.m, frozenset((c, r) for r, c in self.cells))

    def oriented(self) -> tuple["Board", bool]:
        """Return (board with m <= n, whether it was transposed)."""
        if self.m <= self.n:
            return self, False
        return self.transpose(), True

    def restrict(self, rows: Iterable[int], cols: Iterable[int]) -> "Board":
        """The board on the sub-grid rows x cols, reindexed from 0."""
        rows = sorted(rows)
        cols = sorted(cols)
        ri = {r: i for i, r in enumerate(rows)}
        ci = {c: j for j, c in enumerate(cols)}
        cells = frozenset((ri[r], ci[c]) for r, c in self.cells if r in ri and c in ci)
        return Board(len(rows), len(cols), cells)

    def to_text(self) -> str:
        lines = [f"{self.m} {self.n}"]
        for r in range(self.m):
            lines.append("".join("*" if (r, c) in self.cells else "." for c in range(self.n)))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "cells": [[r + 1, c + 1] for r, c in self.cell_list]}


@dataclass(frozen=True)
class GraphSummary:
    active_rows: int
    active_cols: int
    components: int
    components_active: int


def parse_board(text: str) -> Board:
    """Parse the '*'/'.' board file format."""
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    header = lines[0]
    parts = header.split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise BoardParseError(f"expected header '<m> <n>', got {header!r}", line=1)
    m, n = int(parts[0]), int(parts[1])
    if m < 1 or n < 1:
        raise BoardParseError("board dimensions must be positive", line=1)
    body = lines[1:]
    if len(body) != m:
        raise BoardParseError(f"expected {m} rows, found {len(body)}", line=len(lines))
    cells = []
    for r, row in enumerate(body):
        lineno = r + 2
        for c, ch in enumerate(row):
            if ch not in "*.":
                raise BoardParseError(f"unexpected character {ch!r}", line=lineno, column=c + 1)
            if ch == "*" and c < n:
                cells.append((r, c))
        if len(row) != n:
            raise BoardParseError(f"expected {n} characters, found {len(row)}", line=lineno,
                                  column=min(len(row), n) + 1)
    return Board(m, n, frozenset(cells))


def parse_board_json(doc) -> Board:
    """Parse {"m":..,"n":..,"cells":[[r,c],...]} (1-based), from a str or dict."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise BoardParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    try:
        m, n, raw = int(doc["m"]), int(doc["n"]), doc["cells"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BoardParseError(f"board JSON needs integer 'm', 'n' and a 'cells' list ({exc})") from None
    if m < 1 or n < 1:
        raise BoardParseError("board dimensions must be positive")
    cells = set()
    for k, cell in enumerate(raw):
        try:
            r, c = (int(v) for v in cell)
        except (TypeError, ValueError):
            raise BoardParseError(f"cell #{k + 1} is not a pair of integers") from None
        if not (1 <= r <= m and 1 <= c <= n):
            raise BoardParseError(f"cell #{k + 1} = ({r}, {c}) outside [{m}]x[{n}]")
        if (r - 1, c - 1) in cells:
            raise BoardParseError(f"duplicate cell ({r}, {c})")
        cells.add((r - 1, c - 1))
    return Board(m, n, frozenset(cells))


def load_board(path) -> Board:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_board_json(text)
    return parse_board(text)


def complement(board: Board) -> Board:
    full = {(r, c) for r in range(board.m) for c in range(board.n)}
    return Board(board.m, board.n, frozenset(full - board.cells))


def graph_summary(board: Board) -> GraphSummary:
    """Connected components of G(B): row vertices 0..m-1, column vertices m..m+n-1."""
    m, n = board.m, board.n
    parent = list(range(m + n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = m + n
    for r, c in board.cells:
        a, b = find(r), find(m + c)
        if a != b:
            parent[a] = b
            comps -= 1
    rows = {r for r, _ in board.cells}
    cols = {c for _, c in board.cells}
    isolated = (m - len(rows)) + (n - len(cols))
    return GraphSummary(len(rows), len(cols), comps, comps - isolated)


def maxhit(board: Board) -> int:
    """Maximum number of non-attacking rooks on B (maximum matching in G(B))."""
    adj = [[] for _ in range(board.m)]
    for r, c in board.cell_list:
        adj[r].append(c)
    match_col = [-1] * board.n

    def augment(r, seen):
        for c in adj[r]:
            if not seen[c]:
                seen[c] = True
                if match_col[c] < 0 or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    size = 0
    for r in range(board.m):
        if adj[r] and augment(r, [False] * board.n):
            size += 1
    return size


def subboards(board: Board, min_maxhit: int | None = None) -> Iterator[Board]:
    """Yield every C subset of B (2**#B of them), optionally only those with maxhit(C) >= min_maxhit."""
    cells = board.cell_list
    if len(cells) > SUBBOARD_LIMIT:
        raise BudgetExceeded(
            f"board has {len(cells)} cells; subboard enumeration is limited to {SUBBOARD_LIMIT}")
    for sel in range(1 << len(cells)):
        sub = Board(board.m, board.n, frozenset(cells[i] for i in range(len(cells)) if sel >> i & 1))
        if min_maxhit is None or maxhit(sub) >= min_maxhit:
            yield sub


def fano_board() -> Board:
    return Board.from_rows(FANO_ROWS)


def identity_board(n: int) -> Board:
    return Board(n, n, frozenset((i, i) for i in range(n)))
