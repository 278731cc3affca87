"""Table-driven arithmetic in GF(q), q = p**e <= 4096, and exact rank.

An element is an integer 0 <= a < q whose base-p digits are the
coefficients (constant term first) of a polynomial in the generator
modulo the reduction polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .board import Board
from .errors import FieldError

MAX_Q = 1 << 12


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    d = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, d - 1, -1):
        f = a[i] * inv_lead % p
        if f:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - f * mod[j]) % p
    return a[:d] + [0] * (d - len(a[:d]))


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    d = len(poly) - 1
    for k in range(1, d // 2 + 1):
        for code in range(p ** k):
            div = [(code // p ** i) % p for i in range(k)] + [1]
            rem = _poly_mod(list(poly), div, p)
            if not any(rem[:k]):
                return False
    return True


def irreducible_polynomials(p: int, e: int):
    """Monic irreducible polynomials of degree e over GF(p), in increasing code order."""
    for code in range(p ** e):
        poly = [(code // p ** i) % p for i in range(e)] + [1]
        if e == 1 or _is_irreducible(poly, p):
            yield tuple(poly)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True, eq=False)
class FieldContext:
    p: int
    e: int
    modulus: tuple
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    @cached_property
    def lists(self):
        """Tables as nested Python lists, for scalar loops."""
        return self.add.tolist(), self.mul.tolist(), self.neg.tolist(), self.inv.tolist()

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int32)


def _build_field(p: int, e: int, modulus: tuple) -> FieldContext:
    q = p ** e
    if e == 1:
        a = np.arange(q, dtype=np.int64)
        add = (a[:, None] + a[None, :]) % p
        mul = (a[:, None] * a[None, :]) % p
        inv = np.array([0] + [pow(int(x), p - 2, p) for x in range(1, q)])
    else:
        digits = [(np.arange(q) // p ** i) % p for i in range(e)]
        add = np.zeros((q, q), dtype=np.int64)
        for i, d in enumerate(digits):
            add += ((d[:, None] + d[None, :]) % p) * p ** i

        def mulmod(x, y):
            xs = [(x // p ** i) % p for i in range(e)]
            ys = [(y // p ** i) % p for i in range(e)]
            r = _poly_mod(_poly_mul(xs, ys, p), modulus, p)
            return sum(c * p ** i for i, c in enumerate(r))

        def power(x, k):
            acc = 1
            while k:
                if k & 1:
                    acc = mulmod(acc, x)
                x = mulmod(x, x)
                k >>= 1
            return acc

        orders = [(q - 1) // r for r in _prime_factors(q - 1)]
        gen = next(g for g in range(2, q) if all(power(g, k) != 1 for k in orders))
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            x = mulmod(x, gen)
        exp[q - 1:] = exp[: q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        nz = np.arange(1, q)
        mul = np.zeros((q, q), dtype=np.int64)
        mul[1:, 1:] = exp[log[nz][:, None] + log[nz][None, :]]
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp[(q - 1 - log[nz]) % (q - 1)]
    neg = np.array([int(np.flatnonzero(add[x] == 0)[0]) for x in range(q)])
    tables = [np.ascontiguousarray(t, dtype=np.int32) for t in (add, mul, neg, inv)]
    for t in tables:
        t.setflags(write=False)
    return FieldContext(p, e, tuple(modulus), *tables)


@lru_cache(maxsize=None)
def make_field(q: int, modulus: tuple | None = None) -> FieldContext:
    """GF(q) with the least irreducible reduction polynomial unless one is given.

    ``modulus`` lists coefficients constant-first and must be monic of degree e.
    """
    p, e = factor_prime_power(q)
    if q > MAX_Q:
        raise FieldError(f"q = {q} exceeds the table limit {MAX_Q}")
    if modulus is None:
        modulus = next(irreducible_polynomials(p, e)) if e > 1 else (0, 1)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"reduction polynomial must be monic of degree {e}")
        if e > 1 and not _is_irreducible(modulus, p):
            raise FieldError(f"{modulus} is reducible over GF({p})")
    return _build_field(p, e, modulus)


@dataclass(frozen=True)
class GFMatrix:
    rows: int
    cols: int
    entries: tuple
    field: FieldContext

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows, field: FieldContext) -> "GFMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r), field)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def support(self) -> Board:
        cells = [divmod(i, self.cols) for i, x in enumerate(self.entries) if x]
        return Board(self.rows, self.cols, frozenset(cells))

    def rank(self) -> int:
        return rank(self)


def rank(M: GFMatrix) -> int:
    """Pivot count of a row-echelon form of M."""
    add, mul, neg, inv = M.field.lists
    a = [list(M.entries[r * M.cols:(r + 1) * M.cols]) for r in range(M.rows)]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        iv = inv[a[r][c]]
        top = a[r]
        for i in range(r + 1, M.rows):
            x = a[i][c]
            if x:
                f = neg[mul[x][iv]]
                row = a[i]
                for j in range(c, M.cols):
                    row[j] = add[row[j]][mul[f][top[j]]]
        r += 1
        if r == M.rows:
            break
    return r


def rank_batch(field: FieldContext, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices, shape (N, m, n), by vectorised elimination."""
    a = np.array(mats, dtype=np.int32, copy=True)
    N, m, n = a.shape
    ranks = np.zeros(N, dtype=np.int64)
    rows = np.arange(m)
    for c in range(n):
        avail = (a[:, :, c] != 0) & (rows[None, :] >= ranks[:, None])
        has = avail.any(axis=1)
        if not has.any():
            continue
        idx = np.flatnonzero(has)
        piv = avail[idx].argmax(axis=1)
        r = ranks[idx]
        prow = a[idx, piv].copy()
        a[idx, piv] = a[idx, r]
        a[idx, r] = prow
        factor = field.mul[a[idx, :, c], field.inv[prow[:, c]][:, None]]
        factor[rows[None, :] <= r[:, None]] = 0
        sub = field.mul[factor[:, :, None], prow[:, None, :]]
        a[idx] = field.add[a[idx], field.neg[sub]]
        ranks[idx] += 1
    return ranks
