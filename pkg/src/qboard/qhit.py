"""q-hit numbers from q-rook numbers, evaluated exactly at integer q.

With the board oriented so that m <= n,

    sum_i H_i(B,q) t^i = q^C(m,2) sum_i M_i(B,q) [n-i]!/[n-m]! (-1)^i (t; 1/q)_i

and H_k has the closed form used by ``q_hit_direct``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import _tpoly as tp
from .board import Board, complement
from .errors import IntegrityError
from .qcount import q_rook_vector
from .rookhit import IdentityReport


def q_int_value(n: int, q: int) -> int:
    return sum(q ** j for j in range(n))


@lru_cache(maxsize=4096)
def q_factorial_value(n: int, q: int) -> int:
    acc = 1
    for j in range(2, n + 1):
        acc *= q_int_value(j, q)
    return acc


@lru_cache(maxsize=4096)
def q_binomial_value(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = q_factorial_value(n, q)
    den = q_factorial_value(k, q) * q_factorial_value(n - k, q)
    return num // den


@dataclass(frozen=True)
class QHitVector:
    q: int
    values: tuple
    provenance: str

    def __getitem__(self, k):
        return self.values[k] if 0 <= k < len(self.values) else 0

    def to_json(self) -> dict:
        return {"q": self.q, "provenance": self.provenance, "values": [str(v) for v in self.values]}


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise IntegrityError(f"{what} = {value} is not an integer")
    return value.numerator


def _rook_side(board: Board, q: int, M, method: str, kw):
    b, _ = board.oriented()
    if M is None:
        M = q_rook_vector(b, q, method, **kw)
    M = list(M) + [0] * (b.m + 1 - len(M))
    return b.m, b.n, M


def hit_from_rook_direct(M, m: int, n: int, q: int, k: int) -> int:
    """H_k from the q-rook vector M of an m x n board (m <= n)."""
    qq = Fraction(q)
    base = q_factorial_value(n - m, q)
    acc = Fraction(0)
    for i in range(k, m + 1):
        if M[i]:
            term = Fraction(M[i] * q_factorial_value(n - i, q), base) * q_binomial_value(i, k, q)
            acc += (-1) ** (i + k) * term / qq ** (i * k)
    return _as_int(acc * qq ** (comb(k + 1, 2) + comb(m, 2)), f"H_{k}")


def q_hit_direct(board: Board, q: int, k: int, M=None, method: str = "orbit", **kw) -> int:
    """H_k(B, q) from the closed form in the q-rook numbers."""
    m, n, M = _rook_side(board, q, M, method, kw)
    if not 0 <= k <= m:
        return 0
    return hit_from_rook_direct(M, m, n, q, k)


def hit_from_rook_genfun(M, m: int, n: int, q: int) -> list:
    inv_q = Fraction(1, q)
    base = q_factorial_value(n - m, q)
    poly = []
    for i in range(m + 1):
        if M[i]:
            w = Fraction(M[i] * q_factorial_value(n - i, q), base) * (-1) ** i
            poly = tp.add(poly, tp.scale(_t_pochhammer(inv_q, i), w))
    poly = tp.scale(poly, Fraction(q) ** comb(m, 2))
    poly = list(poly) + [0] * (m + 1 - len(poly))
    return [_as_int(Fraction(v), f"H_{i}") for i, v in enumerate(poly)]


@lru_cache(maxsize=1024)
def _t_pochhammer(a: Fraction, k: int) -> tuple:
    acc = [1]
    for i in range(k):
        acc = tp.mul(acc, [1, -(a ** i)])
    return tuple(acc)


def q_hit_genfun(board: Board, q: int, M=None, method: str = "orbit", **kw) -> QHitVector:
    """All H_k(B, q) at once, by expanding the generating function in t."""
    m, n, M = _rook_side(board, q, M, method, kw)
    return QHitVector(q, tuple(hit_from_rook_genfun(M, m, n, q)), "genfun")


def q_hit_vector(board: Board, q: int, M=None, method: str = "orbit", **kw) -> QHitVector:
    m, n, M = _rook_side(board, q, M, method, kw)
    return QHitVector(q, tuple(hit_from_rook_direct(M, m, n, q, k) for k in range(m + 1)),
                      "direct-formula")


def rook_from_hit(H, m: int, n: int, q: int) -> list:
    """Inverse transform: M_k from H_k, k <= i <= m."""
    qq = Fraction(q)
    out = []
    for k in range(m + 1):
        s = sum(H[i] * q_binomial_value(i, k, q) for i in range(k, m + 1))
        v = qq ** (comb(k, 2) - comb(m, 2)) * Fraction(q_factorial_value(n - m, q),
                                                        q_factorial_value(n - k, q)) * s
        out.append(_as_int(v, f"M_{k}"))
    return out


def inverse_transform_check(board: Board, q: int, M=None, method: str = "orbit", **kw) -> IdentityReport:
    """Round trip M -> H -> M, compared with the q-rook numbers."""
    m, n, M = _rook_side(board, q, M, method, kw)
    H = [hit_from_rook_direct(M, m, n, q, k) for k in range(m + 1)]
    return IdentityReport.compare(rook_from_hit(H, m, n, q), M)


def reciprocity_check(board: Board, q: int, d: int | None = None, method: str = "orbit",
                      **kw) -> IdentityReport:
    """H_d(complement, q) == q^(n(n-d) - #B) H_(n-d)(B, q) for one d, or all d if None."""
    if board.m != board.n:
        raise ValueError("reciprocity needs a square board")
    n = board.n
    Hb = q_hit_vector(board, q, method=method, **kw).values
    Hc = q_hit_vector(complement(board), q, method=method, **kw).values
    ds = range(n + 1) if d is None else [d]
    lhs, rhs = [], []
    for e in ds:
        lhs.append(Hc[e])
        v = Fraction(q) ** (n * (n - e) - board.size) * Hb[n - e]
        rhs.append(v.numerator if v.denominator == 1 else v)
    return IdentityReport(lhs == rhs, lhs, rhs,
                          next((i for i, (a, b) in enumerate(zip(lhs, rhs)) if a != b), None))
