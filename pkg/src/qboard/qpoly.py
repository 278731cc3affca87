"""Exact q-analogues as integer polynomials, in the q basis or in x = q - 1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import _tpoly as tp

BASES = ("q", "x")


@dataclass(frozen=True)
class BigPoly:
    """Integer polynomial; ``coeffs[i]`` multiplies ``basis**i``."""

    coeffs: tuple
    basis: str = "q"

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in tp.trim(self.coeffs)))

    @classmethod
    def one(cls, basis: str = "q") -> "BigPoly":
        return cls((1,), basis)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other: "BigPoly"):
        if self.basis != other.basis:
            raise ValueError("polynomials are in different bases")

    def __add__(self, other):
        if isinstance(other, int):
            other = BigPoly((other,), self.basis)
        self._check(other)
        return BigPoly(tp.add(self.coeffs, other.coeffs), self.basis)

    __radd__ = __add__

    def __neg__(self):
        return BigPoly(tp.scale(self.coeffs, -1), self.basis)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BigPoly(tp.scale(self.coeffs, other), self.basis)
        self._check(other)
        return BigPoly(tp.mul(self.coeffs, other.coeffs), self.basis)

    __rmul__ = __mul__

    def divmod_exact(self, other: "BigPoly") -> "BigPoly":
        """Quotient by a polynomial with leading coefficient +-1; the remainder must vanish."""
        self._check(other)
        a, b = list(self.coeffs), list(other.coeffs)
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = b[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        quot = [0] * max(len(a) - len(b) + 1, 0)
        for i in range(len(quot) - 1, -1, -1):
            f = a[i + len(b) - 1] * lead
            quot[i] = f
            for j, y in enumerate(b):
                a[i + j] -= f * y
        if any(a):
            raise ArithmeticError("polynomial division is not exact")
        return BigPoly(quot, self.basis)

    def __floordiv__(self, other):
        return self.divmod_exact(other)

    def __call__(self, value):
        return tp.evaluate(self.coeffs, value)

    def evaluate_q(self, q):
        """Value at the point q, whichever basis the coefficients use."""
        return self(q - 1) if self.basis == "x" else self(q)

    def to_x(self) -> "BigPoly":
        """Taylor expansion about q = 1 by repeated synthetic division by (q - 1)."""
        if self.basis == "x":
            return self
        a, out = list(self.coeffs), []
        while a:
            rem, quot = 0, [0] * len(a)
            for i in range(len(a) - 1, -1, -1):
                rem = a[i] + rem
                quot[i] = rem
            out.append(quot[0])
            a = tp.trim(quot[1:])
        return BigPoly(out, "x")

    def to_q(self) -> "BigPoly":
        """Substitute x = q - 1."""
        if self.basis == "q":
            return self
        acc = []
        for c in reversed(self.coeffs):
            acc = tp.add(tp.mul(acc, [-1, 1]), [c])
        return BigPoly(acc, "q")

    def truncate(self, k: int) -> "BigPoly":
        """Remainder modulo basis**k."""
        return BigPoly(self.coeffs[:k], self.basis)

    def to_json(self) -> dict:
        return {"basis": self.basis, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> "BigPoly":
        return cls(tuple(int(c) for c in doc["coeffs"]), doc["basis"])


def q_int(n: int) -> BigPoly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return BigPoly((1,) * n)


def q_power(n: int) -> BigPoly:
    return BigPoly((0,) * n + (1,))


def q_factorial(n: int) -> BigPoly:
    acc = BigPoly.one()
    for i in range(2, n + 1):
        acc = acc * q_int(i)
    return acc


def q_binomial(n: int, k: int) -> BigPoly:
    """Gaussian binomial coefficient; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return BigPoly(())
    k = min(k, n - k)
    num = BigPoly.one()
    for i in range(n - k + 1, n + 1):
        num = num * q_int(i)
    return num // q_factorial(k)


def q_pochhammer(a, k: int) -> list:
    """(a t; q)_k = prod_{i<k} (1 - a t q^i) as a list in t of BigPoly coefficients.

    ``a`` is a BigPoly in q (or an int); pass 1 for (t; q)_k.
    """
    if isinstance(a, int):
        a = BigPoly((a,))
    acc = [BigPoly.one()]
    for i in range(k):
        factor = -(a * q_power(i))
        nxt = [BigPoly(()) for _ in range(len(acc) + 1)]
        for j, c in enumerate(acc):
            nxt[j] = nxt[j] + c
            nxt[j + 1] = nxt[j + 1] + c * factor
        acc = nxt
    return acc


def q_pochhammer_value(a, q, k: int):
    """(a; q)_k at numbers a, q (exact for int or Fraction inputs)."""
    acc = 1
    for i in range(k):
        acc *= 1 - a * Fraction(q) ** i
    return acc


def t_pochhammer_values(q, k: int) -> list:
    """Coefficients in t of (t; q)_k at a numeric q (exact for int or Fraction)."""
    acc = [1]
    for i in range(k):
        acc = tp.mul(acc, [1, -(Fraction(q) ** i)])
    return acc


def pochhammer_a(a: int, n: int) -> BigPoly:
    """(a; q)_n for an integer constant a, as a polynomial in q."""
    acc = BigPoly.one()
    for i in range(n):
        acc = acc * (BigPoly((1,)) - a * q_power(i))
    return acc


def linear_residue_table(n: int, a: int = 2) -> dict:
    """Predicted (constant, linear) parts modulo (q-1)^2 of five q-analogues.

    Keys: "q^n", "[n]_q", "[n]!_q", "qbinom(n,i)" (a list over i) and "(a;q)_n".
    Linear parts can be half-integers for the binomial entry, hence Fraction.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    fact = factorial(n)
    return {
        "q^n": (1, n),
        "[n]_q": (n, comb(n, 2)),
        "[n]!_q": (fact, Fraction(fact, 2) * comb(n, 2)),
        "qbinom(n,i)": [(comb(n, i), Fraction(comb(n, i) * i * (n - i), 2)) for i in range(n + 1)],
        "(a;q)_n": ((1 - a) ** n, -comb(n, 2) * (1 - a) ** (n - 1) * a),
    }


def linear_residue_actual(n: int, a: int = 2) -> dict:
    """The same five entries read off the exact polynomials truncated modulo x^2."""
    def pair(p: BigPoly):
        c = p.to_x().coeffs + (0, 0)
        return (c[0], c[1])

    return {
        "q^n": pair(q_power(n)),
        "[n]_q": pair(q_int(n)),
        "[n]!_q": pair(q_factorial(n)),
        "qbinom(n,i)": [pair(q_binomial(n, i)) for i in range(n + 1)],
        "(a;q)_n": pair(pochhammer_a(a, n)),
    }
