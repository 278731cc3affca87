"""Residues of q-rook and q-hit numbers modulo powers of x = q - 1.

A function f on prime powers is polynomial modulo x^k if some integers
c_0..c_{k-1} satisfy f(q) == sum c_i (q-1)^i  (mod (q-1)^k) for every q.
``fit_residue`` recovers the c_i from samples by peeling one x-adic digit at
a time: the level-i digit is pinned down modulo each sample's x, the
congruences are merged by the Chinese remainder theorem, and the balanced
representative modulo their lcm is taken.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Callable, Sequence

from .board import Board
from .errors import FieldError, IntegrityError, ResidueFitError
from .gf import factor_prime_power
from .rookhit import PatternGraph, classify_pattern, gen_hit, gen_rook, hit_numbers, rook_numbers

Z, S, WR, WC = (PatternGraph.Z, PatternGraph.SHOELACE, PatternGraph.WEDGE_ROW,
                PatternGraph.WEDGE_COL)

DEFAULT_SAMPLES = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25)
MAX_SPLIT_MODULUS = 12


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except FieldError:
        return False
    return True


def prime_powers(lo: int, hi: int) -> tuple:
    return tuple(q for q in range(max(lo, 2), hi + 1) if is_prime_power(q))


def _crt(a1: int, n1: int, a2: int, n2: int):
    """Solve x = a1 (n1), x = a2 (n2); return (x, lcm) or None if inconsistent."""
    g = gcd(n1, n2)
    if (a2 - a1) % g:
        return None
    l = n1 // g * n2
    if n1 == 1:
        return a2 % n2, n2
    t = ((a2 - a1) // g * pow(n1 // g, -1, n2 // g)) % (n2 // g)
    return (a1 + n1 * t) % l, l


def _fit_class(pairs, k: int):
    """Digits c_0..c_{k-1} common to every (q, value) pair.

    Returns (coeffs, resolution) or (None, failing level).
    """
    rems = [(q - 1, v) for q, v in pairs]
    coeffs = []
    L = 1
    for level in range(k):
        x, L = 0, 1
        for mod, r in rems:
            got = _crt(x, L, r % mod, mod)
            if got is None:
                return None, level
            x, L = got
        c = x - L if 2 * x > L else x
        coeffs.append(c)
        rems = [(mod, (r - c) // mod) for mod, r in rems]
    return tuple(coeffs), L


@dataclass(frozen=True)
class ResidueFit:
    """Residue coefficients of a sampled function modulo x^k.

    ``coeffs`` is set when one polynomial fits every sample.  Otherwise
    ``split`` holds {"modulus": M, "classes": {a: coeffs}} for the residue
    classes q = a (mod M).  ``resolution`` is the lcm of the sample x values
    (per class when split); each digit is determined modulo it and reported
    as the representative of least absolute value.  ``single_failure`` is the
    x-adic level at which the single-class fit broke, if it did.
    """

    k: int
    samples: tuple
    coeffs: tuple | None = None
    split: dict | None = None
    resolution: object = None
    verified: bool = True
    single_failure: int | None = None
    attempts: tuple = field(default=(), repr=False)

    @property
    def single(self) -> bool:
        return self.coeffs is not None

    def coeffs_for(self, q: int) -> tuple:
        if self.coeffs is not None:
            return self.coeffs
        return self.split["classes"][q % self.split["modulus"]]

    def to_json(self) -> dict:
        split = None
        if self.split is not None:
            split = {"modulus": self.split["modulus"],
                     "classes": {str(a): [str(c) for c in cs]
                                 for a, cs in sorted(self.split["classes"].items())}}
        return {"k": self.k,
                "coeffs": None if self.coeffs is None else [str(c) for c in self.coeffs],
                "split": split,
                "samples": [[q, str(v)] for q, v in self.samples]}


def _sample(sampler: Callable[[int], int], samples: Sequence[int], threads: int | None):
    if threads and threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            values = list(pool.map(sampler, samples))
    else:
        values = [sampler(q) for q in samples]
    return tuple(zip(samples, (int(v) for v in values)))


def fit_residue(sampler: Callable[[int], int], k: int, samples: Sequence[int] = DEFAULT_SAMPLES,
                *, allow_split: bool = True, max_modulus: int = MAX_SPLIT_MODULUS,
                threads: int | None = None, values: dict | None = None) -> ResidueFit:
    """Fit c_0..c_{k-1} with f(q) == sum c_i (q-1)^i mod (q-1)^k on the samples.

    ``values`` may supply precomputed f(q); otherwise ``sampler`` is called.
    Raises ResidueFitError if no single fit exists and (when allowed) no
    split by q mod M, M <= max_modulus, fits every class.
    """
    samples = tuple(samples)
    if len(set(samples)) != len(samples):
        raise ValueError("sample points must be distinct")
    bad = [q for q in samples if not is_prime_power(q)]
    if bad:
        raise ValueError(f"sample points {bad} are not prime powers")
    if k < 1:
        raise ValueError("k must be positive")
    if len(samples) < 2 * k:
        raise ValueError(f"need at least {2 * k} samples for k = {k}, got {len(samples)}")
    if values is None:
        pairs = _sample(sampler, samples, threads)
    else:
        pairs = tuple((q, int(values[q])) for q in samples)

    coeffs, info = _fit_class(pairs, k)
    if coeffs is not None:
        return ResidueFit(k, pairs, coeffs=coeffs, resolution=info)
    if not allow_split:
        raise ResidueFitError(f"no single residue polynomial modulo x^{k} fits the samples "
                              f"(inconsistent at x^{info})")
    attempts = []
    for M in range(2, max_modulus + 1):
        classes = {}
        for q, v in pairs:
            classes.setdefault(q % M, []).append((q, v))
        if any(sum(1 for q, _ in cls if q > 2) < 2 for cls in classes.values()):
            attempts.append((M, "too few samples per class"))
            continue
        fits = {a: _fit_class(cls, k) for a, cls in classes.items()}
        if all(c is not None for c, _ in fits.values()):
            return ResidueFit(k, pairs, split={"modulus": M, "classes": {a: c for a, (c, _) in fits.items()}},
                              resolution={a: r for a, (_, r) in fits.items()},
                              single_failure=info, attempts=tuple(attempts))
        attempts.append((M, "inconsistent class"))
    raise ResidueFitError(f"no residue-class split with modulus <= {max_modulus} fits modulo x^{k}")


def rook_residue_formula(board: Board, d: int) -> tuple:
    """(c0, c1) with M_d(B, x+1) == c1 x + c0 (mod x^2)."""
    r = rook_numbers(board)
    c0 = r[d] if 0 <= d < len(r) else 0
    c1 = (gen_rook(board, Z, d - 2) - gen_rook(board, S, d - 2)
          + gen_rook(board, WR, d - 1) + gen_rook(board, WC, d - 1))
    if c1 < 0:
        raise IntegrityError(f"negative linear q-rook coefficient {c1}")
    return c0, c1


def _h(vec, i):
    return vec[i] if 0 <= i < len(vec) else 0


def hit_residue_formula(board: Board, d: int, form: str = "corrected") -> tuple:
    """(h_d(B), C_d(B)) with H_d(B, x+1) == C_d(B) x + h_d(B) (mod x^2).

    For m < n the WedgeCol contribution is the t^d coefficient of
    (t-1)/(n-m) sum_i [(n-1-i) h_{WC,i} + (i+1) h_{WC,i+1}] t^i.  The default
    "corrected" form uses it as is.  ``form="printed"`` uses
    (2d-n-1)/(n-m) and (d-1)/(n-m) for the h_{WC,d} and h_{WC,d+1}
    weights instead; that variant disagrees with the q-hit numbers whenever
    those terms are nonzero.  Square boards are unaffected.
    """
    if form not in ("corrected", "printed"):
        raise ValueError(f"unknown form {form!r}")
    b, _ = board.oriented()
    m, n = b.m, b.n
    h = hit_numbers(b)

    def g(F, i):
        return gen_hit(b, F, i)

    common = (g(Z, d - 2) - g(S, d - 2) - 2 * g(Z, d - 1) + 2 * g(S, d - 1)
              + g(Z, d) - g(S, d))
    tail = _h(h, d + 1) * (2 * d + 2) * (n - 1) + _h(h, d + 2) * (d + 2) * (d + 1)
    if m < n:
        w = n - m
        if form == "corrected":
            wc = (n - d) * g(WC, d - 1) + (2 * d - n + 1) * g(WC, d) - (d + 1) * g(WC, d + 1)
        else:
            wc = (n - d) * g(WC, d - 1) + (2 * d - n - 1) * g(WC, d) + (d - 1) * g(WC, d + 1)
        C = (common + (w + 1) * g(WR, d - 1) - (w + 1) * g(WR, d) + Fraction(wc, w)
             + Fraction(_h(h, d) * (m - d) * (m + 2 * n + d - 3) + tail, 4))
    else:
        C = (common + g(WR, d - 1) + g(WC, d - 1) - g(WR, d) - g(WC, d)
             + Fraction(_h(h, d) * (n - d) * (3 * n + d - 3) + tail, 4))
    C = Fraction(C)
    if C.denominator != 1:
        raise IntegrityError(f"C_{d} = {C} is not an integer")
    return _h(h, d), C.numerator


def derangement_C(n: int, d: int, form: str = "corrected") -> int:
    """Closed form for C_{n-d} of the complement of the identity board in [n] x [n].

    Both forms sum n!/(k! d!) (-1)^k (C(n,2) - C(d,2) + n(d-1) + C(n-d-k,2)/2 + s dk/2)
    over 0 <= k <= n-d.  ``form="printed"`` takes s = +1.  The default
    "corrected" form takes s = -1, which keeps the factor q^(-kd) of the
    q-hit expansion; only this sign matches the q-hit numbers.
    """
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    sign = {"corrected": -1, "printed": 1}.get(form)
    if sign is None:
        raise ValueError(f"unknown form {form!r}")
    total = Fraction(0)
    for k in range(n - d + 1):
        inner = (comb(n, 2) - comb(d, 2) + n * (d - 1)
                 + Fraction(comb(n - d - k, 2), 2) + sign * Fraction(d * k, 2))
        total += Fraction(factorial(n), factorial(k) * factorial(d)) * (-1) ** k * inner
    if total.denominator != 1:
        raise IntegrityError(f"derangement C value {total} is not an integer")
    return total.numerator


# Square chains: a K_{2,2} on rows/cols {0,1} plus disjoint edges (2,2), (3,3).
_SQUARE = ((0, 0), (0, 1), (1, 0), (1, 1))
_CHAIN = ((2, 2), (3, 3))
_N = 4
LOCAL_KEYS = ("Z", "S", "WR", "WC", "e0", "e1", "e2")


@dataclass(frozen=True)
class SquareChainConfig:
    """Local counts for one intersection U of the square with the board.

    ``counts`` maps Z, S, WR, WC to the number of omega inside the chain whose
    pattern part lies in B (at the chain's own offset), and e0, e1, e2 to
    the number of perfect matchings inside the chain meeting U in 0, 1, 2
    cells.
    """

    U: frozenset
    counts: dict
    ineq1: int
    ineq2_times2: int
    offset_invariant: bool

    @property
    def ok(self) -> bool:
        return self.ineq1 >= 0 and self.ineq2_times2 >= 0 and self.offset_invariant


def _local_counts(U: frozenset, offset: int) -> dict:
    """C_{t,F,j} for the miniature chain with ``offset`` chain edges in B."""
    B = set(U) | set(_CHAIN[:offset])
    t = _SQUARE + _CHAIN
    counts = {}
    for sel in range(1 << len(t)):
        omega = frozenset(t[j] for j in range(len(t)) if sel >> j & 1)
        cls = classify_pattern(Board(_N, _N, omega))
        if cls is None:
            continue
        F, e = cls
        if e != (_N if F is PatternGraph.EMPTY else _N - 2):
            continue
        inner = classify_pattern(Board(_N, _N, omega & B))
        if inner is None or inner[0] is not F:
            continue
        key = (F, inner[1])
        counts[key] = counts.get(key, 0) + 1
    return counts


def _config(U: frozenset) -> SquareChainConfig:
    tables = [_local_counts(U, o) for o in range(len(_CHAIN) + 1)]
    base = tables[0]
    invariant = all({(F, j + o): v for (F, j), v in base.items()} == tab
                    for o, tab in enumerate(tables))
    E = PatternGraph.EMPTY
    named = {"Z": base.get((Z, 0), 0), "S": base.get((S, 0), 0),
             "WR": base.get((WR, 0), 0), "WC": base.get((WC, 0), 0),
             "e0": base.get((E, 0), 0), "e1": base.get((E, 1), 0), "e2": base.get((E, 2), 0)}
    ineq1 = named["WR"] + named["WC"] - 2 * named["Z"] + 2 * named["S"] + named["e2"]
    ineq2 = 2 * (named["Z"] - named["S"] - named["WR"] - named["WC"]) + named["e1"] + named["e2"]
    return SquareChainConfig(U, named, ineq1, ineq2, invariant)


def square_chain_check() -> list:
    """Both local inequalities for all 16 intersections of the square with B."""
    out = []
    for sel in range(16):
        U = frozenset(_SQUARE[j] for j in range(4) if sel >> j & 1)
        out.append(_config(U))
    return out


@dataclass(frozen=True)
class GlobalInequalityReport:
    ok: bool
    ineq1_times4: int
    ineq2_times4: int
    C: int


def global_inequality_check(board: Board, i: int) -> GlobalInequalityReport:
    """The two square-chain inequalities (scaled by 4) and C_i >= 0 on a square board."""
    if board.m != board.n:
        raise ValueError("needs a square board")
    n = board.n
    h = hit_numbers(board)

    def g(F, j):
        return gen_hit(board, F, j)

    one = (4 * (g(WR, i - 1) + g(WC, i - 1) - 2 * g(Z, i - 1) + 2 * g(S, i - 1))
           + (2 * i + 2) * i * _h(h, i + 1))
    two = (4 * (g(Z, i) - g(S, i) - g(WR, i) - g(WC, i))
           + (2 * i + 2) * (n - i - 1) * _h(h, i + 1) + (i + 1) * (i + 2) * _h(h, i + 2))
    _, C = hit_residue_formula(board, i)
    return GlobalInequalityReport(one >= 0 and two >= 0 and C >= 0, one, two, C)


FANO_M7_POLY = (24, 264, 1236, 3260, 5386, 5845, 4236, 2043, 650, 135, 17, 1)


def fano_z2(q: int) -> int:
    """Parity correction in the Fano closed form: 1 for even q, 0 for odd q.

    This is the assignment matched by exhaustive matrix counts at q = 2..8.
    """
    return 1 if q % 2 == 0 else 0


def fano_m7_formula(q: int, z2: int | None = None) -> int:
    """M_7 of the Fano board as (x+1)^3 (P(x) - Z_2 x^6), x = q - 1."""
    x = q - 1
    if z2 is None:
        z2 = fano_z2(q)
    return (x + 1) ** 3 * (sum(c * x ** i for i, c in enumerate(FANO_M7_POLY)) - z2 * x ** 6)


def fano_m7_x_coeffs(z2: int) -> tuple:
    """Coefficients in x of (x+1)^3 (P(x) - z2 x^6)."""
    p = list(FANO_M7_POLY)
    p[6] -= z2
    cube = (1, 3, 3, 1)
    out = [0] * (len(p) + 3)
    for i, a in enumerate(p):
        for j, b in enumerate(cube):
            out[i + j] += a * b
    return tuple(out)
