"""Dense polynomials as coefficient lists (index = degree), any exact number type."""

from math import comb


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def scale(a, k):
    return trim([k * x for x in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def shift(a, k):
    """Multiply by t**k (k >= 0)."""
    return trim([0] * k + list(a)) if a else []


def t_minus_1_pow(k):
    """Coefficients of (t - 1)**k."""
    return [comb(k, j) * (-1) ** (k - j) for j in range(k + 1)]


def evaluate(a, t):
    acc = 0
    for x in reversed(a):
        acc = acc * t + x
    return acc


def first_difference(a, b):
    """Lowest degree where a and b differ, or None."""
    for i in range(max(len(a), len(b))):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        if x != y:
            return i
    return None
