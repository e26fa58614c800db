"""Small exact linear algebra over Q (matrices are lists of rows)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        out *= p
        for i in range(c + 1, n):
            f = a[i][c] / p
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return out * sign


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Solve the square system ``a x = b``; None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n] for row in m]


def inverse(a: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(a)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve(a, e)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> List[list]:
    return [list(col) for col in zip(*a)]


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector by a positive factor to a coprime integer vector."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints) if any(ints) else 1
    return tuple(x // g for x in ints)


def normal_vector(vectors: Sequence[Sequence[int]], dim: int) -> tuple:
    """Generalised cross product of ``dim - 1`` vectors (zero if dependent)."""
    if dim == 1:
        return (1,)
    out = []
    for i in range(dim):
        minor = [[v[j] for j in range(dim) if j != i] for v in vectors]
        d = det(minor)
        out.append(d if i % 2 == 0 else -d)
    return primitive(out) if any(out) else tuple(0 for _ in out)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))
