"""Small exact linear algebra over Z and Q used across the package."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

Vector = tuple


def det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def maximal_minors(rows: Sequence[Sequence[int]]) -> list:
    """All r x r minors of an r x n integer matrix (column subsets in lex order)."""
    r = len(rows)
    n = len(rows[0])
    return [det([[row[c] for c in cols] for row in rows]) for cols in combinations(range(n), r)]


def gcd_list(values) -> int:
    return reduce(gcd, (abs(v) for v in values), 0)


def primitive(v: Sequence[int]) -> Vector:
    g = gcd_list(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def normal_vector(dirs: Sequence[Sequence[int]], n: int) -> Vector:
    """Vector orthogonal to ``n - 1`` directions in Z^n (generalized cross product)."""
    out = []
    for i in range(n):
        sub = [[d[c] for c in range(n) if c != i] for d in dirs]
        out.append((-1) ** i * det(sub))
    return tuple(out)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q of a list of rational vectors."""
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for c in range(ncols):
        piv = None
        for i in range(rk, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c] / m[rk][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
        if rk == len(m):
            break
    return rk


def solve_coordinates(gens: Sequence[Sequence[int]], x: Sequence) -> Optional[tuple]:
    """Coefficients ``c`` with ``sum c_j gens_j == x``, or None if x is outside the span.

    ``gens`` must be linearly independent.
    """
    r = len(gens)
    n = len(x)
    # augmented system: columns are generators
    m = [[Fraction(gens[j][i]) for j in range(r)] + [Fraction(x[i])] for i in range(n)]
    row = 0
    pivots = []
    for c in range(r):
        piv = None
        for i in range(row, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("generators are linearly dependent")
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][c]
        m[row] = [a * inv for a in m[row]]
        for i in range(n):
            if i != row and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(row)
        row += 1
    for i in range(row, n):
        if m[i][r] != 0:
            return None
    return tuple(m[i][r] for i in pivots)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def ext_gcd(a: int, b: int):
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout(values: Sequence[int]) -> tuple:
    """Coefficients ``l`` with ``sum l_i * values_i == gcd(values)``."""
    g = 0
    coeffs: list = []
    for v in values:
        g2, x, y = ext_gcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    return tuple(coeffs)
