"""Brute-force checks that share no code with the cone and zeta machinery.

Series come from enumerating residues mod p^(l+1).  Lattice questions are
answered by scanning a box of integer points.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import List, Sequence

from . import kernels
from .polynomial import IntPolynomial

SERIES_BUDGET = 10 ** 8


class OracleError(ValueError):
    """Raised when a brute-force run is out of budget or ill-posed."""


# --- series ----------------------------------------------------------------------------


def padic_order_counts(f: IntPolynomial, p: int, l_max: int) -> List[int]:
    """``#{x in (pZ/p^(l+1))^n : ord_p f(x) = l}`` for ``l = 0..l_max``."""
    if p ** (f.n * l_max) > SERIES_BUDGET:
        raise OracleError("p^(n l) = %d exceeds the enumeration budget" % p ** (f.n * l_max))
    c, e = kernels.poly_args(f)
    hist = kernels.padic_order_histogram(c, e, f.n, p, l_max)
    # the histogram is taken modulo p^(l_max+1); a class mod p^(l+1) has p^(n(l_max-l)) lifts
    return [hist[l] // p ** (f.n * (l_max - l)) for l in range(l_max + 1)]


def series_coefficients_padic(f: IntPolynomial, p: int, l_max: int) -> List[Fraction]:
    """Coefficients of ``t^0 .. t^l_max`` of the local zeta function, by counting
    residues: the coefficient of ``t^l`` is ``p^(-n(l+1))`` times the number
    of classes ``x mod p^(l+1)`` in ``(pZ_p)^n`` with ``ord_p f(x) = l``."""
    counts = padic_order_counts(f, p, l_max)
    return [Fraction(c, p ** (f.n * (l + 1))) for l, c in enumerate(counts)]


def series_coefficients_char(f: IntPolynomial, p: int, d: int, dlog: Sequence[int], l_max: int):
    """Twisted series: for each ``l``, the histogram over ``k mod d`` of the
    logarithms of the angular components ``f(x)/p^l mod p`` of the classes with
    ``ord_p f(x) = l``, scaled by ``p^(-n(l+1))``.

    Returned as a list of ``(scale, histogram)``; the coefficient is
    ``scale * sum_k histogram[k] zeta_d^k``.
    """
    n = f.n
    if p ** (n * l_max) > SERIES_BUDGET // 10:
        raise OracleError("twisted enumeration out of budget")
    modulus = p ** (l_max + 1)
    terms = list(f.terms.items())
    out = []
    hists = [[0] * d for _ in range(l_max + 1)]
    for y in product(range(p ** l_max), repeat=n):
        x = [p * c for c in y]
        v = 0
        for exps, c in terms:
            t = c
            for xi, ei in zip(x, exps):
                if ei:
                    t = t * pow(xi, ei, modulus) % modulus
            v += t
        v %= modulus
        if v == 0:
            continue
        l = 0
        while v % p == 0:
            v //= p
            l += 1
        if l <= l_max:
            hists[l][dlog[v % p] % d] += 1
    for l in range(l_max + 1):
        lifts = p ** (n * (l_max - l))
        out.append((Fraction(1, p ** (n * (l + 1))), [h // lifts for h in hists[l]]))
    return out


# --- small exact linear algebra, kept separate from the main modules -------------------


def _det(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(minor)
    return total


def _adjugate(m):
    n = len(m)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return adj


class _Coordinates:
    """Exact coefficients of points with respect to independent generators."""

    def __init__(self, gens):
        self.gens = [list(g) for g in gens]
        r, n = len(gens), len(gens[0])
        for cols in combinations(range(n), r):
            sub = [[g[c] for c in cols] for g in self.gens]
            d = _det(sub)
            if d:
                self.cols, self.det = cols, d
                # c * sub = x_cols  =>  c = x_cols * adj(sub) / det
                self.adj = _adjugate(sub)
                return
        raise OracleError("generators are linearly dependent")

    def numerators(self, x):
        """Integers ``a`` with coefficients ``a / det``, or None off the span."""
        xc = [x[c] for c in self.cols]
        r = len(self.gens)
        a = [sum(xc[i] * self.adj[i][j] for i in range(r)) for j in range(r)]
        for k in range(len(x)):
            if sum(a[j] * self.gens[j][k] for j in range(r)) != x[k] * self.det:
                return None
        return a


def brute_parallelepiped(generators, convention: str = "low") -> set:
    """Lattice points ``sum h_j g_j`` with ``h_j`` in [0,1) (``"low"``) or (0,1] (``"high"``)."""
    gens = [tuple(int(v) for v in g) for g in generators]
    if any(abs(v) > 64 for g in gens for v in g):
        raise OracleError("coordinates above 64")
    conv = getattr(convention, "value", convention)
    coords = _Coordinates(gens)
    n = len(gens[0])
    lo = [sum(min(0, g[k]) for g in gens) for k in range(n)]
    hi = [sum(max(0, g[k]) for g in gens) for k in range(n)]
    D = coords.det
    found = set()
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        a = coords.numerators(x)
        if a is None:
            continue
        # coefficient a/D: compare with 0 and 1 via sign of D
        if D < 0:
            a = [-v for v in a]
        AD = abs(D)
        if conv == "low":
            ok = all(0 <= v < AD for v in a)
        else:
            ok = all(0 < v <= AD for v in a)
        if ok:
            found.add(tuple(x))
    return found


# --- cone partitions ----------------------------------------------------------------------------


def _in_open_simplicial(coords: _Coordinates, x) -> bool:
    a = coords.numerators(x)
    if a is None:
        return False
    sign = 1 if coords.det > 0 else -1
    return all(sign * v > 0 for v in a)


def _relint_test(gens):
    """Membership test for the relative interior of the cone spanned by ``gens``."""
    from sympy import Matrix

    gens = [list(g) for g in gens]
    n = len(gens[0])
    M = Matrix(gens)
    r = M.rank()
    if r == 1:
        g = gens[0]

        def on_ray(x) -> bool:
            # positive multiple of the single ray direction
            if any(a * g[j] != b * g[i] for i, a in enumerate(x) for j, b in enumerate(x)):
                return False
            return sum(a * b for a, b in zip(g, x)) > 0

        return on_ray

    comp = _integral_nullspace(M)
    normals = []
    for sub in combinations(range(len(gens)), r - 1):
        rows = [gens[i] for i in sub] + comp
        if Matrix(rows).rank() != n - 1:
            continue
        w = [(-1) ** k * _det([[row[c] for c in range(n) if c != k] for row in rows]) for k in range(n)]
        vals = [sum(a * b for a, b in zip(w, g)) for g in gens]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            if all(v <= 0 for v in vals):
                w = [-v for v in w]
            if any(sum(a * b for a, b in zip(w, g)) for g in gens):
                normals.append(w)

    def test(x) -> bool:
        if any(sum(a * b for a, b in zip(c, x)) for c in comp):
            return False
        return all(sum(a * b for a, b in zip(w, x)) > 0 for w in normals)

    return test


def _integral_nullspace(M):
    from sympy import lcm

    out = []
    for v in M.nullspace():
        den = lcm([x.q for x in v])
        out.append([int(x * den) for x in v])
    return out


def brute_cone_partition_check(pieces, box_radius: int, parent_generators=None) -> bool:
    """Every integer point of ``[-R, R]^n`` in the relatively open parent cone lies
    in exactly one open piece, and no point outside the parent lies in a piece.

    ``pieces`` are generator lists (or objects with ``.generators``); the parent
    defaults to the cone spanned by all their generators.
    """
    gen_lists = [list(getattr(pc, "generators", pc)) for pc in pieces]
    if not gen_lists:
        return True
    if parent_generators is None:
        seen = []
        for gl in gen_lists:
            for g in gl:
                if tuple(g) not in seen:
                    seen.append(tuple(g))
        parent_generators = seen
    inside = _relint_test(parent_generators)
    coords = [_Coordinates(gl) for gl in gen_lists]
    n = len(gen_lists[0][0])
    R = box_radius
    for x in product(range(-R, R + 1), repeat=n):
        hits = sum(1 for c in coords if _in_open_simplicial(c, x))
        if inside(x):
            if hits != 1:
                return False
        elif hits:
            return False
    return True


# --- random inputs for property runs -----------------------------------------------------


def random_b1_polynomial(rng, p: int, max_exp: int = 4, extra_terms: int = 2) -> IntPolynomial:
    """A random polynomial in three variables whose support contains a B1
    configuration ``u^a, u^c v, w^b`` for a random ordering ``(u, v, w)`` of the
    variables, plus a few random monomials; coefficients lie in ``1..p-1``."""
    u, v, w = rng.sample(range(3), 3)
    terms = {}

    def mono(**e):
        exps = [0, 0, 0]
        for var, k in e.items():
            exps[{"u": u, "v": v, "w": w}[var]] = k
        return tuple(exps)

    a = rng.randint(2, max_exp)
    terms[mono(u=a)] = 1
    terms[mono(u=rng.randint(0, a - 1), v=1)] = 1
    terms[mono(w=rng.randint(2, max_exp))] = 1
    for _ in range(rng.randint(0, extra_terms)):
        e = tuple(rng.randint(0, max_exp) for _ in range(3))
        if any(e) and sum(e) <= max_exp + 1:
            terms[e] = 1
    return IntPolynomial(3, {e: rng.randint(1, p - 1) for e in terms})
