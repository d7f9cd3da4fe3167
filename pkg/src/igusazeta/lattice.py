"""Rational cones: simplicial decompositions, multiplicities and lattice points
of fundamental parallelepipeds, with the explicit description of the points
for three generators in Z^3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from math import floor, gcd
from typing import List, Sequence, Tuple

from ._linalg import bezout, det, gcd_list, maximal_minors, rank, solve_coordinates


class LatticeError(ValueError):
    """Raised for dependent or otherwise invalid generator sets."""


class Convention(Enum):
    """Which boundary of the parallelepiped is kept.

    ``LOW`` keeps coefficients in [0, 1), ``HIGH`` keeps coefficients in (0, 1].
    """

    LOW = "low"
    HIGH = "high"


def _as_vectors(generators) -> List[Tuple[int, ...]]:
    vecs = [tuple(int(x) for x in g) for g in generators]
    if not vecs:
        raise LatticeError("no generators given")
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise LatticeError("generators have different lengths")
    return vecs


def _check_independent(vecs) -> None:
    if rank(vecs) != len(vecs):
        raise LatticeError("generators are linearly dependent")


def multiplicity(generators) -> int:
    """Gcd of the absolute values of the maximal minors of the generator matrix."""
    vecs = _as_vectors(generators)
    _check_independent(vecs)
    return gcd_list(maximal_minors(vecs))


@dataclass(frozen=True)
class SimplicialCone:
    """Open cone strictly positively spanned by independent primitive generators."""

    generators: Tuple[Tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.generators)

    def multiplicity(self) -> int:
        return multiplicity(self.generators)


def simplicial_decomposition(generators) -> List[SimplicialCone]:
    """Partition the relatively open cone spanned by ``generators`` into open
    simplicial cones, using only the given generators as rays.

    The generators should be the extreme rays of the cone.  A placing
    triangulation is built by inserting the generators in reverse input
    order; every face of the triangulation that does not lie on the
    boundary of the cone is returned as a piece, so lower-dimensional
    separating walls appear as pieces of their own.  Pieces list their
    generators in input order.
    """
    vecs = _as_vectors(generators)
    if any(not any(v) for v in vecs):
        raise LatticeError("zero generator")
    if len(set(vecs)) != len(vecs):
        raise LatticeError("repeated generator")

    order = list(range(len(vecs)))[::-1]
    simplices: List[frozenset] = []
    placed: List[int] = []
    for idx in order:
        v = vecs[idx]
        if not placed:
            simplices = [frozenset([idx])]
            placed.append(idx)
            continue
        current_rank = rank([vecs[i] for i in placed])
        if rank([vecs[i] for i in placed] + [v]) > current_rank:
            simplices = [s | {idx} for s in simplices]
            placed.append(idx)
            continue
        counts = _facet_counts(simplices)
        new = []
        for s in simplices:
            basis = sorted(s)
            coords = solve_coordinates([vecs[i] for i in basis], v)
            for u, c in zip(basis, coords):
                if c < 0:
                    facet = s - {u}
                    if counts[facet] == 1:
                        new.append(facet | {idx})
        if not new:
            raise LatticeError("generator %r is not an extreme ray of the cone" % (v,))
        simplices.extend(new)
        placed.append(idx)

    boundary = [f for f, c in _facet_counts(simplices).items() if c == 1]
    faces = set()
    for s in simplices:
        members = sorted(s)
        for k in range(1, len(members) + 1):
            for sub in combinations(members, k):
                faces.add(frozenset(sub))
    pieces = [f for f in faces if not any(f <= b for b in boundary)]
    pieces.sort(key=lambda f: (-len(f), sorted(f)))
    return [SimplicialCone(tuple(vecs[i] for i in sorted(f))) for f in pieces]


def _facet_counts(simplices) -> dict:
    counts: dict = {}
    for s in simplices:
        for u in s:
            f = s - {u}
            counts[f] = counts.get(f, 0) + 1
    return counts


@dataclass
class ParallelepipedSet:
    """Lattice points of a half-open fundamental parallelepiped."""

    generators: Tuple[Tuple[int, ...], ...]
    convention: Convention
    points: List[Tuple[int, ...]] = field(default_factory=list)
    coords: List[Tuple[Fraction, ...]] = field(default_factory=list)

    @property
    def mu(self) -> int:
        return len(self.points)

    def point_set(self) -> set:
        return set(self.points)


def _reduce_coords(coords, convention: Convention) -> tuple:
    out = []
    for c in coords:
        fr = c - floor(c)
        if convention is Convention.HIGH and fr == 0:
            fr = Fraction(1)
        out.append(fr)
    return tuple(out)


def _combine(gens, coeffs) -> tuple:
    n = len(gens[0])
    pt = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(n)]
    if any(Fraction(x).denominator != 1 for x in pt):
        raise LatticeError("non-integral combination")
    return tuple(int(x) for x in pt)


def enumerate_parallelepiped(generators, convention: Convention = Convention.LOW) -> ParallelepipedSet:
    """All lattice points ``sum h_j g_j`` with every ``h_j`` in the convention's range.

    The quotient of the saturated lattice by the lattice spanned by the
    generators is read off a Smith normal form; each coset gives one point.
    """
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_decomp

    vecs = _as_vectors(generators)
    _check_independent(vecs)
    r = len(vecs)
    snf, _, right = smith_normal_decomp(Matrix(vecs))
    diag = [int(snf[i, i]) for i in range(r)]
    basis = right.inv()
    sat = [tuple(int(basis[i, j]) for j in range(len(vecs[0]))) for i in range(r)]

    result = ParallelepipedSet(tuple(vecs), convention)
    for ys in product(*(range(abs(d)) for d in diag)):
        x = [sum(y * row[j] for y, row in zip(ys, sat)) for j in range(len(vecs[0]))]
        coords = _reduce_coords(solve_coordinates(vecs, x), convention)
        result.points.append(_combine(vecs, coords))
        result.coords.append(coords)
    order = sorted(range(len(result.points)), key=lambda i: result.points[i])
    result.points = [result.points[i] for i in order]
    result.coords = [result.coords[i] for i in order]
    return result


# --- congruences -------------------------------------------------------------


@dataclass(frozen=True)
class Infeasible:
    """Returned by :func:`solve_congruences` when the system has no solution."""

    reason: str


def solve_congruences(system: Sequence[Tuple[int, int, int]]):
    """Solve ``a_i * x == b_i (mod n_i)`` simultaneously.

    Returns ``(x0, N)`` with the solution set ``x0 + N*Z`` (``0 <= x0 < N``),
    or :class:`Infeasible` naming the violated condition.
    """
    x0, modulus = 0, 1
    for a, b, n in system:
        if n < 1:
            raise ValueError("moduli must be positive")
        g = gcd(a, n)
        if (b - 0) % g:
            return Infeasible("gcd(%d, %d) = %d does not divide %d" % (a, n, g, b))
        n2 = n // g
        r = (b // g) * pow(a // g, -1, n2) % n2 if n2 > 1 else 0
        g2 = gcd(modulus, n2)
        if (r - x0) % g2:
            return Infeasible(
                "x = %d mod %d conflicts with x = %d mod %d (differ mod %d)" % (x0, modulus, r, n2, g2)
            )
        lcm = modulus // g2 * n2
        # step x0 by multiples of modulus until it also fits the new congruence
        m1 = modulus // g2
        k = ((r - x0) // g2) * pow(m1, -1, n2 // g2) % (n2 // g2) if n2 // g2 > 1 else 0
        x0 = (x0 + k * modulus) % lcm
        modulus = lcm
    return x0, modulus


# --- parallelepipeds of two and three vectors -----------------------------------


def xi_pair(w_a, w_b) -> Tuple[int, int]:
    """Return ``(xi, mu)``: ``mu`` is the multiplicity of the pair and ``xi`` the
    unique element of ``{0, ..., mu-1}`` with ``(w_a + xi*w_b)/mu`` integral.

    Found by direct search.
    """
    vecs = _as_vectors([w_a, w_b])
    mu = multiplicity(vecs)
    for xi in range(mu):
        if all((a + xi * b) % mu == 0 for a, b in zip(*vecs)):
            return xi, mu
    raise LatticeError("no xi found; generators are not primitive?")


def xi_pair_congruence(w_a, w_b) -> Tuple[int, int]:
    """Same as :func:`xi_pair`, via the congruences ``(w_b)_c x == -(w_a)_c (mod mu)``."""
    vecs = _as_vectors([w_a, w_b])
    mu = multiplicity(vecs)
    sol = solve_congruences([(b, -a, mu) for a, b in zip(*vecs)])
    if isinstance(sol, Infeasible):
        raise LatticeError(sol.reason)
    x0, modulus = sol
    if modulus != mu:
        raise LatticeError("congruence system does not determine xi modulo mu")
    return x0, mu


def _cofactor_minors(w1, w2, w3):
    rows = [tuple(w1), tuple(w2), tuple(w3)]
    d = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            sub = [[rows[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
            d[i][j] = det(sub)
    return det(rows), d


@dataclass(frozen=True)
class MuProfile:
    mu: int
    mu1: int
    mu2: int
    mu3: int
    gamma: int
    lam: int
    phi1: int
    phi2: int
    phi3: int


def _triple(w1, w2, w3):
    vecs = _as_vectors([w1, w2, w3])
    if len(vecs[0]) != 3:
        raise LatticeError("three vectors in Z^3 expected")
    _check_independent(vecs)
    return vecs


def mu_profile(w1, w2, w3) -> MuProfile:
    """Multiplicities of the parallelepiped of ``w1, w2, w3`` and of its three faces."""
    w1, w2, w3 = _triple(w1, w2, w3)
    d, minors = _cofactor_minors(w1, w2, w3)
    mu = abs(d)
    m1, m2, m3 = (gcd_list(minors[i]) for i in range(3))
    g = gcd(m1, m2)
    return MuProfile(
        mu=mu, mu1=m1, mu2=m2, mu3=m3, gamma=g, lam=m1 * m2 // g,
        phi1=mu // (m2 * m3), phi2=mu // (m1 * m3), phi3=mu // (m1 * m2),
    )


@dataclass(frozen=True)
class H3Invariants:
    xi1: int
    xi2: int
    xi3: int
    eta: int
    eta_prime: int
    l0: int
    phi3_prime: int
    mu3_prime: int


def h3_invariants(w1, w2, w3) -> H3Invariants:
    """The numbers that parametrize the lattice points of the parallelepiped.

    ``xi1, xi2, xi3`` belong to the pairs ``(w2, w3)``, ``(w1, w3)``,
    ``(w1, w2)``; ``eta, eta_prime, l0`` fix the point
    ``w1/(mu2 phi3) + eta w2/(mu1 phi3) + (l0 phi3' + eta') w3/(lam phi3')``,
    obtained from a Bezout combination of the cofactor rows.
    """
    w1, w2, w3 = _triple(w1, w2, w3)
    prof = mu_profile(w1, w2, w3)
    _, minors = _cofactor_minors(w1, w2, w3)
    xi1, _ = xi_pair(w2, w3)
    xi2, _ = xi_pair(w1, w3)
    xi3, _ = xi_pair(w1, w2)
    mu3p = prof.mu3 // prof.gamma
    phi3p = prof.phi3 // mu3p
    mu2p = prof.mu2 // prof.gamma
    dp = [[minors[i][j] // [prof.mu1, prof.mu2, prof.mu3][i] for j in range(3)] for i in range(3)]
    lam = bezout(dp[0])
    s2 = sum(l * x for l, x in zip(lam, dp[1]))
    s3 = sum(l * x for l, x in zip(lam, dp[2]))
    eta = (-s2) % prof.phi3
    eta_p = s3 % phi3p
    i0 = ((-s2) // prof.phi3) % prof.mu1
    l0 = (s3 // phi3p - i0 * xi1 * mu2p) % prof.lam
    return H3Invariants(xi1, xi2, xi3, eta, eta_p, l0, phi3p, mu3p)


def eta_by_congruences(w1, w2, w3) -> Tuple[int, int]:
    """``(eta, eta')`` as the solutions of the two cofactor congruence systems."""
    w1, w2, w3 = _triple(w1, w2, w3)
    prof = mu_profile(w1, w2, w3)
    _, minors = _cofactor_minors(w1, w2, w3)
    mus = [prof.mu1, prof.mu2, prof.mu3]
    dp = [[minors[i][j] // mus[i] for j in range(3)] for i in range(3)]
    phi3p = prof.phi3 // (prof.mu3 // prof.gamma)
    s1 = solve_congruences([(dp[0][j], -dp[1][j], prof.phi3) for j in range(3)])
    s2 = solve_congruences([(dp[0][j], dp[2][j], phi3p) for j in range(3)])
    if isinstance(s1, Infeasible) or isinstance(s2, Infeasible):
        raise LatticeError("cofactor congruences are infeasible")
    return s1[0], s2[0]


def representative_point(w1, w2, w3) -> Tuple[Tuple[Fraction, ...], Tuple]:
    """Coefficients and coordinates of the coset representative ``h(0,0,1)``."""
    w1, w2, w3 = _triple(w1, w2, w3)
    prof = mu_profile(w1, w2, w3)
    inv = h3_invariants(w1, w2, w3)
    coeffs = (
        Fraction(1, prof.mu2 * prof.phi3),
        Fraction(inv.eta, prof.mu1 * prof.phi3),
        Fraction(inv.l0 * inv.phi3_prime + inv.eta_prime, prof.lam * inv.phi3_prime),
    )
    coeffs = tuple(c - floor(c) for c in coeffs)
    pt = [sum(c * w[i] for c, w in zip(coeffs, (w1, w2, w3))) for i in range(3)]
    return coeffs, tuple(pt)


def closed_form_H3(w1, w2, w3) -> ParallelepipedSet:
    """The lattice points ``h(i, j, k)`` of the [0,1)-parallelepiped of a
    triple in Z^3, from the explicit parametrization by ``mu1, mu2, phi3``
    and the numbers of :func:`h3_invariants`.
    """
    w1, w2, w3 = _triple(w1, w2, w3)
    prof = mu_profile(w1, w2, w3)
    inv = h3_invariants(w1, w2, w3)
    mu1, mu2, phi3, lam = prof.mu1, prof.mu2, prof.phi3, prof.lam
    phi3p = inv.phi3_prime
    mu1p, mu2p = mu1 // prof.gamma, mu2 // prof.gamma
    result = ParallelepipedSet((w1, w2, w3), Convention.LOW)
    for k in range(phi3):
        ik = ((k * inv.eta) // phi3) % mu1
        for i in range(mu1):
            for j in range(mu2):
                l = ((i - ik) * inv.xi1 * mu2p + j * inv.xi2 * mu1p + k * inv.l0
                     + (k * inv.eta_prime) // phi3p) % lam
                coeffs = (
                    Fraction(j * phi3 + k, mu2 * phi3),
                    Fraction(i * phi3 + (k * inv.eta) % phi3, mu1 * phi3),
                    Fraction(l * phi3p + (k * inv.eta_prime) % phi3p, lam * phi3p),
                )
                result.points.append(_combine((w1, w2, w3), coeffs))
                result.coords.append(coeffs)
    order = sorted(range(len(result.points)), key=lambda i: result.points[i])
    result.points = [result.points[i] for i in order]
    result.coords = [result.coords[i] for i in order]
    return result
