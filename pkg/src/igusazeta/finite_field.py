"""Counting over the torus of F_p, non-degeneracy tests, and sums of a
multiplicative character of F_p^* with values in Q(zeta_d).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import cyclotomic_poly, isprime, primitive_root, symbols, Poly

from . import kernels
from .polynomial import IntPolynomial, face_restriction, partial_derivative


class FieldError(ValueError):
    """Raised for a non-prime modulus or an unusable character."""


def require_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise FieldError("%r is not a prime" % (p,))
    if p >= 2 ** 31:
        raise FieldError("primes must stay below 2^31")
    return p


# --- Q(zeta_d) ------------------------------------------------------------------

_CYCLO_CACHE: dict = {}


def _cyclotomic(d: int) -> Tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, lowest degree first."""
    if d not in _CYCLO_CACHE:
        x = symbols("x")
        _CYCLO_CACHE[d] = tuple(int(c) for c in reversed(Poly(cyclotomic_poly(d, x), x).all_coeffs()))
    return _CYCLO_CACHE[d]


class CyclotomicNumber:
    """An element of Q(zeta_d), stored as rational coefficients of powers of
    zeta_d reduced modulo the d-th cyclotomic polynomial."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs=()):
        phi = _cyclotomic(d)
        deg = len(phi) - 1
        cs = [Fraction(c) for c in coeffs]
        # reduce modulo the monic cyclotomic polynomial
        for k in range(len(cs) - 1, deg - 1, -1):
            c = cs[k]
            if c:
                for j in range(deg + 1):
                    cs[k - deg + j] -= c * phi[j]
        cs = cs[:deg] + [Fraction(0)] * (deg - len(cs))
        self.d = d
        self.coeffs = tuple(cs)

    @classmethod
    def zeta_power(cls, d: int, k: int) -> "CyclotomicNumber":
        cs = [0] * (k % d + 1)
        cs[k % d] = 1
        return cls(d, cs)

    @classmethod
    def rational(cls, d: int, c) -> "CyclotomicNumber":
        return cls(d, [c])

    def _lift(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.d != self.d:
                raise FieldError("mixing different cyclotomic fields")
            return other
        return CyclotomicNumber(self.d, [other])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        try:
            return self.coeffs == self._lift(other).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash((self.d, self.coeffs))

    def __repr__(self):
        return "CyclotomicNumber(%d, %r)" % (self.d, [str(c) for c in self.coeffs])

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if k == 0 else "%s*z%d^%d" % (c, self.d, k))
        return " + ".join(parts) or "0"

    def __neg__(self):
        return CyclotomicNumber(self.d, [-c for c in self.coeffs])

    def __add__(self, other):
        o = self._lift(other)
        return CyclotomicNumber(self.d, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, CyclotomicNumber):
            c = Fraction(other)
            return CyclotomicNumber(self.d, [a * c for a in self.coeffs])
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        out = [Fraction(0)] * max(len(a) + len(b) - 1, 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return CyclotomicNumber(self.d, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = CyclotomicNumber.rational(self.d, 1), self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def inverse(self) -> "CyclotomicNumber":
        """Inverse via the extended Euclidean algorithm in Q[x]."""
        from ._upoly import UPoly

        zero, one = Fraction(0), Fraction(1)
        a = UPoly(self.coeffs, zero, one)
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        b = UPoly([Fraction(c) for c in _cyclotomic(self.d)], zero, one)
        # invariant: s*a == r (mod b)
        r0, r1 = a, b
        s0, s1 = UPoly([one], zero, one), UPoly([], zero, one)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise ZeroDivisionError("not invertible")
        return CyclotomicNumber(self.d, (s0 * (one / r0.lc())).coeffs)

    def __truediv__(self, other):
        if not isinstance(other, CyclotomicNumber):
            return self * (1 / Fraction(other))
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.d)
        return sum(float(c) * z ** k for k, c in enumerate(self.coeffs))


# --- characters -------------------------------------------------------------------


@dataclass
class CharacterSpec:
    """The character of F_p^* sending the smallest primitive root to zeta_d."""

    p: int
    d: int
    g: int = 0
    dlog: List[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        require_prime(self.p)
        if self.d < 2 or (self.p - 1) % self.d:
            raise FieldError("character order must be > 1 and divide p - 1")
        self.g = int(primitive_root(self.p))
        table = [0] * self.p
        x = 1
        for k in range(self.p - 1):
            table[x] = k
            x = x * self.g % self.p
        self.dlog = table

    def value(self, a: int) -> CyclotomicNumber:
        a %= self.p
        if a == 0:
            return CyclotomicNumber(self.d)
        return CyclotomicNumber.zeta_power(self.d, self.dlog[a])

    def zero(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.d)

    def one(self) -> CyclotomicNumber:
        return CyclotomicNumber.rational(self.d, 1)


def histogram_to_number(hist, d: int) -> CyclotomicNumber:
    # coefficient of zeta^k is the number of values with logarithm k mod d
    return CyclotomicNumber(d, hist)


# --- counting ------------------------------------------------------------------------


def count_torus_solutions(f_tau: IntPolynomial, p: int) -> int:
    """Number of zeros of ``f_tau mod p`` in ``(F_p^*)^n``."""
    require_prime(p)
    c, e = kernels.poly_args(f_tau)
    return kernels.count_zeros_torus(c, e, f_tau.n, p)


def character_sum(f_tau: IntPolynomial, chi: CharacterSpec) -> CyclotomicNumber:
    """Sum of ``chi(f_tau(x))`` over ``x`` in ``(F_p^*)^n``."""
    c, e = kernels.poly_args(f_tau)
    hist = kernels.char_index_histogram(c, e, f_tau.n, chi.p, chi.dlog, chi.d)
    return histogram_to_number(hist, chi.d)


@dataclass(frozen=True)
class NondegeneracyResult:
    ok: bool
    face: Optional[object] = None
    point: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def is_nondegenerate_fp(f: IntPolynomial, p: int, np_=None) -> NondegeneracyResult:
    """Check that on every compact face, ``f_tau`` and its partial derivatives
    have no common zero in ``(F_p^*)^n``."""
    from .newton import NewtonPolyhedron

    require_prime(p)
    np_ = np_ or NewtonPolyhedron(f)
    for face in np_.compact_faces:
        ft = face_restriction(f, face)
        polys = [kernels.poly_args(ft)]
        for i in range(1, f.n + 1):
            d = partial_derivative(ft, i)
            polys.append(kernels.poly_args(d))
        pt = kernels.find_common_zero(polys, f.n, p)
        if pt is not None:
            return NondegeneracyResult(False, face, pt)
    return NondegeneracyResult(True)
