"""Dense univariate polynomials over an exact coefficient field.

Coefficients can be any objects that support ``+ - * /`` and compare equal
to ``0`` when zero: :class:`fractions.Fraction`, sympy field elements, or
:class:`~igusazeta.finite_field.CyclotomicNumber`.  Coefficient lists are
stored lowest degree first, without trailing zeros.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence


class UPoly:
    """Polynomial in one variable with coefficients in a field.

    ``zero`` and ``one`` fix the coefficient field; they are carried along
    so that the zero polynomial still knows where it lives.
    """

    __slots__ = ("coeffs", "zero", "one")

    def __init__(self, coeffs: Iterable[Any], zero: Any, one: Any):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.zero = zero
        self.one = one

    # construction helpers
    def _new(self, coeffs):
        return UPoly(coeffs, self.zero, self.one)

    def const(self, c) -> "UPoly":
        return self._new([c])

    def monomial(self, c, k: int) -> "UPoly":
        return self._new([self.zero] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "UPoly(%r)" % (list(self.coeffs),)

    # ring operations
    def __add__(self, other: "UPoly") -> "UPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._new(out)

    def __neg__(self) -> "UPoly":
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            if other == 0:
                return self._new([])
            return self._new([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new([])
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                out[i + j] = out[i + j] + x * y
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UPoly":
        result = self.const(self.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "UPoly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return self._new([self.zero] * k + list(self.coeffs))

    def divmod(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = self.one / other.lc()
        bc = other.coeffs
        if len(rem) <= db:
            return self._new([]), self
        quot = [self.zero] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c * inv_lc
            quot[k - db] = q
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - q * bc[j]
        return self._new(quot), self._new(rem[:db])

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def divides(self, other: "UPoly") -> bool:
        """True when ``self`` divides ``other``."""
        return (other % self).is_zero()

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        inv = self.one / self.lc()
        return self._new([c * inv for c in self.coeffs])

    def gcd(self, other: "UPoly") -> "UPoly":
        """Monic greatest common divisor (Euclid)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, fn, zero=None, one=None) -> "UPoly":
        z = self.zero if zero is None else zero
        o = self.one if one is None else one
        return UPoly([fn(c) for c in self.coeffs], z, o)

    def series(self, den: "UPoly", order: int) -> list:
        """First ``order`` power series coefficients of ``self / den``.

        Requires ``den(0) != 0``.
        """
        d0 = den[0]
        if d0 == 0:
            raise ZeroDivisionError("denominator vanishes at t = 0")
        inv = self.one / d0
        out = []
        for k in range(order):
            acc = self[k]
            for j in range(1, min(k, den.degree) + 1):
                acc = acc - den[j] * out[k - j]
            out.append(acc * inv)
        return out


def from_sparse(terms: dict, zero, one) -> UPoly:
    """Build a polynomial from ``{degree: coefficient}``."""
    if not terms:
        return UPoly([], zero, one)
    cs = [zero] * (max(terms) + 1)
    for k, c in terms.items():
        cs[k] = cs[k] + c
    return UPoly(cs, zero, one)


def product(polys: Sequence[UPoly], zero, one) -> UPoly:
    acc = UPoly([one], zero, one)
    for f in polys:
        acc = acc * f
    return acc
