"""Coefficient rings and rational functions in ``t = p^(-s)`` whose
denominators are products of the factors ``p^sigma - t^m``.

Every factor ``t^m - c^g`` with ``c = P^(sigma/g)`` (``g = gcd(m, sigma)``)
splits as a product over ``d | g`` of the monic *atoms*

    F_d(t) = c^phi(d) * Phi_d(t^(m/g) / c),

keyed ``(m/g, sigma/g, d)``.  Atoms with different keys have disjoint root
sets, so a denominator is kept as a map ``key -> exponent`` and cancellation
is exact division by atoms.  An atom that shares only part of its roots with
the numerator is split by a gcd; the pieces keep the atom key plus their own
coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import QQ, divisors
from sympy.polys.fields import field
from sympy.polys.rings import ring

from ._upoly import UPoly


# --- coefficient rings ----------------------------------------------------------------


class ConcreteRing:
    """Rational numbers, with ``P`` the prime ``p``."""

    kind = "concrete"

    def __init__(self, p: int):
        self.p = p
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.P = Fraction(p)
        self._atoms: dict = {}

    def coerce(self, x):
        return Fraction(x)

    def symbols_in(self, c) -> set:
        return set()

    def fmt(self, c) -> str:
        return str(c)

    def to_json(self, c):
        return str(c)

    def __repr__(self):
        return "ConcreteRing(p=%d)" % self.p


class SymbolicRing:
    """Rational functions over Q in a main symbol (``P`` or ``L``) and extra symbols."""

    kind = "symbolic"

    def __init__(self, main: str = "P", extra: Iterable[str] = ()):
        names = [main] + list(extra)
        self.names = names
        K, *gens = field(",".join(names), QQ)
        self.K = K
        self.gens = dict(zip(names, gens))
        self.zero = K.zero
        self.one = K.one
        self.P = self.gens[main]
        self.main = main
        self._atoms: dict = {}
        self._tring = None

    def coerce(self, x):
        if isinstance(x, Fraction):
            return self.K(x.numerator) / self.K(x.denominator)
        if isinstance(x, int):
            return self.K(x)
        return x

    def symbol(self, name: str):
        return self.gens[name]

    def symbols_in(self, c) -> set:
        used = set()
        for name, g in self.gens.items():
            if c.numer.degree(g.numer) > 0 or c.denom.degree(g.numer) > 0:
                used.add(name)
        return used

    def fmt(self, c) -> str:
        return str(c.as_expr())

    def to_json(self, c):
        return str(c.as_expr())

    def substitute(self, c, values: Dict[str, int]) -> Fraction:
        expr = c.as_expr()
        syms = {s.name: s for s in expr.free_symbols}
        missing = set(syms) - set(values)
        if missing:
            raise KeyError("no value for symbol(s) %s" % ", ".join(sorted(missing)))
        val = expr.subs({syms[k]: v for k, v in values.items() if k in syms})
        return Fraction(int(val.p), int(val.q))

    def poly_gcd(self, a: UPoly, b: UPoly) -> UPoly:
        """Monic gcd of two polynomials over this field.

        Euclid over the fraction field blows up coefficient sizes, so both
        sides are cleared of denominators and handed to the multivariate gcd
        over Q[symbols, t].
        """
        if self._tring is None:
            self._tring = ring(",".join(self.names + ["_t"]), QQ)[0]
        R = self._tring
        T = R.gens[-1]

        def lift(u):
            den = self.K.ring.one
            for c in u.coeffs:
                den = den.lcm(c.denom)
            acc = R.zero
            for k, c in enumerate(u.coeffs):
                if c:
                    acc += (c.numer * den.exquo(c.denom)).set_ring(R) * T ** k
            return acc

        g = lift(a).gcd(lift(b))
        coeffs = [self.zero] * (g.degree(T) + 1)
        for monom, c in g.terms():
            coeffs[monom[-1]] += self.K(self.K.ring({monom[:-1]: c}))
        return UPoly(coeffs, self.zero, self.one).monic()

    def __repr__(self):
        return "SymbolicRing(%s)" % ",".join(self.names)


class CyclotomicRing:
    """Q(zeta_d) for characters of order ``d`` modulo ``p``."""

    kind = "cyclotomic"

    def __init__(self, p: int, d: int):
        from .finite_field import CyclotomicNumber

        self.p = p
        self.d = d
        self.zero = CyclotomicNumber(d)
        self.one = CyclotomicNumber.rational(d, 1)
        self.P = CyclotomicNumber.rational(d, p)
        self._atoms: dict = {}

    def coerce(self, x):
        from .finite_field import CyclotomicNumber

        if isinstance(x, CyclotomicNumber):
            return x
        return CyclotomicNumber.rational(self.d, x)

    def symbols_in(self, c) -> set:
        return set()

    def fmt(self, c) -> str:
        return str(c)

    def to_json(self, c):
        return [str(x) for x in c.coeffs]

    def __repr__(self):
        return "CyclotomicRing(p=%d, d=%d)" % (self.p, self.d)


def ring_power(ring, x, k: int):
    if k >= 0:
        return x ** k if k else ring.one
    return ring.one / (x ** (-k))


# --- atoms ------------------------------------------------------------------------------


def _phi_coeffs(d: int) -> Tuple[int, ...]:
    from .finite_field import _cyclotomic

    return _cyclotomic(d)


def atom_poly(ring, key) -> UPoly:
    """The monic polynomial of an atom key (full atoms only)."""
    if key in ring._atoms:
        return ring._atoms[key]
    if len(key) == 4:
        poly = UPoly(key[3], ring.zero, ring.one)
    else:
        mp, sp, d = key
        a = _phi_coeffs(d)
        deg = len(a) - 1
        c = ring_power(ring, ring.P, sp)
        terms = [ring.zero] * (mp * deg + 1)
        for k, ak in enumerate(a):
            if ak:
                terms[mp * k] = ring.coerce(ak) * ring_power(ring, c, deg - k)
        poly = UPoly(terms, ring.zero, ring.one)
    ring._atoms[key] = poly
    return poly


def family_atoms(m: int, sigma: int) -> List[tuple]:
    """Atom keys whose product is ``t^m - P^sigma`` (``m >= 1``)."""
    g = gcd(m, sigma)
    return [(m // g, sigma // g, d) for d in divisors(g)]


def base_key(key) -> tuple:
    return tuple(key[:3])


def classes_of(key) -> List[Fraction]:
    """Residue classes ``r`` mod 1 of ``s0 = -sigma'/m' + 2 pi i r / log p``
    whose ``t = p^(-s0)`` is a root of the atom."""
    mp, _, d = key[:3]
    return [Fraction(k, mp * d) for k in range(mp * d) if gcd(k, d) == 1]


# --- rational functions -------------------------------------------------------------------


class ZetaRational:
    """``num(t) / prod atom(t)^e`` over a coefficient field."""

    __slots__ = ("ring", "num", "den", "var")

    def __init__(self, ring, num: UPoly, den: Optional[Dict[tuple, int]] = None, var: str = "t"):
        self.ring = ring
        self.num = num
        self.den = {k: e for k, e in (den or {}).items() if e}
        self.var = var

    # construction
    @classmethod
    def constant(cls, ring, c, var="t") -> "ZetaRational":
        return cls(ring, UPoly([ring.coerce(c)], ring.zero, ring.one), {}, var)

    @classmethod
    def poly(cls, ring, coeffs, var="t") -> "ZetaRational":
        return cls(ring, UPoly([ring.coerce(c) for c in coeffs], ring.zero, ring.one), {}, var)

    @classmethod
    def inverse_family(cls, ring, m: int, sigma: int, var="t") -> "ZetaRational":
        """``1 / (P^sigma - t^m)``."""
        if m == 0:
            return cls.constant(ring, ring.one / (ring_power(ring, ring.P, sigma) - ring.one), var)
        den = {k: 1 for k in family_atoms(m, sigma)}
        return cls(ring, UPoly([-ring.one], ring.zero, ring.one), den, var)

    def _new(self, num, den):
        return ZetaRational(self.ring, num, den, self.var)

    # structure
    def atom(self, key) -> UPoly:
        return atom_poly(self.ring, key)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_poly(self) -> UPoly:
        acc = UPoly([self.ring.one], self.ring.zero, self.ring.one)
        for k, e in sorted(self.den.items(), key=lambda kv: repr(kv[0])):
            acc = acc * self.atom(k) ** e
        return acc

    def unsplit(self) -> "ZetaRational":
        """Replace split atoms by whole atoms (inverse of the refinement in :meth:`reduced`)."""
        if all(len(k) == 3 for k in self.den):
            return self
        num = self.num
        den = {k: e for k, e in self.den.items() if len(k) == 3}
        groups: Dict[tuple, Dict[tuple, int]] = {}
        for k, e in self.den.items():
            if len(k) == 4:
                groups.setdefault(base_key(k), {})[k] = e
        for b, parts in groups.items():
            full = den.get(b, 0)
            top = max(max(parts.values()), full)
            have = UPoly([self.ring.one], self.ring.zero, self.ring.one)
            for k, e in parts.items():
                have = have * self.atom(k) ** e
            have = have * self.atom(b) ** full
            cofactor, rem = (self.atom(b) ** top).divmod(have)
            assert rem.is_zero()
            num = num * cofactor
            den[b] = top
        return self._new(num, den)

    # arithmetic
    def __add__(self, other: "ZetaRational") -> "ZetaRational":
        a, b = self.unsplit(), other.unsplit()
        den = dict(a.den)
        for k, e in b.den.items():
            den[k] = max(den.get(k, 0), e)
        na, nb = a.num, b.num
        for k, e in den.items():
            ea, eb = a.den.get(k, 0), b.den.get(k, 0)
            if e > ea:
                na = na * self.atom(k) ** (e - ea)
            if e > eb:
                nb = nb * self.atom(k) ** (e - eb)
        return self._new(na + nb, den)

    def __neg__(self):
        return self._new(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "ZetaRational":
        if not isinstance(other, ZetaRational):
            return self._new(self.num * self.ring.coerce(other), self.den)
        a, b = self.unsplit(), other.unsplit()
        den = dict(a.den)
        for k, e in b.den.items():
            den[k] = den.get(k, 0) + e
        return self._new(a.num * b.num, den)

    __rmul__ = __mul__

    def reduced(self) -> "ZetaRational":
        """Cancel every common factor of numerator and denominator."""
        num = self.num
        if num.is_zero():
            return self._new(num, {})
        den = dict(self.den)
        queue = sorted(den, key=repr)
        while queue:
            k = queue.pop(0)
            a = self.atom(k)
            while den.get(k) and a.divides(num):
                num = num // a
                den[k] -= 1
            if not den.get(k):
                den.pop(k, None)
                continue
            g = self.ring.poly_gcd(num, a) if hasattr(self.ring, "poly_gcd") else num.gcd(a)
            if g.degree > 0:
                # part of the atom's roots cancel: split it and try again
                rest = a // g
                e = den.pop(k)
                b = base_key(k)
                for piece in (g, rest):
                    pk = b + (tuple(piece.coeffs),)
                    atom_poly(self.ring, pk)
                    den[pk] = den.get(pk, 0) + e
                    queue.append(pk)
        return self._new(num, den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZetaRational):
            return NotImplemented
        return (self.num * other.den_poly()) == (other.num * self.den_poly())

    __hash__ = None

    def series(self, order: int) -> list:
        """First ``order`` Taylor coefficients at ``t = 0``."""
        return self.num.series(self.den_poly(), order)

    def evaluate(self, t):
        return self.num(t) / self.den_poly()(t)

    def map_coefficients(self, fn, ring) -> "ZetaRational":
        """Apply a ring homomorphism to all coefficients (atoms are recomputed in ``ring``)."""
        base = self.unsplit()
        num = UPoly([fn(c) for c in base.num.coeffs], ring.zero, ring.one)
        return ZetaRational(ring, num, dict(base.den), base.var)

    def symbols(self) -> set:
        used = set()
        for c in self.num.coeffs:
            used |= self.ring.symbols_in(c)
        return used

    # display
    def factor_strings(self) -> List[Tuple[str, int]]:
        return [(format_upoly(self.atom(k), self.ring, self.var), e)
                for k, e in sorted(self.den.items(), key=lambda kv: repr(kv[0]))]

    def __str__(self):
        num = format_upoly(self.num, self.ring, self.var)
        if not self.den:
            return num
        dens = " * ".join("(%s)%s" % (s, "^%d" % e if e > 1 else "") for s, e in self.factor_strings())
        return "(%s) / (%s)" % (num, dens)

    def __repr__(self):
        return "ZetaRational(%s)" % self


def format_upoly(poly: UPoly, ring, var: str = "t") -> str:
    if poly.is_zero():
        return "0"
    parts = []
    for k in range(poly.degree, -1, -1):
        c = poly[k]
        if c == 0:
            continue
        cs = ring.fmt(c)
        mono = "" if k == 0 else (var if k == 1 else "%s^%d" % (var, k))
        if not mono:
            parts.append("(%s)" % cs if any(ch in cs[1:] for ch in "+-") else cs)
        elif cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append("-" + mono)
        else:
            wrap = any(ch in cs[1:] for ch in "+-/ ")
            parts.append("%s*%s" % ("(%s)" % cs if wrap else cs, mono))
    return " + ".join(parts).replace("+ -", "- ")
