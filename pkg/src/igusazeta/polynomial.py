"""Integer polynomials in up to six variables."""

from __future__ import annotations

import re
from typing import Dict, Iterable, Tuple

VARIABLES = ("x", "y", "z", "w", "u", "v")
MAX_DIM = len(VARIABLES)

Monomial = Tuple[int, ...]


class PolynomialError(ValueError):
    """Raised for malformed or unsuitable polynomial input."""


class IntPolynomial:
    """A polynomial with integer coefficients in ``n`` variables.

    Terms are kept in a dict ``{exponent tuple: coefficient}`` with no zero
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Monomial, int]):
        if not 1 <= n <= MAX_DIM:
            raise PolynomialError("dimension must be between 1 and %d" % MAX_DIM)
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise PolynomialError("bad exponent vector %r" % (exps,))
            if c:
                clean[exps] = int(c)
        self.n = n
        self.terms = clean

    @property
    def support(self) -> list:
        """Exponent vectors in canonical (descending lexicographic) order."""
        return sorted(self.terms, reverse=True)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.n, 0)

    def variables(self) -> frozenset:
        """0-based indices of the variables that actually occur."""
        return frozenset(i for exps in self.terms for i, e in enumerate(exps) if e)

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return "IntPolynomial(%d, %r)" % (self.n, str(self))

    def __str__(self):
        return format_polynomial(self)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return IntPolynomial(self.n, terms)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        terms: Dict[Monomial, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return IntPolynomial(self.n, terms)

    def evaluate(self, point, modulus: int | None = None) -> int:
        acc = 0
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= pow(x, e, modulus) if modulus else x ** e
            acc += term
        return acc % modulus if modulus else acc

    def restrict_to(self, keep: Iterable[Monomial]) -> "IntPolynomial":
        keep = set(keep)
        return IntPolynomial(self.n, {e: c for e, c in self.terms.items() if e in keep})

    def drop_variables(self, indices: Iterable[int]) -> "IntPolynomial":
        """Remove the given (unused) variables, giving a polynomial in fewer variables."""
        drop = set(indices)
        keep = [i for i in range(self.n) if i not in drop]
        terms = {}
        for exps, c in self.terms.items():
            if any(exps[i] for i in drop):
                raise PolynomialError("variable to drop occurs in the polynomial")
            terms[tuple(exps[i] for i in keep)] = c
        return IntPolynomial(len(keep), terms)


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z])|(\^)|(\*)|([+-]))")


def parse_polynomial(text: str, n: int, require_vanishing_at_origin: bool = False) -> IntPolynomial:
    """Parse text such as ``"x^3 + x*y + y^2 + z^2"`` into an :class:`IntPolynomial`.

    Variables ``x, y, z, w, u, v`` are the coordinates 1..6.  Like terms are
    collected.  Raises :class:`PolynomialError` for syntax errors, the zero
    polynomial, or (when requested) a nonzero constant term.
    """
    if not 1 <= n <= MAX_DIM:
        raise PolynomialError("dimension must be between 1 and %d" % MAX_DIM)
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise PolynomialError("unexpected character at position %d in %r" % (pos, text))
        num, var, caret, star, sign = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif var is not None:
            if var not in VARIABLES[:n]:
                raise PolynomialError("unknown variable %r for dimension %d" % (var, n))
            tokens.append(("var", VARIABLES.index(var)))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        else:
            tokens.append(("sign", 1 if sign == "+" else -1))
        pos = m.end()
    if not tokens:
        raise PolynomialError("empty polynomial")

    terms: Dict[Monomial, int] = {}
    i = 0
    first = True
    while i < len(tokens):
        sgn = 1
        if tokens[i][0] == "sign":
            sgn = tokens[i][1]
            i += 1
        elif not first:
            raise PolynomialError("missing '+' or '-' between terms")
        first = False
        coeff = 1
        exps = [0] * n
        nfactors = 0
        expect_factor = True
        while i < len(tokens) and tokens[i][0] != "sign":
            kind, val = tokens[i]
            if kind == "*":
                if expect_factor:
                    raise PolynomialError("misplaced '*'")
                expect_factor = True
                i += 1
                continue
            if kind == "num":
                coeff *= val
                i += 1
            elif kind == "var":
                e = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "^":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num":
                        raise PolynomialError("exponent must be a non-negative integer")
                    e = tokens[i + 1][1]
                    i += 2
                exps[val] += e
            else:
                raise PolynomialError("misplaced '^'")
            nfactors += 1
            expect_factor = False
        if nfactors == 0 or expect_factor:
            raise PolynomialError("incomplete term in %r" % text)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sgn * coeff

    f = IntPolynomial(n, terms)
    if f.is_zero():
        raise PolynomialError("the polynomial is zero")
    if require_vanishing_at_origin and f.constant_term():
        raise PolynomialError("the polynomial has a nonzero constant term")
    return f


def format_polynomial(f: IntPolynomial) -> str:
    """Canonical text form; ``parse_polynomial`` reads it back to the same object."""
    if f.is_zero():
        return "0"
    parts = []
    for exps in f.support:
        c = f.terms[exps]
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(VARIABLES[i])
            elif e > 1:
                factors.append("%s^%d" % (VARIABLES[i], e))
        mono = "*".join(factors)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = "%d*%s" % (a, mono)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def face_restriction(f: IntPolynomial, face) -> IntPolynomial:
    """The face polynomial: the terms of ``f`` whose exponents lie on ``face``.

    ``face`` must come from the Newton polyhedron of ``f``.
    """
    owner = getattr(face, "polyhedron", None)
    if owner is None or set(owner.f.terms) != set(f.terms):
        raise PolynomialError("face does not belong to the Newton polyhedron of this polynomial")
    return f.restrict_to(e for e in f.terms if face.contains(e))


def partial_derivative(f: IntPolynomial, i) -> IntPolynomial:
    """Formal derivative with respect to variable ``i`` (1-based index or name)."""
    if isinstance(i, str):
        if i not in VARIABLES[: f.n]:
            raise PolynomialError("unknown variable %r" % i)
        i = VARIABLES.index(i) + 1
    if not 1 <= i <= f.n:
        raise PolynomialError("variable index out of range")
    k = i - 1
    terms = {}
    for exps, c in f.terms.items():
        e = exps[k]
        if e:
            new = list(exps)
            new[k] = e - 1
            terms[tuple(new)] = c * e
    return IntPolynomial(f.n, terms)
