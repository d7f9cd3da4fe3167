"""Pure-Python versions of the enumeration kernels.

Polynomials are passed as ``coeffs`` (integers, any sign) and ``exps`` (one
exponent tuple per coefficient).  The compiled module ``_kernels`` has the
same functions with the same signatures.
"""

from itertools import product


def _power_tables(exps, n, size, modulus):
    maxe = max((max(e) for e in exps), default=0)
    tables = []
    for _ in range(n):
        rows = [[1] * size]
        for e in range(1, maxe + 1):
            rows.append([pow(x, e, modulus) for x in range(size)])
        tables.append(rows)
    return tables


def _evaluator(coeffs, exps, n, size, modulus):
    tables = _power_tables(exps, n, size, modulus)
    terms = [(c % modulus, [(tables[i][e], i) for i, e in enumerate(ex) if e]) for c, ex in zip(coeffs, exps)]

    def value(x):
        acc = 0
        for c, fac in terms:
            t = c
            for row, i in fac:
                t = t * row[x[i]]
            acc += t
        return acc % modulus

    return value


def count_zeros_torus(coeffs, exps, n, p):
    """Number of points of ``(F_p^*)^n`` where the polynomial vanishes."""
    value = _evaluator(coeffs, exps, n, p, p)
    return sum(1 for x in product(range(1, p), repeat=n) if value(x) == 0)


def find_common_zero(polys, n, p):
    """First point of ``(F_p^*)^n`` (lexicographic) where all polynomials vanish, or None."""
    values = [_evaluator(c, e, n, p, p) for c, e in polys]
    for x in product(range(1, p), repeat=n):
        if all(v(x) == 0 for v in values):
            return x
    return None


def char_index_histogram(coeffs, exps, n, p, dlog, d):
    """Histogram over ``k mod d`` of the discrete logarithms of the nonzero values
    ``f(x)``, ``x`` in ``(F_p^*)^n``; ``dlog[a]`` is the logarithm of ``a``."""
    value = _evaluator(coeffs, exps, n, p, p)
    hist = [0] * d
    for x in product(range(1, p), repeat=n):
        v = value(x)
        if v:
            hist[dlog[v] % d] += 1
    return hist


def padic_order_histogram(coeffs, exps, n, p, L):
    """Counts, for ``l = 0..L``, of ``x`` in ``(pZ/p^(L+1))^n`` with ``ord_p f(x) = l``.

    Entry ``L + 1`` counts the points with ``f(x) == 0 mod p^(L+1)``.
    """
    modulus = p ** (L + 1)
    value = _evaluator(coeffs, exps, n, modulus, modulus)
    hist = [0] * (L + 2)
    for y in product(range(p ** L), repeat=n):
        v = value(tuple(p * c for c in y))
        k = 0
        while v and v % p == 0:
            v //= p
            k += 1
        hist[k if v else L + 1] += 1
    return hist
