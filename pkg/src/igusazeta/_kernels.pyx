# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the reference versions.

All modular arithmetic runs in 64-bit integers with moduli below 2**31.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef class _Poly:
    cdef int nterms, n, size, maxe
    cdef int64_t modulus
    cdef int64_t *coeffs
    cdef int *exps
    cdef int64_t *powtab   # [var][e][x], flattened

    def __cinit__(self, coeffs, exps, int n, int size, int64_t modulus):
        cdef int i, j, e, x
        self.nterms = len(coeffs)
        self.n = n
        self.size = size
        self.modulus = modulus
        self.maxe = 0
        for ex in exps:
            for e in ex:
                if e > self.maxe:
                    self.maxe = e
        self.coeffs = <int64_t *> malloc(max(self.nterms, 1) * sizeof(int64_t))
        self.exps = <int *> malloc(max(self.nterms * n, 1) * sizeof(int))
        self.powtab = <int64_t *> malloc(n * (self.maxe + 1) * size * sizeof(int64_t))
        if not self.coeffs or not self.exps or not self.powtab:
            raise MemoryError()
        for i in range(self.nterms):
            self.coeffs[i] = coeffs[i] % modulus
            for j in range(n):
                self.exps[i * n + j] = exps[i][j]
        cdef int64_t acc
        for j in range(n):
            for x in range(size):
                acc = 1 % modulus
                for e in range(self.maxe + 1):
                    self.powtab[(j * (self.maxe + 1) + e) * size + x] = acc
                    acc = (acc * (x % modulus)) % modulus

    def __dealloc__(self):
        free(self.coeffs)
        free(self.exps)
        free(self.powtab)

    cdef inline int64_t value(self, int *x) nogil:
        cdef int i, j, e
        cdef int64_t acc = 0, t
        cdef int stride = self.maxe + 1
        for i in range(self.nterms):
            t = self.coeffs[i]
            for j in range(self.n):
                e = self.exps[i * self.n + j]
                if e:
                    t = (t * self.powtab[(j * stride + e) * self.size + x[j]]) % self.modulus
            acc += t
        return acc % self.modulus


cdef inline bint _next(int *x, int n, int lo, int hi) nogil:
    """Advance the odometer ``x`` over ``[lo, hi)^n``; False when exhausted."""
    cdef int j = n - 1
    while j >= 0:
        x[j] += 1
        if x[j] < hi:
            return True
        x[j] = lo
        j -= 1
    return False


def count_zeros_torus(coeffs, exps, int n, int p):
    cdef _Poly f = _Poly(coeffs, exps, n, p, p)
    cdef int *x = <int *> malloc(n * sizeof(int))
    cdef long long count = 0
    cdef int j
    for j in range(n):
        x[j] = 1
    with nogil:
        while True:
            if f.value(x) == 0:
                count += 1
            if not _next(x, n, 1, p):
                break
    free(x)
    return count


def find_common_zero(polys, int n, int p):
    cdef list fs = [_Poly(c, e, n, p, p) for c, e in polys]
    cdef int k = len(fs)
    cdef int *x = <int *> malloc(n * sizeof(int))
    cdef int j, i
    cdef _Poly g
    cdef bint ok
    for j in range(n):
        x[j] = 1
    result = None
    while True:
        ok = True
        for i in range(k):
            g = <_Poly> fs[i]
            if g.value(x) != 0:
                ok = False
                break
        if ok:
            result = tuple(x[j] for j in range(n))
            break
        if not _next(x, n, 1, p):
            break
    free(x)
    return result


def char_index_histogram(coeffs, exps, int n, int p, dlog, int d):
    cdef _Poly f = _Poly(coeffs, exps, n, p, p)
    cdef int *x = <int *> malloc(n * sizeof(int))
    cdef int *logs = <int *> malloc(p * sizeof(int))
    cdef long long *hist = <long long *> malloc(d * sizeof(long long))
    cdef int j
    cdef int64_t v
    logs[0] = 0
    for j in range(1, p):
        logs[j] = dlog[j] % d
    for j in range(d):
        hist[j] = 0
    for j in range(n):
        x[j] = 1
    with nogil:
        while True:
            v = f.value(x)
            if v:
                hist[logs[v]] += 1
            if not _next(x, n, 1, p):
                break
    out = [hist[j] for j in range(d)]
    free(x)
    free(logs)
    free(hist)
    return out


def padic_order_histogram(coeffs, exps, int n, int p, int L):
    cdef int64_t modulus = 1
    cdef int j, k
    for j in range(L + 1):
        modulus *= p
    if modulus >= 2147483648:
        raise OverflowError("p^(L+1) must stay below 2^31")
    cdef int side = <int> (modulus // p)
    cdef _Poly f = _Poly(coeffs, exps, n, <int> modulus, modulus)
    cdef int *y = <int *> malloc(n * sizeof(int))
    cdef int *x = <int *> malloc(n * sizeof(int))
    cdef long long *hist = <long long *> malloc((L + 2) * sizeof(long long))
    cdef int64_t v
    for j in range(L + 2):
        hist[j] = 0
    for j in range(n):
        y[j] = 0
    with nogil:
        while True:
            for j in range(n):
                x[j] = p * y[j]
            v = f.value(x)
            if v == 0:
                hist[L + 1] += 1
            else:
                k = 0
                while v % p == 0:
                    v = v // p
                    k += 1
                hist[k] += 1
            if not _next(y, n, 0, side):
                break
    out = [hist[j] for j in range(L + 2)]
    free(x)
    free(y)
    free(hist)
    return out
