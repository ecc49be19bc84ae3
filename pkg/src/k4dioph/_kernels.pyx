# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for sieving and prime-tuple counting.

Mirrors ``_pykernels`` exactly. Loops release the GIL so callers may split
ranges across threads.
"""
from libc.math cimport pow as cpow, llround
from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef long long i64
ctypedef unsigned long long u64

cdef int[18] ROOT_EXPONENTS = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37,
                                41, 43, 47, 53, 59, 61]


def sieve(Py_ssize_t n):
    """Return a bytearray ``s`` of length n + 1 with ``s[i] == 1`` iff i is prime."""
    if n < 0:
        raise ValueError("sieve limit must be non-negative")
    cdef bytearray buf = bytearray(n + 1)
    if n < 2:
        return buf
    cdef unsigned char[::1] s = buf
    cdef Py_ssize_t i, j
    with nogil:
        memset(&s[0], 1, n + 1)
        s[0] = 0
        s[1] = 0
        i = 2
        while i * i <= n:
            if s[i]:
                j = i * i
                while j <= n:
                    s[j] = 0
                    j += i
            i += 1
    return buf


cdef inline bint _prime_at(const unsigned char[::1] s, i64 v, i64 size) noexcept nogil:
    return v >= 0 and v < size and s[v] != 0


cdef i64* _to_c(seq, Py_ssize_t k) except NULL:
    cdef i64* out = <i64*> malloc(max(k, 1) * sizeof(i64))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(k):
        out[i] = seq[i]
    return out


def count_univariate(const unsigned char[::1] isprime, coeffs, consts, i64 lo, i64 hi):
    """Count x in [lo, hi] with every coeffs[i]*x + consts[i] prime."""
    cdef Py_ssize_t k = len(coeffs)
    cdef i64* a = _to_c(coeffs, k)
    cdef i64* b = _to_c(consts, k)
    cdef i64 size = isprime.shape[0]
    cdef i64 x, total = 0
    cdef Py_ssize_t i
    cdef bint ok
    try:
        with nogil:
            x = lo
            while x <= hi:
                ok = True
                for i in range(k):
                    if not _prime_at(isprime, a[i] * x + b[i], size):
                        ok = False
                        break
                if ok:
                    total += 1
                x += 1
    finally:
        free(a)
        free(b)
    return total


def count_box2(const unsigned char[::1] isprime, coeffs1, coeffs2, consts,
               i64 lo, i64 hi, i64 h):
    """Count points (x1, x2), x1 in [lo, hi], x2 in [-h, h], with all forms prime."""
    cdef Py_ssize_t k = len(consts)
    cdef i64* a1 = _to_c(coeffs1, k)
    cdef i64* a2 = _to_c(coeffs2, k)
    cdef i64* b = _to_c(consts, k)
    cdef i64 size = isprime.shape[0]
    cdef i64 x1, x2, total = 0
    cdef Py_ssize_t i
    cdef bint ok
    try:
        with nogil:
            x1 = lo
            while x1 <= hi:
                x2 = -h
                while x2 <= h:
                    ok = True
                    for i in range(k):
                        if not _prime_at(isprime, a1[i] * x1 + a2[i] * x2 + b[i], size):
                            ok = False
                            break
                    if ok:
                        total += 1
                    x2 += 1
                x1 += 1
    finally:
        free(a1)
        free(a2)
        free(b)
    return total


def count_aps(const unsigned char[::1] isprime, i64 m, i64 h):
    """Count (x1, x2), x2 >= 1, with x1 + j*x2 prime and <= h for j < m."""
    cdef i64 x1, x2, j, total = 0
    cdef i64 top = m - 1
    cdef bint ok
    with nogil:
        x1 = 2
        while x1 <= h:
            if isprime[x1]:
                x2 = 1
                while x1 + top * x2 <= h:
                    ok = True
                    j = 1
                    while j < m:
                        if not isprime[x1 + j * x2]:
                            ok = False
                            break
                        j += 1
                    if ok:
                        total += 1
                    x2 += 1
            x1 += 1
    return total


def gap_counts(const unsigned char[::1] isprime, i64 n, i64 max_gap):
    """Counts of primes p with p + g prime and p + g <= n, for g = 2, 4, .., max_gap."""
    out = []
    cdef i64 g, p, c
    g = 2
    while g <= max_gap:
        c = 0
        with nogil:
            p = 2
            while p + g <= n:
                if isprime[p] and isprime[p + g]:
                    c += 1
                p += 1
        out.append(c)
        g += 2
    return out


cdef inline u64 _checked_pow(u64 r, int k, u64 limit) noexcept nogil:
    # returns limit + 1 on overflow past limit
    cdef u64 acc = 1
    cdef int i
    for i in range(k):
        if r != 0 and acc > limit / r:
            return limit + 1
        acc *= r
    return acc


cdef bint _is_perfect_power(u64 m) noexcept nogil:
    cdef int idx, k
    cdef i64 r, cand
    for idx in range(18):
        k = ROOT_EXPONENTS[idx]
        if k >= 64 or ((<u64> 1) << k) > m:
            break
        r = llround(cpow(<double> m, 1.0 / k))
        cand = r - 1
        while cand <= r + 1:
            if cand > 1 and _checked_pow(<u64> cand, k, m) == m:
                return True
            cand += 1
    return False


def f1_scan(primes, int min_c):
    """Scan primes p for p^2 - 1 = 2^a 3^b m with a, b >= 1 and m > 1.

    When ``min_c >= 2`` only entries whose m is a perfect power are kept.
    Primes must be below 2**32. Returns a list of (p, a, b, m).
    """
    out = []
    cdef u64 p, n
    cdef int a, b
    cdef bint need_power = min_c >= 2
    for py_p in primes:
        p = py_p
        if p >= (<u64> 1) << 32:
            raise OverflowError("f1_scan kernel requires p < 2**32")
        n = p * p - 1
        if n == 0:
            continue
        a = 0
        while (n & 1) == 0:
            n >>= 1
            a += 1
        b = 0
        while n % 3 == 0:
            n //= 3
            b += 1
        if a < 1 or b < 1 or n < 2:
            continue
        if need_power and not _is_perfect_power(n):
            continue
        out.append((py_p, a, b, n))
    return out
