"""Pure-Python kernels.

Same signatures and results as the compiled ``_kernels`` extension; used when
the extension is unavailable or when the python backend is requested.
"""
import math

_ROOT_EXPONENTS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


def sieve(n):
    """Return a bytearray ``s`` of length n + 1 with ``s[i] == 1`` iff i is prime."""
    if n < 0:
        raise ValueError("sieve limit must be non-negative")
    s = bytearray([1]) * (n + 1)
    s[0:2] = b"\x00\x00"[: min(2, n + 1)]
    for i in range(2, math.isqrt(n) + 1):
        if s[i]:
            s[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return s


def _value_is_prime(isprime, v):
    return 0 <= v < len(isprime) and isprime[v]


def count_univariate(isprime, coeffs, consts, lo, hi):
    """Count x in [lo, hi] with every coeffs[i]*x + consts[i] prime."""
    forms = list(zip(coeffs, consts))
    total = 0
    for x in range(lo, hi + 1):
        for a, b in forms:
            if not _value_is_prime(isprime, a * x + b):
                break
        else:
            total += 1
    return total


def count_box2(isprime, coeffs1, coeffs2, consts, lo, hi, h):
    """Count points (x1, x2), x1 in [lo, hi], x2 in [-h, h], with all forms prime."""
    forms = list(zip(coeffs1, coeffs2, consts))
    total = 0
    for x1 in range(lo, hi + 1):
        for x2 in range(-h, h + 1):
            for a1, a2, b in forms:
                if not _value_is_prime(isprime, a1 * x1 + a2 * x2 + b):
                    break
            else:
                total += 1
    return total


def count_aps(isprime, m, h):
    """Count (x1, x2), x2 >= 1, with x1 + j*x2 prime and <= h for j < m."""
    total = 0
    top = m - 1
    for x1 in range(2, h + 1):
        if not isprime[x1]:
            continue
        x2 = 1
        while x1 + top * x2 <= h:
            for j in range(1, m):
                if not isprime[x1 + j * x2]:
                    break
            else:
                total += 1
            x2 += 1
    return total


def gap_counts(isprime, n, max_gap):
    """Counts of primes p with p + g prime and p + g <= n, for g = 2, 4, .., max_gap."""
    out = []
    for g in range(2, max_gap + 1, 2):
        c = 0
        for p in range(2, n - g + 1):
            if isprime[p] and isprime[p + g]:
                c += 1
        out.append(c)
    return out


def _is_perfect_power_small(m):
    for k in _ROOT_EXPONENTS:
        if (1 << k) > m:
            break
        if k == 2:
            r = math.isqrt(m)
            if r * r == m:
                return True
            continue
        r = int(round(m ** (1.0 / k)))
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == m:
                return True
    return False


def f1_scan(primes, min_c):
    """Scan primes p for p^2 - 1 = 2^a 3^b m with a, b >= 1 and m > 1.

    When ``min_c >= 2`` only entries whose m is a perfect power are kept.
    Returns a list of (p, a, b, m).
    """
    out = []
    need_power = min_c >= 2
    for p in primes:
        n = p * p - 1
        if n <= 0:
            continue
        a = (n & -n).bit_length() - 1
        n >>= a
        b = 0
        while n % 3 == 0:
            n //= 3
            b += 1
        if a < 1 or b < 1 or n < 2:
            continue
        if need_power and not _is_perfect_power_small(n):
            continue
        out.append((p, a, b, n))
    return out
