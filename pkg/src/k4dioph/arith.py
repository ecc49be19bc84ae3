"""Exact integer primitives: primality, factorization, roots, powers."""
from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Optional

from . import _backend

# Strong-probable-prime tests to these bases are exact below this limit.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXACT_LIMIT = 318665857834031151167461
_SMALL_TRIAL = 1024
_RHO_ATTEMPTS = 8
_RHO_MAX_STEPS = 1 << 20


@dataclass(frozen=True)
class SearchBounds:
    """Explicit caps on every searched variable; echoed in all outputs."""

    max_p: int = 10**6
    max_q: int = 10**12
    max_m: int = 64
    max_exp: int = 40
    max_base: int = 10**6
    trial_division_bound: int = 10**6
    mr_rounds: int = 64

    def __post_init__(self):
        for key, value in asdict(self).items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"SearchBounds.{key} must be a positive integer, got {value!r}")

    def to_dict(self):
        return asdict(self)


DEFAULT_BOUNDS = SearchBounds()


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple  # ((prime, exponent), ...) with strictly increasing primes
    cofactor: int = 1

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if any(b <= a for a, b in zip(primes, primes[1:])) or any(e < 1 for _, e in self.factors):
            raise ValueError("factors must have strictly increasing primes and positive exponents")
        if self.recompose() != self.value:
            raise ValueError(f"factors and cofactor do not multiply back to {self.value}")

    @property
    def complete(self):
        return self.cofactor == 1

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    def recompose(self):
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def as_dict(self):
        return dict(self.factors)


@lru_cache(maxsize=8)
def primes_up_to(n):
    """All primes <= n as a tuple."""
    if n < 2:
        return ()
    flags = _backend.kernels().sieve(n)
    return tuple(i for i, f in enumerate(flags) if f)


def _strong_probable_prime(n, d, s, a):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n, rounds=64):
    """Miller-Rabin; exact below 3.18e23 (so for all 64-bit n), else `rounds` extra random bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if not _strong_probable_prime(n, d, s, a):
            return False
    if n < _MR_EXACT_LIMIT:
        return True
    # Seeded by n so repeated calls agree.
    rng = random.Random(n)
    for _ in range(rounds):
        if not _strong_probable_prime(n, d, s, rng.randrange(2, n - 1)):
            return False
    return True


def factor_out_2_3(n):
    """Split n = 2**a * 3**b * m with gcd(m, 6) == 1; returns (a, b, m)."""
    if n < 1:
        raise ValueError("factor_out_2_3 needs n >= 1")
    a = (n & -n).bit_length() - 1
    n >>= a
    b = 0
    while n % 3 == 0:
        n //= 3
        b += 1
    return a, b, n


def valuation(n, p):
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def integer_nth_root(n, k):
    """Return (floor(n ** (1/k)), exact)."""
    if n < 0 or k < 1:
        raise ValueError("integer_nth_root needs n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n, True
    if k == 2:
        r = math.isqrt(n)
        return r, r * r == n
    if k >= n.bit_length():
        return 1, False
    if n.bit_length() <= 40 * k and n.bit_length() < 1000:
        r = int(round(n ** (1.0 / k)))
    else:
        # Newton from above
        x = 1 << -(-n.bit_length() // k)
        while True:
            y = ((k - 1) * x + n // x ** (k - 1)) // k
            if y >= x:
                break
            x = y
        r = x
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r, r**k == n


@lru_cache(maxsize=None)
def _prime_exponents(limit):
    return tuple(p for p in range(2, limit + 1) if all(p % d for d in range(2, math.isqrt(p) + 1)))


def perfect_power(n) -> Optional[tuple]:
    """Largest-exponent representation n = base**exp with exp >= 2, or None."""
    if n < 2:
        raise ValueError("perfect_power needs n >= 2")
    base, exp = n, 1
    found = True
    while found and base > 3:
        found = False
        for k in _prime_exponents(base.bit_length()):
            r, exact = integer_nth_root(base, k)
            if exact:
                base, exp = r, exp * k
                found = True
                break
    return (base, exp) if exp > 1 else None


def power_representations(n):
    """Every (y, k) with y >= 2, k >= 2 and y**k == n, ascending in k."""
    pp = perfect_power(n) if n >= 2 else None
    if pp is None:
        return []
    base, exp = pp
    return [(base ** (exp // d), d) for d in range(2, exp + 1) if exp % d == 0]


def prime_power(n, rounds=64) -> Optional[tuple]:
    """(q, k) with q prime and q**k == n (k >= 1), or None."""
    if n < 2:
        return None
    if is_prime(n, rounds):
        return n, 1
    pp = perfect_power(n)
    if pp is not None and is_prime(pp[0], rounds):
        return pp
    return None


def sqrt_one_residues_mod_pow2(a):
    """Residues r in [0, 2**a) with r*r == 1 mod 2**a, ascending (a >= 3)."""
    if a < 3:
        raise ValueError("the four-root structure of x^2 = 1 mod 2^a needs a >= 3")
    half = 1 << (a - 1)
    return [1, half - 1, half + 1, (1 << a) - 1]


def _brent_rho(n, c):
    """One Pollard-Brent run; returns a nontrivial divisor or None."""
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    steps = 0
    batch = 128
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += batch
        r <<= 1
        steps += r
        if steps > _RHO_MAX_STEPS:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if 1 < g < n else None


def _split(n):
    pp = perfect_power(n)
    if pp is not None:
        return pp[0]
    for c in range(1, _RHO_ATTEMPTS + 1):
        d = _brent_rho(n, c)
        if d is not None:
            return d
    return None


def factorize(n, bounds=None):
    """Factor n by trial division then Pollard-Brent.

    A composite part that resists splitting is returned as the cofactor, after
    trial division up to ``bounds.trial_division_bound`` has been exhausted on it.
    """
    bounds = bounds or DEFAULT_BOUNDS
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    rounds = bounds.mr_rounds
    found = {}

    def add(p, e=1):
        found[p] = found.get(p, 0) + e

    rem = n
    for p in primes_up_to(min(_SMALL_TRIAL, bounds.trial_division_bound)):
        if p * p > rem:
            break
        while rem % p == 0:
            rem //= p
            add(p)
    stack = [rem] if rem > 1 else []
    stubborn = []
    while stack:
        r = stack.pop()
        if r == 1:
            continue
        if is_prime(r, rounds):
            add(r)
            continue
        d = _split(r)
        if d is None:
            stubborn.append(r)
        else:
            stack.extend((d, r // d))

    cofactor = 1
    if stubborn:
        trial = [p for p in primes_up_to(bounds.trial_division_bound) if p > _SMALL_TRIAL]
        for r in stubborn:
            for p in trial:
                if p * p > r:
                    break
                while r % p == 0:
                    r //= p
                    add(p)
            if r > 1 and is_prime(r, rounds):
                add(r)
            else:
                cofactor *= r
    factors = tuple(sorted(found.items()))
    return Factorization(value=n, factors=factors, cofactor=cofactor)


def prime_factors(n, bounds=None):
    """Distinct primes of n; raises if factorize leaves a cofactor."""
    f = factorize(n, bounds)
    if not f.complete:
        raise ArithmeticError(f"could not fully factor {n}: cofactor {f.cofactor}")
    return f.primes
