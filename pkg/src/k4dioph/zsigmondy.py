"""Primitive prime divisors of a**n +- b**n.

A prime is primitive for (a, b, n, sign) when it divides a**n +- b**n but no
a**k +- b**k with 1 <= k < n. Three patterns have no primitive divisor:
2**3 + 1, 2**6 - 1, and a**2 - b**2 with a + b a power of two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .arith import DEFAULT_BOUNDS, factorize


class Sign(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


class ZsigmondyException(str, Enum):
    CUBE_PLUS = "cube_plus"
    MERSENNE_SIX = "mersenne_six"
    POWER_OF_TWO_SQUARE = "power_of_two_square"


class ZsigmondyError(ArithmeticError):
    """Raised when no primitive divisor can be certified within bounds."""


@dataclass(frozen=True)
class ZsigmondyQuery:
    a: int
    b: int
    n: int
    sign: Sign

    def __post_init__(self):
        object.__setattr__(self, "sign", Sign(self.sign))
        if not (self.a > self.b > 0):
            raise ValueError(f"need a > b > 0, got a={self.a}, b={self.b}")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"need gcd(a, b) = 1, got gcd({self.a}, {self.b}) > 1")
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")

    def term(self, k):
        """a**k + b**k or a**k - b**k according to the sign."""
        if self.sign is Sign.PLUS:
            return self.a**k + self.b**k
        return self.a**k - self.b**k

    def term_mod(self, k, p):
        x = pow(self.a, k, p)
        y = pow(self.b, k, p)
        return (x + y) % p if self.sign is Sign.PLUS else (x - y) % p


@dataclass(frozen=True)
class ZsigmondyResult:
    query: ZsigmondyQuery
    primitive_divisor: Optional[int] = None
    exception: Optional[ZsigmondyException] = None

    def __post_init__(self):
        if (self.primitive_divisor is None) == (self.exception is None):
            raise ValueError("exactly one of primitive_divisor / exception must be set")


def _is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


def is_zsigmondy_exception(q: ZsigmondyQuery) -> Optional[ZsigmondyException]:
    """Match q against the three exceptional patterns without evaluating powers."""
    if q.sign is Sign.PLUS:
        if (q.a, q.b, q.n) == (2, 1, 3):
            return ZsigmondyException.CUBE_PLUS
        return None
    if (q.a, q.b, q.n) == (2, 1, 6):
        return ZsigmondyException.MERSENNE_SIX
    if q.n == 2 and _is_power_of_two(q.a + q.b):
        return ZsigmondyException.POWER_OF_TWO_SQUARE
    return None


def is_primitive_divisor(p, q: ZsigmondyQuery):
    """Direct check: p | term(n) and p divides no earlier term."""
    if q.term_mod(q.n, p) != 0:
        return False
    return all(q.term_mod(k, p) != 0 for k in range(1, q.n))


def primitive_prime_divisor(q: ZsigmondyQuery, bounds=None) -> ZsigmondyResult:
    """Smallest primitive prime divisor of q, or the exception tag that applies."""
    bounds = bounds or DEFAULT_BOUNDS
    tag = is_zsigmondy_exception(q)
    if tag is not None:
        return ZsigmondyResult(q, exception=tag)
    value = q.term(q.n)
    # Strip every prime shared with an earlier term; what remains is made of
    # primitive primes only, and is much smaller to factor.
    core = value
    for k in range(1, q.n):
        g = math.gcd(core, q.term(k))
        while g > 1:
            core //= g
            g = math.gcd(core, g)
    if core == 1:
        raise ZsigmondyError(f"{q} has no primitive prime divisor and matches no exception")
    f = factorize(core, bounds)
    for p in f.primes:
        if is_primitive_divisor(p, q):
            return ZsigmondyResult(q, primitive_divisor=p)
    raise ZsigmondyError(
        f"could not certify a primitive divisor of {value}: unsplit cofactor {f.cofactor}"
    )
