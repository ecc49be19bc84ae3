"""Prime powers q whose group order q(q^2-1)/gcd(2, q-1) has the simple-K4 shape.

Only the arithmetic shape 2^a 3^b p^c r^d (p, r > 3 distinct) is checked;
nothing here asserts that a simple group of that order exists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .arith import DEFAULT_BOUNDS, Factorization, factor_out_2_3, factorize, is_prime, prime_power
from .equations import FamilyId


class K4Verdict(str, Enum):
    ACCEPTED = "accepted"
    REJECTED_PRIME_COUNT = "rejected_prime_count"
    REJECTED_SHAPE = "rejected_shape"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class K4Candidate:
    q: int
    base: int
    exponent: int
    order: int
    factorization: Factorization
    distinct_primes: tuple
    verdict: K4Verdict

    def as_record(self):
        return {
            "q": self.q,
            "base": self.base,
            "exponent": self.exponent,
            "order": self.order,
            "factors": [list(f) for f in self.factorization.factors],
            "cofactor": self.factorization.cofactor,
            "verdict": self.verdict.value,
        }


def group_order(q):
    return q * (q * q - 1) // math.gcd(2, q - 1)


def k4_order_check(q, bounds=None):
    """Classify the order of q (a prime power >= 4) against the 2^a 3^b p^c r^d shape."""
    bounds = bounds or DEFAULT_BOUNDS
    if q < 4:
        raise ValueError("q must be >= 4")
    pp = prime_power(q, bounds.mr_rounds)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    order = group_order(q)
    f = factorize(order, bounds)
    primes = f.primes
    if not f.complete:
        verdict = K4Verdict.UNRESOLVED
    elif len(primes) != 4:
        verdict = K4Verdict.REJECTED_PRIME_COUNT
    elif 2 not in primes or 3 not in primes:
        verdict = K4Verdict.REJECTED_SHAPE
    else:
        verdict = K4Verdict.ACCEPTED
    return K4Candidate(q, pp[0], pp[1], order, f, primes, verdict)


def prime_powers_up_to(limit, lo=2):
    """Prime powers in [lo, limit], ascending."""
    out = []
    for v in range(lo, limit + 1):
        if prime_power(v) is not None:
            out.append(v)
    return out


def enumerate_k4_candidates(max_q, bounds=None, include_rejected=False):
    """K4 candidates for every prime power 4 <= q <= max_q, ascending in q."""
    if max_q < 4:
        return []
    out = []
    for q in prime_powers_up_to(max_q, 4):
        cand = k4_order_check(q, bounds)
        if include_rejected or cand.verdict is K4Verdict.ACCEPTED:
            out.append(cand)
    return out


def _prime_gt3(v):
    return v > 3 and is_prime(v)


def _odd_power(w):
    pp = prime_power(w) if w > 1 else None
    return pp if pp is not None and pp[0] > 3 else None


def link_candidate_to_family(c: K4Candidate):
    """Families among (1)-(7) whose equations the parameters of c satisfy."""
    if c.verdict is not K4Verdict.ACCEPTED:
        return []
    links = []
    if c.exponent == 1:
        # q plays the role of p in p^2 - 1 = 2^a 3^b r^c
        a, b, rest = factor_out_2_3(c.q * c.q - 1)
        pp = _odd_power(rest)
        if c.q > 3 and a >= 1 and b >= 1 and pp is not None:
            links.append(FamilyId.F1)
            if pp[1] == 1:
                links.append(FamilyId.F5)
    elif c.base == 2:
        m = c.exponent
        w = 2**m + 1
        if _prime_gt3(2**m - 1) and w % 3 == 0:
            pp = _odd_power(w // 3)
            if pp is not None:
                links.append(FamilyId.F2)
                if pp[1] == 1:
                    links.append(FamilyId.F6)
    elif c.base == 3:
        m = c.exponent
        left, right = (3**m - 1) // 2, (3**m + 1) // 4 if (3**m + 1) % 4 == 0 else 0
        if right:
            pl, pr = _odd_power(left), _odd_power(right)
            if pl is not None and pr is not None:
                if pr[1] == 1:
                    links.append(FamilyId.F3)
                if pl[1] == 1:
                    links.append(FamilyId.F4)
                if pl[1] == 1 and pr[1] == 1:
                    links.append(FamilyId.F7)
    return links
