"""Bounded exhaustive solvers for the K4-related exponential Diophantine families.

Every solver is exhaustive relative to a :class:`SearchBounds` and re-checks
each tuple against the family's defining equations before returning it.
Results are bounded verifications, never proofs.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from . import _backend
from .arith import (
    DEFAULT_BOUNDS,
    SearchBounds,
    factor_out_2_3,
    is_prime,
    power_representations,
    prime_power,
    primes_up_to,
    valuation,
)
from .zsigmondy import Sign, ZsigmondyError, ZsigmondyQuery, primitive_prime_divisor


class EmptySearchSpace(UserWarning):
    """The bounds leave nothing to search for a family."""


class FamilyId(str, Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"
    F6 = "F6"
    F7 = "F7"
    F8 = "F8"
    F9 = "F9"
    F10 = "F10"
    F11 = "F11"
    F12 = "F12"
    F13 = "F13"
    F14 = "F14"
    F15 = "F15"
    F16 = "F16"
    F17 = "F17"
    F18 = "F18"
    F19 = "F19"
    F20 = "F20"
    F21 = "F21"
    F22 = "F22"
    F23 = "F23"
    F24 = "F24"
    F25 = "F25"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    L5 = "L5"
    L6 = "L6"
    L10even = "L10even"

    @classmethod
    def parse(cls, text):
        for member in cls:
            if member.value.lower() == str(text).strip().lower():
                return member
        raise ValueError(f"unknown family tag {text!r}")


LEMMAS = (FamilyId.L2, FamilyId.L3, FamilyId.L4, FamilyId.L5, FamilyId.L6, FamilyId.L10even)

CANONICAL_ORDER = ("p", "q", "a", "b", "c", "m", "n", "x", "y")

_F = FamilyId
_PQABC = ("p", "q", "a", "b", "c")
FIELDS = {
    _F.F1: _PQABC,
    _F.F2: ("p", "q", "m", "n"),
    _F.F3: ("p", "q", "m", "n"),
    _F.F4: ("p", "q", "m", "n"),
    _F.F5: ("p", "q", "a", "b"),
    _F.F6: ("p", "q", "m"),
    _F.F7: ("p", "q", "m"),
    **{f: _PQABC for f in (_F.F8, _F.F9, _F.F10, _F.F11, _F.F12, _F.F13, _F.F14, _F.F15, _F.F16, _F.F17)},
    _F.F18: ("p", "q", "m"),
    _F.F19: ("p", "q", "m"),
    **{f: ("p", "q", "a", "b") for f in (_F.F20, _F.F21, _F.F22, _F.F23)},
    _F.F24: ("p", "q", "a"),
    _F.F25: ("p", "q", "a"),
    _F.L2: ("y", "m", "n"),
    _F.L3: ("x", "y", "m", "n"),
    _F.L4: ("x", "y", "n"),
    _F.L5: ("x", "y", "n"),
    _F.L6: ("m", "y", "n"),
    _F.L10even: ("y", "b", "c"),
}

# Which SearchBounds field caps which variable, per family.
_P_BOUNDED = {"p": "max_p", "q": "max_q", "c": "max_exp"}
RANGES = {
    _F.F1: _P_BOUNDED,
    _F.F5: {"p": "max_p", "q": "max_q"},
    _F.F2: {"m": "max_m", "n": "max_exp"},
    _F.F3: {"m": "max_m", "n": "max_exp"},
    _F.F4: {"m": "max_m", "n": "max_exp"},
    **{f: {"m": "max_m"} for f in (_F.F6, _F.F7, _F.F18, _F.F19)},
    **{f: _P_BOUNDED for f in (_F.F8, _F.F9, _F.F10, _F.F11, _F.F12, _F.F13, _F.F14, _F.F15, _F.F16, _F.F17)},
    **{f: {"p": "max_p", "q": "max_q"} for f in (_F.F20, _F.F21, _F.F22, _F.F23, _F.F24, _F.F25)},
    _F.L2: {"m": "max_m", "n": "max_exp"},
    _F.L3: {"x": "max_base", "y": "max_base", "m": "max_exp", "n": "max_exp"},
    _F.L4: {"x": "max_base", "n": "max_exp"},
    _F.L5: {"x": "max_base", "n": "max_exp"},
    _F.L6: {"m": "max_m", "n": "max_exp"},
    _F.L10even: {"b": "max_m", "c": "max_exp"},
}

DESCRIPTIONS = {
    _F.F1: "p^2-1 = 2^a 3^b q^c",
    _F.F2: "2^m-1 = p, 2^m+1 = 3q^n",
    _F.F3: "3^m-1 = 2p^n, 3^m+1 = 4q",
    _F.F4: "3^m-1 = 2p, 3^m+1 = 4q^n",
    _F.F5: "p^2-1 = 2^a 3^b q",
    _F.F6: "2^m-1 = p, 2^m+1 = 3q",
    _F.F7: "3^m-1 = 2p, 3^m+1 = 4q",
    _F.F8: "2k+1 = 3^b, q^c = 1+2^(a-2)+k 2^(a-1), p = 1+2^(a-1)+k 2^a",
    _F.F9: "2k+1 = q^c, 3^b = 1+2^(a-2)+k 2^(a-1), p = 1+2^(a-1)+k 2^a",
    _F.F10: "2k+1 = 3^b, q^c = -1+2^(a-2)+k 2^(a-1), p = -1+2^(a-1)+k 2^a",
    _F.F11: "2k+1 = q^c, 3^b = -1+2^(a-2)+k 2^(a-1), p = -1+2^(a-1)+k 2^a",
    _F.F12: "q^c-1 = 2^(a-2) 3^b, p = 2q^c-1",
    _F.F13: "3^b-1 = 2^(a-2) q^c, p = 2*3^b-1",
    _F.F14: "q^c+1 = 2^(a-2) 3^b, p = 2q^c+1",
    _F.F15: "3^b+1 = 2^(a-2) q^c, p = 2*3^b+1",
    _F.F16: "3^b q^c = 1+2^(a-2), p = 1+2^(a-1)",
    _F.F17: "3^b q^c = -1+2^(a-2), p = -1+2^(a-1)",
    _F.F18: "2^m-1 = p, 2^m+1 = 3q",
    _F.F19: "3^m-1 = 2p, 3^m+1 = 4q",
    _F.F20: "q-1 = 2^(a-2) 3^b, p = 2q-1",
    _F.F21: "3^b-1 = 2^(a-2) q, p = 2*3^b-1",
    _F.F22: "q+1 = 2^(a-2) 3^b, p = 2q+1",
    _F.F23: "3^b+1 = 2^(a-2) q, p = 2*3^b+1",
    _F.F24: "3q = 1+2^(a-2), p = 1+2^(a-1)",
    _F.F25: "3q = -1+2^(a-2), p = -1+2^(a-1)",
    _F.L2: "3^m - 2y^n = 1, m > 2, y, n >= 2",
    _F.L3: "x^m - y^n = 1, x, y prime, m, n > 1",
    _F.L4: "x^2 + 1 = 2y^n, y > 1, n > 2",
    _F.L5: "3x^2 + 1 = 4y^n, n odd > 1",
    _F.L6: "2^m + 1 = 3y^n, m, y, n > 1",
    _F.L10even: "3^b + 1 = 4y^c, c even >= 2, y > 1",
}


@dataclass(frozen=True)
class EquationSolution:
    family: FamilyId
    p: Optional[int] = None
    q: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    c: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    x: Optional[int] = None
    y: Optional[int] = None
    bounds: Optional[SearchBounds] = field(default=None, compare=False, repr=False)
    case: Optional[str] = field(default=None, compare=False)

    def values(self):
        return tuple(getattr(self, f) for f in FIELDS[self.family])

    def sort_key(self):
        return tuple(getattr(self, f) or 0 for f in CANONICAL_ORDER)

    def as_record(self):
        rec = {"family": self.family.value}
        rec.update({f: getattr(self, f) for f in FIELDS[self.family]})
        if self.case is not None:
            rec["case"] = self.case
        return rec

    @classmethod
    def from_record(cls, rec, bounds=None):
        family = FamilyId.parse(rec["family"])
        kwargs = {f: rec[f] for f in FIELDS[family]}
        return cls(family=family, bounds=bounds, case=rec.get("case"), **kwargs)

    def line(self):
        return " ".join(str(v) for v in self.values())


def in_range(sol: EquationSolution, bounds: SearchBounds):
    """True when every bounded variable of sol is within bounds."""
    return all(getattr(sol, var) <= getattr(bounds, cap) for var, cap in RANGES[sol.family].items())


# ---------------------------------------------------------------------------
# re-substitution checks: the defining equations, written out literally
# ---------------------------------------------------------------------------

def _big_primes(rounds, *values):
    return all(v is not None and v > 3 and is_prime(v, rounds) for v in values)


def _pos(*values):
    return all(v is not None and v >= 1 for v in values)


def _case_guard(s):
    return _pos(s.a, s.b, s.c) and s.a >= 3 and s.c >= 2


def _k(s, sign):
    num = s.p - (sign + 2 ** (s.a - 1))
    if num % 2**s.a:
        return None
    return num // 2**s.a


def _check_case_branch(s, sign, three_is_left):
    k = _k(s, sign)
    if k is None or k < 1:
        return False
    left = 2 * k + 1
    right = sign + 2 ** (s.a - 2) + k * 2 ** (s.a - 1)
    if three_is_left:
        return left == 3**s.b and right == s.q**s.c and s.p == sign + 2 ** (s.a - 1) + k * 2**s.a
    return left == s.q**s.c and right == 3**s.b and s.p == sign + 2 ** (s.a - 1) + k * 2**s.a


_CHECKS: dict = {
    _F.F1: lambda s, r: _pos(s.a, s.b, s.c) and s.p**2 - 1 == 2**s.a * 3**s.b * s.q**s.c,
    _F.F2: lambda s, r: _pos(s.m, s.n) and 2**s.m - 1 == s.p and 2**s.m + 1 == 3 * s.q**s.n,
    _F.F3: lambda s, r: _pos(s.m, s.n) and 3**s.m - 1 == 2 * s.p**s.n and 3**s.m + 1 == 4 * s.q,
    _F.F4: lambda s, r: _pos(s.m, s.n) and 3**s.m - 1 == 2 * s.p and 3**s.m + 1 == 4 * s.q**s.n,
    _F.F5: lambda s, r: _pos(s.a, s.b) and s.p**2 - 1 == 2**s.a * 3**s.b * s.q,
    _F.F6: lambda s, r: _pos(s.m) and 2**s.m - 1 == s.p and 2**s.m + 1 == 3 * s.q,
    _F.F7: lambda s, r: _pos(s.m) and 3**s.m - 1 == 2 * s.p and 3**s.m + 1 == 4 * s.q,
    _F.F8: lambda s, r: _case_guard(s) and _check_case_branch(s, 1, True),
    _F.F9: lambda s, r: _case_guard(s) and _check_case_branch(s, 1, False),
    _F.F10: lambda s, r: _case_guard(s) and _check_case_branch(s, -1, True),
    _F.F11: lambda s, r: _case_guard(s) and _check_case_branch(s, -1, False),
    _F.F12: lambda s, r: _case_guard(s) and s.q**s.c - 1 == 2 ** (s.a - 2) * 3**s.b and s.p == 2 * s.q**s.c - 1,
    _F.F13: lambda s, r: _case_guard(s) and 3**s.b - 1 == 2 ** (s.a - 2) * s.q**s.c and s.p == 2 * 3**s.b - 1,
    _F.F14: lambda s, r: _case_guard(s) and s.q**s.c + 1 == 2 ** (s.a - 2) * 3**s.b and s.p == 2 * s.q**s.c + 1,
    _F.F15: lambda s, r: _case_guard(s) and 3**s.b + 1 == 2 ** (s.a - 2) * s.q**s.c and s.p == 2 * 3**s.b + 1,
    _F.F16: lambda s, r: _case_guard(s) and 3**s.b * s.q**s.c == 1 + 2 ** (s.a - 2) and s.p == 1 + 2 ** (s.a - 1),
    _F.F17: lambda s, r: _case_guard(s) and 3**s.b * s.q**s.c == -1 + 2 ** (s.a - 2) and s.p == -1 + 2 ** (s.a - 1),
    _F.F18: lambda s, r: _pos(s.m) and 2**s.m - 1 == s.p and 2**s.m + 1 == 3 * s.q,
    _F.F19: lambda s, r: _pos(s.m) and 3**s.m - 1 == 2 * s.p and 3**s.m + 1 == 4 * s.q,
    _F.F20: lambda s, r: _pos(s.a, s.b) and s.a >= 3 and s.q - 1 == 2 ** (s.a - 2) * 3**s.b and s.p == 2 * s.q - 1,
    _F.F21: lambda s, r: _pos(s.a, s.b) and s.a >= 3 and 3**s.b - 1 == 2 ** (s.a - 2) * s.q and s.p == 2 * 3**s.b - 1,
    _F.F22: lambda s, r: _pos(s.a, s.b) and s.a >= 3 and s.q + 1 == 2 ** (s.a - 2) * 3**s.b and s.p == 2 * s.q + 1,
    _F.F23: lambda s, r: _pos(s.a, s.b) and s.a >= 3 and 3**s.b + 1 == 2 ** (s.a - 2) * s.q and s.p == 2 * 3**s.b + 1,
    _F.F24: lambda s, r: _pos(s.a) and s.a >= 3 and 3 * s.q == 1 + 2 ** (s.a - 2) and s.p == 1 + 2 ** (s.a - 1),
    _F.F25: lambda s, r: _pos(s.a) and s.a >= 3 and 3 * s.q == -1 + 2 ** (s.a - 2) and s.p == -1 + 2 ** (s.a - 1),
    _F.L2: lambda s, r: s.m > 2 and s.y >= 2 and s.n >= 2 and 3**s.m - 2 * s.y**s.n == 1,
    _F.L3: lambda s, r: s.m > 1 and s.n > 1 and is_prime(s.x, r) and is_prime(s.y, r) and s.x**s.m - s.y**s.n == 1,
    _F.L4: lambda s, r: s.x >= 1 and s.y > 1 and s.n > 2 and s.x**2 + 1 == 2 * s.y**s.n,
    _F.L5: lambda s, r: s.x >= 1 and s.y >= 1 and s.n > 1 and s.n % 2 == 1 and 3 * s.x**2 + 1 == 4 * s.y**s.n,
    _F.L6: lambda s, r: s.m > 1 and s.y > 1 and s.n > 1 and 2**s.m + 1 == 3 * s.y**s.n,
    _F.L10even: lambda s, r: s.b >= 1 and s.y > 1 and s.c >= 2 and s.c % 2 == 0 and 3**s.b + 1 == 4 * s.y**s.c,
}


def satisfies(sol: EquationSolution, rounds=64):
    """Re-substitute sol into its family's equations and side conditions."""
    if sol.family not in LEMMAS and not _big_primes(rounds, sol.p, sol.q):
        return False
    if any(getattr(sol, f) is None for f in FIELDS[sol.family]):
        return False
    return bool(_CHECKS[sol.family](sol, rounds))


# ---------------------------------------------------------------------------
# solvers
# ---------------------------------------------------------------------------

def _odd_prime_power(w, bounds, min_c=1, cap_q=True):
    """(q, c) when w = q**c, q prime > 3, min_c <= c <= max_exp (and q <= max_q if cap_q)."""
    pp = prime_power(w, bounds.mr_rounds)
    if pp is None:
        return None
    q, c = pp
    if q <= 3 or c < min_c or c > bounds.max_exp or (cap_q and q > bounds.max_q):
        return None
    return pp


def _prime_gt3(v, bounds):
    return v > 3 and is_prime(v, bounds.mr_rounds)


def _solve_f1(bounds, min_c, exact_c=None):
    out = []
    if bounds.max_p < 5:
        return out
    scan = _backend.kernels().f1_scan
    primes = [p for p in primes_up_to(bounds.max_p) if p > 3]
    if _backend.name() == "cython" and bounds.max_p >= 1 << 32:
        scan = _backend._pykernels.f1_scan
    for p, a, b, m in scan(primes, min_c):
        pp = _odd_prime_power(m, bounds, min_c)
        if pp is None:
            continue
        q, c = pp
        if exact_c is not None and c != exact_c:
            continue
        if exact_c == 1:
            out.append(EquationSolution(_F.F5, p=p, q=q, a=a, b=b))
        else:
            out.append(EquationSolution(_F.F1, p=p, q=q, a=a, b=b, c=c))
    return out


def _solve_pow2_pair(family, bounds, min_n, fixed_n=None):
    # 2^m - 1 = p, 2^m + 1 = 3 q^n
    out = []
    for m in range(1, bounds.max_m + 1):
        w = 2**m + 1
        if w % 3:
            continue
        pp = _odd_prime_power(w // 3, bounds, min_n, cap_q=False)
        if pp is None or (fixed_n is not None and pp[1] != fixed_n):
            continue
        p = 2**m - 1
        if not _prime_gt3(p, bounds):
            continue
        q, n = pp
        if fixed_n is None:
            out.append(EquationSolution(family, p=p, q=q, m=m, n=n))
        else:
            out.append(EquationSolution(family, p=p, q=q, m=m))
    return out


def _solve_pow3_pair(family, bounds, min_n, power_on):
    # 3^m - 1 = 2 p^n, 3^m + 1 = 4 q^n ; power_on in {"p", "q", None}
    # exponent-driven: m and n are bounded, p and q are derived
    out = []
    for m in range(1, bounds.max_m + 1):
        lo, hi = 3**m - 1, 3**m + 1
        if hi % 4:
            continue
        left, right = lo // 2, hi // 4
        if power_on == "p":
            pp = _odd_prime_power(left, bounds, min_n, cap_q=False)
            if pp is None or not _prime_gt3(right, bounds):
                continue
            out.append(EquationSolution(family, p=pp[0], q=right, m=m, n=pp[1]))
        elif power_on == "q":
            pp = _odd_prime_power(right, bounds, min_n, cap_q=False)
            if pp is None or not _prime_gt3(left, bounds):
                continue
            out.append(EquationSolution(family, p=left, q=pp[0], m=m, n=pp[1]))
        else:
            if _prime_gt3(left, bounds) and _prime_gt3(right, bounds):
                out.append(EquationSolution(family, p=left, q=right, m=m))
    return out


def _a_range(bounds, p_of_a):
    """a = 3, 4, ... while p_of_a(a) <= max_p."""
    a = 3
    while p_of_a(a) <= bounds.max_p:
        yield a
        a += 1


def _solve_case_three_left(family, bounds, sign):
    # systems (8)/(10): 2k+1 = 3^b, q^c = sign + 2^(a-2) + k 2^(a-1)
    out = []
    for a in _a_range(bounds, lambda a: sign + 2 ** (a - 1) + 2**a):
        b = 1
        while True:
            k = (3**b - 1) // 2
            p = sign + 2 ** (a - 1) + k * 2**a
            if p > bounds.max_p:
                break
            v = sign + 2 ** (a - 2) + k * 2 ** (a - 1)
            pp = _odd_prime_power(v, bounds, 2)
            if pp is not None and _prime_gt3(p, bounds):
                out.append(EquationSolution(family, p=p, q=pp[0], a=a, b=b, c=pp[1]))
            b += 1
    return out


def _solve_case_three_right(family, bounds, sign):
    # systems (9)/(11): 2k+1 = q^c, 3^b = sign + 2^(a-2) + k 2^(a-1); here p = 2*3^b - sign
    out = []
    for a in _a_range(bounds, lambda a: sign + 2 ** (a - 1) + 2**a):
        b = 1
        while 2 * 3**b - sign <= bounds.max_p:
            num = 3**b - sign - 2 ** (a - 2)
            if num >= 2 ** (a - 1) and num % 2 ** (a - 1) == 0:
                k = num // 2 ** (a - 1)
                p = sign + 2 ** (a - 1) + k * 2**a
                pp = _odd_prime_power(2 * k + 1, bounds, 2)
                if pp is not None and _prime_gt3(p, bounds):
                    out.append(EquationSolution(family, p=p, q=pp[0], a=a, b=b, c=pp[1]))
            b += 1
    return out


def _solve_qc_pm1(family, bounds, sign, min_c, c_exact=None):
    # q^c - sign = 2^(a-2) 3^b, p = 2 q^c - sign   (systems (12)/(14), (20)/(22))
    out = []
    a = 3
    while 2 * (2 ** (a - 2) * 3 + sign) - sign <= bounds.max_p:
        b = 1
        while True:
            t = 2 ** (a - 2) * 3**b
            qc = t + sign
            p = 2 * qc - sign
            if p > bounds.max_p:
                break
            pp = _odd_prime_power(qc, bounds, min_c)
            if pp is not None and (c_exact is None or pp[1] == c_exact) and _prime_gt3(p, bounds):
                q, c = pp
                if c_exact is None:
                    out.append(EquationSolution(family, p=p, q=q, a=a, b=b, c=c))
                else:
                    out.append(EquationSolution(family, p=p, q=q, a=a, b=b))
            b += 1
        a += 1
    return out


def _solve_3b_pm1(family, bounds, sign, min_c, c_exact=None):
    # 3^b + sign = 2^(a-2) q^c, p = 2*3^b + sign   (systems (13)/(15), (21)/(23))
    out = []
    b = 1
    while 2 * 3**b + sign <= bounds.max_p:
        w = 3**b + sign
        e = valuation(w, 2)
        a = e + 2
        p = 2 * 3**b + sign
        pp = _odd_prime_power(w >> e, bounds, min_c) if a >= 3 and (w >> e) > 1 else None
        if pp is not None and (c_exact is None or pp[1] == c_exact) and _prime_gt3(p, bounds):
            q, c = pp
            if c_exact is None:
                out.append(EquationSolution(family, p=p, q=q, a=a, b=b, c=c))
            else:
                out.append(EquationSolution(family, p=p, q=q, a=a, b=b))
        b += 1
    return out


def k_zero_tuples(bounds, sign, min_c=2):
    """(a, b, q, c, p) with 3^b q^c = sign + 2^(a-2), ignoring whether p is prime."""
    out = []
    for a in _a_range(bounds, lambda a: sign + 2 ** (a - 1)):
        w = sign + 2 ** (a - 2)
        if w < 3:
            continue
        _, b, rest = factor_out_2_3(w)
        if b < 1 or rest == 1:
            continue
        pp = _odd_prime_power(rest, bounds, min_c)
        if pp is not None:
            out.append((a, b, pp[0], pp[1], sign + 2 ** (a - 1)))
    return out


def _solve_k_zero(family, bounds, sign):
    return [
        EquationSolution(family, p=p, q=q, a=a, b=b, c=c)
        for a, b, q, c, p in k_zero_tuples(bounds, sign)
        if _prime_gt3(p, bounds)
    ]


def _solve_3q(family, bounds, sign):
    # 3q = sign + 2^(a-2), p = sign + 2^(a-1)
    out = []
    for a in _a_range(bounds, lambda a: sign + 2 ** (a - 1)):
        w = sign + 2 ** (a - 2)
        if w % 3:
            continue
        q, p = w // 3, sign + 2 ** (a - 1)
        if q <= bounds.max_q and _prime_gt3(q, bounds) and _prime_gt3(p, bounds):
            out.append(EquationSolution(family, p=p, q=q, a=a))
    return out


# lemma solvers ---------------------------------------------------------------

def _lemma2(bounds):
    out = []
    for m in range(3, bounds.max_m + 1):
        for y, n in power_representations((3**m - 1) // 2):
            if n <= bounds.max_exp:
                out.append(EquationSolution(_F.L2, y=y, m=m, n=n))
    return out


def _lemma3(bounds):
    # x^m - y^n = 1 with x, y prime: parity forces x = 2 or y = 2
    out = []
    cap, top = bounds.max_base, bounds.max_exp
    if cap < 2:
        return out
    for n in range(2, top + 1):  # y = 2, x^m = 2^n + 1
        for x, m in power_representations(2**n + 1):
            if m <= top and x <= cap and is_prime(x, bounds.mr_rounds):
                out.append(EquationSolution(_F.L3, x=x, y=2, m=m, n=n))
    for m in range(2, top + 1):  # x = 2, y^n = 2^m - 1
        for y, n in power_representations(2**m - 1):
            if n <= top and y <= cap and is_prime(y, bounds.mr_rounds):
                out.append(EquationSolution(_F.L3, x=2, y=y, m=m, n=n))
    return out


def _lemma4(bounds):
    # iterate (n, y) with 2y^n - 1 <= max_base^2, test for a square
    from math import isqrt

    out = []
    limit = bounds.max_base**2 + 1
    for n in range(3, bounds.max_exp + 1):
        y = 2
        while 2 * y**n <= limit:
            s = 2 * y**n - 1
            x = isqrt(s)
            if x * x == s and 1 <= x <= bounds.max_base:
                out.append(EquationSolution(_F.L4, x=x, y=y, n=n))
            y += 1
    return out


def _lemma5(bounds):
    from math import isqrt

    out = []
    limit = 3 * bounds.max_base**2 + 1
    for n in range(3, bounds.max_exp + 1, 2):
        y = 1
        while 4 * y**n <= limit:
            s = 4 * y**n - 1
            if s % 3 == 0:
                t = s // 3
                x = isqrt(t)
                if x * x == t and 1 <= x <= bounds.max_base:
                    out.append(EquationSolution(_F.L5, x=x, y=y, n=n))
            y += 1
    return out


def _lemma6(bounds):
    out = []
    for m in range(2, bounds.max_m + 1):
        w = 2**m + 1
        if w % 3:
            continue
        for y, n in power_representations(w // 3):
            if n <= bounds.max_exp:
                out.append(EquationSolution(_F.L6, m=m, y=y, n=n))
    return out


def _lemma10_even(bounds):
    out = []
    for b in range(1, bounds.max_m + 1):
        w = 3**b + 1
        if w % 4:
            continue
        for y, c in power_representations(w // 4):
            if c % 2 == 0 and c <= bounds.max_exp:
                out.append(EquationSolution(_F.L10even, y=y, b=b, c=c))
    return out


_LEMMA_SOLVERS = {
    _F.L2: _lemma2,
    _F.L3: _lemma3,
    _F.L4: _lemma4,
    _F.L5: _lemma5,
    _F.L6: _lemma6,
    _F.L10even: _lemma10_even,
}


def _dispatch(family, bounds, min_exp):
    if family is _F.F1:
        return _solve_f1(bounds, min_exp)
    if family is _F.F5:
        return _solve_f1(bounds, 1, exact_c=1)
    if family is _F.F2:
        return _solve_pow2_pair(family, bounds, min_exp)
    if family in (_F.F6, _F.F18):
        return _solve_pow2_pair(family, bounds, 1, fixed_n=1)
    if family is _F.F3:
        return _solve_pow3_pair(family, bounds, min_exp, "p")
    if family is _F.F4:
        return _solve_pow3_pair(family, bounds, min_exp, "q")
    if family in (_F.F7, _F.F19):
        return _solve_pow3_pair(family, bounds, 1, None)
    if family is _F.F8:
        return _solve_case_three_left(family, bounds, 1)
    if family is _F.F9:
        return _solve_case_three_right(family, bounds, 1)
    if family is _F.F10:
        return _solve_case_three_left(family, bounds, -1)
    if family is _F.F11:
        return _solve_case_three_right(family, bounds, -1)
    if family is _F.F12:
        return _solve_qc_pm1(family, bounds, 1, 2)
    if family is _F.F13:
        return _solve_3b_pm1(family, bounds, -1, 2)
    if family is _F.F14:
        return _solve_qc_pm1(family, bounds, -1, 2)
    if family is _F.F15:
        return _solve_3b_pm1(family, bounds, 1, 2)
    if family is _F.F16:
        return _solve_k_zero(family, bounds, 1)
    if family is _F.F17:
        return _solve_k_zero(family, bounds, -1)
    if family is _F.F20:
        return _solve_qc_pm1(family, bounds, 1, 1, c_exact=1)
    if family is _F.F21:
        return _solve_3b_pm1(family, bounds, -1, 1, c_exact=1)
    if family is _F.F22:
        return _solve_qc_pm1(family, bounds, -1, 1, c_exact=1)
    if family is _F.F23:
        return _solve_3b_pm1(family, bounds, 1, 1, c_exact=1)
    if family is _F.F24:
        return _solve_3q(family, bounds, 1)
    if family is _F.F25:
        return _solve_3q(family, bounds, -1)
    return _LEMMA_SOLVERS[family](bounds)


_MIN_P = 5


def _search_space_empty(family, bounds, min_exp):
    ranges = RANGES[family]
    if "p" in ranges and bounds.max_p < _MIN_P:
        return f"max_p={bounds.max_p} < {_MIN_P}"
    needs_c = family in (_F.F8, _F.F9, _F.F10, _F.F11, _F.F12, _F.F13, _F.F14, _F.F15, _F.F16, _F.F17)
    if needs_c and bounds.max_exp < 2:
        return "family requires c >= 2 but max_exp < 2"
    if family in (_F.F1, _F.F2, _F.F3, _F.F4) and min_exp > bounds.max_exp:
        return f"min exponent {min_exp} exceeds max_exp={bounds.max_exp}"
    return None


def solve_family(family, bounds=None, min_exp=1):
    """All solutions of a family within bounds, in canonical order.

    ``min_exp`` is the lower limit on the free exponent: c for F1, n for F2-F4
    (the "c > 1" / "n > 1" variants use ``min_exp=2``). Other families
    ignore it.
    """
    bounds = bounds or DEFAULT_BOUNDS
    family = FamilyId.parse(family) if not isinstance(family, FamilyId) else family
    if min_exp < 1:
        raise ValueError("min_exp must be >= 1")
    reason = _search_space_empty(family, bounds, min_exp)
    if reason is not None:
        warnings.warn(f"{family.value}: empty search space ({reason})", EmptySearchSpace, stacklevel=2)
        return []
    found = _dispatch(family, bounds, min_exp)
    out = []
    for sol in found:
        sol = _with_bounds(sol, bounds)
        if not satisfies(sol, bounds.mr_rounds) or not in_range(sol, bounds):
            raise RuntimeError(f"solver produced an invalid tuple: {sol}")
        out.append(sol)
    return sorted(set(out), key=EquationSolution.sort_key)


def _with_bounds(sol, bounds):
    return EquationSolution(**{**{f: getattr(sol, f) for f in ("family", *CANONICAL_ORDER, "case")}, "bounds": bounds})


def verify_lemma(lemma, bounds=None):
    """All in-bounds solutions of a lemma's equation under its side conditions."""
    lemma = FamilyId.parse(lemma) if not isinstance(lemma, FamilyId) else lemma
    if lemma not in LEMMAS:
        raise ValueError(f"{lemma.value} is not a lemma tag; expected one of {[l.value for l in LEMMAS]}")
    return solve_family(lemma, bounds)


# Solution sets claimed in the literature, filtered to bounds by `expected_in_range`.
LEMMA_CLAIMS = {
    _F.L2: [EquationSolution(_F.L2, y=11, m=5, n=2)],
    _F.L3: [EquationSolution(_F.L3, x=3, y=2, m=2, n=3)],
    _F.L4: [EquationSolution(_F.L4, x=239, y=13, n=4)],
    _F.L6: [],
    _F.L10even: [],
}
THEOREM1_SOLUTIONS = (
    EquationSolution(_F.F1, p=97, q=7, a=6, b=1, c=2),
    EquationSolution(_F.F1, p=577, q=17, a=7, b=2, c=2),
)
EXPONENTIAL_CLAIMS = {
    _F.F2: [],
    _F.F3: [EquationSolution(_F.F3, p=11, q=61, m=5, n=2)],
    _F.F4: [],
}


def expected_in_range(family, bounds):
    """The claimed solution set of a lemma or family, restricted to bounds."""
    if family is _F.L5:
        return [EquationSolution(_F.L5, x=1, y=1, n=n) for n in range(3, bounds.max_exp + 1, 2) if bounds.max_base >= 1]
    if family is _F.F1:
        claims = THEOREM1_SOLUTIONS
    elif family in EXPONENTIAL_CLAIMS:
        claims = EXPONENTIAL_CLAIMS[family]
    else:
        claims = LEMMA_CLAIMS[family]
    return sorted((s for s in claims if in_range(s, bounds)), key=EquationSolution.sort_key)


# ---------------------------------------------------------------------------
# the residue-branch route for F1 with c >= 2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseClassification:
    p: int
    a: int
    branch: int  # +1 or -1: p = branch + 2^(a-1) (mod 2^a)
    k: int
    system: Optional[str]  # "(8)".."(11)", "k_zero_16", "k_zero_17", or None
    rewritten: Optional[str]  # "(12)".."(17)" or None


_REWRITE = {"(8)": "(12)", "(9)": "(13)", "(10)": "(14)", "(11)": "(15)", "k_zero_16": "(16)", "k_zero_17": "(17)"}


def _is_power_of_three(v):
    if v < 3:
        return False
    while v % 3 == 0:
        v //= 3
    return v == 1


def classify_case_system(p, a):
    """Locate p in the residue branches +-1 + 2^(a-1) (mod 2^a) and name its case system.

    The case id for k > 0 depends on which of the two coprime odd cofactors
    (2k+1 and the other) is a power of 3; when neither is, ``system`` is None.
    """
    if p % 2 == 0 or (p * p - 1) % 8:
        raise ValueError(f"{p}^2 is not 1 mod 8")
    if a < 3:
        raise ValueError("a must be >= 3")
    if valuation(p * p - 1, 2) != a:
        raise ValueError(f"2^{a} is not the exact power of 2 in {p}^2 - 1")
    mod = 1 << a
    r = p % mod
    half = 1 << (a - 1)
    if r == 1 + half:
        branch = 1
    elif r == half - 1:
        branch = -1
    else:  # unreachable when 2^a exactly divides p^2 - 1
        raise ValueError(f"{p} mod 2^{a} = {r} is not on a +-1 + 2^(a-1) branch")
    k = (p - (branch + half)) // mod
    if k == 0:
        system = "k_zero_16" if branch == 1 else "k_zero_17"
    else:
        u = 2 * k + 1
        v = branch + (half >> 1) + k * half
        if _is_power_of_three(u):
            system = "(8)" if branch == 1 else "(10)"
        elif _is_power_of_three(v):
            system = "(9)" if branch == 1 else "(11)"
        else:
            system = None
    return CaseClassification(p, a, branch, k, system, _REWRITE.get(system))


def solve_family1_structured(bounds=None, min_c=2):
    """F1 with c >= min_c (>= 2), enumerated through the residue branches.

    Every odd p > 3 sits on exactly one branch p = +-1 + 2^(a-1) + k 2^a with
    2^a the exact power of 2 in p^2 - 1; there p^2 - 1 = 2^a u v with
    u = 2k + 1 and v = +-1 + 2^(a-2) + k 2^(a-1) coprime and odd. So 3^b q^c
    splits as (u, v) = (3^b, q^c), (q^c, 3^b) or, when k = 0, v = 3^b q^c.
    Each split is searched directly; each solution carries its case tag.
    """
    bounds = bounds or DEFAULT_BOUNDS
    if min_c < 2:
        raise ValueError("the residue-branch route covers c >= 2 only")
    if bounds.max_p < _MIN_P or bounds.max_exp < min_c:
        return []
    found = []
    branches = (
        (1, (_F.F8, "(8)"), (_F.F9, "(9)"), "k_zero_16"),
        (-1, (_F.F10, "(10)"), (_F.F11, "(11)"), "k_zero_17"),
    )
    for sign, (three_left, sys_left), (three_right, sys_right), sys_zero in branches:
        for s in _solve_case_three_left(three_left, bounds, sign):
            found.append((s, sys_left))
        for s in _solve_case_three_right(three_right, bounds, sign):
            found.append((s, sys_right))
        for a, b, q, c, p in k_zero_tuples(bounds, sign, min_c):
            if _prime_gt3(p, bounds):
                found.append((EquationSolution(_F.F1, p=p, q=q, a=a, b=b, c=c), sys_zero))
    out = []
    for s, system in found:
        if s.c < min_c:
            continue
        sol = EquationSolution(
            _F.F1, p=s.p, q=s.q, a=s.a, b=s.b, c=s.c, bounds=bounds,
            case=f"{system}->{_REWRITE[system]}",
        )
        if not satisfies(sol, bounds.mr_rounds) or not in_range(sol, bounds):
            raise RuntimeError(f"structured route produced an invalid tuple: {sol}")
        out.append(sol)
    return sorted(set(out), key=EquationSolution.sort_key)


# ---------------------------------------------------------------------------
# Theorem 1 pipeline
# ---------------------------------------------------------------------------

@dataclass
class Verdict:
    name: str
    status: str  # "pass", "fail" or "warn"
    detail: str = ""

    def as_record(self):
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Theorem1Report:
    bounds: SearchBounds
    direct: list
    structured: list
    expected: list
    verdicts: list
    warnings: list = field(default_factory=list)
    label: str = "bounded verification"

    @property
    def passed(self):
        return all(v.status != "fail" for v in self.verdicts)

    @property
    def solutions(self):
        return self.direct


def _fmt(sols):
    return "[" + ", ".join("(" + ",".join(map(str, s.values())) + ")" for s in sols) + "]"


def _check_system14(bounds, warns):
    """Each in-range q^c + 1 (c >= 2) has a primitive prime divisor outside {2, 3}."""
    checked = 0
    limit = (bounds.max_p - 1) // 2
    bad = []
    for q in primes_up_to(max(2, min(bounds.max_q, int(limit**0.5) + 1))):
        if q <= 3:
            continue
        c = 2
        while q**c <= limit and c <= bounds.max_exp:
            try:
                res = primitive_prime_divisor(ZsigmondyQuery(q, 1, c, Sign.PLUS), bounds)
            except ZsigmondyError as exc:
                warns.append(str(exc))
            else:
                checked += 1
                if res.primitive_divisor in (None, 2, 3):
                    bad.append((q, c))
            c += 1
    return checked, bad


def verify_theorem1(bounds=None, extra_solutions=()):
    """Check Theorem 1 inside bounds by two independent routes plus its case analysis.

    ``extra_solutions`` injects tuples into the direct route; it exists only as
    a negative control and makes the report fail.
    """
    bounds = bounds or DEFAULT_BOUNDS
    warns = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptySearchSpace)
        direct = solve_family(_F.F1, bounds, min_exp=2)
        fams = {f: solve_family(f, bounds) for f in (_F.F12, _F.F13, _F.F14, _F.F15, _F.F16, _F.F17)}
    direct = sorted(set(direct) | set(extra_solutions), key=EquationSolution.sort_key)
    structured = solve_family1_structured(bounds)
    expected = expected_in_range(_F.F1, bounds)
    verdicts = []

    def add(name, ok, detail):
        verdicts.append(Verdict(name, "pass" if ok else "fail", detail))

    invalid = [s for s in direct if not satisfies(s, bounds.mr_rounds)]
    add("Theorem 1: every tuple re-substitutes", not invalid,
        "all exact" if not invalid else f"invalid tuples {_fmt(invalid)}")
    dv = {s.values() for s in direct}
    sv = {s.values() for s in structured}
    add("Theorem 1: direct and structured routes agree", dv == sv,
        f"direct {_fmt(direct)}; structured {_fmt(structured)}")
    missing = [s for s in expected if s.values() not in dv]
    add("Theorem 1: claimed tuples found", not missing,
        f"{len(expected)} of {len(THEOREM1_SOLUTIONS)} Theorem 1 solutions in range"
        + (f"; missing {_fmt(missing)}" if missing else ""))
    others = [s for s in direct if s.values() not in {e.values() for e in expected}]
    add(f"Theorem 1: exactly {len(expected)} solutions", not others,
        f"found {len(direct)}" + (f"; unexpected {_fmt(others)}" if others else ""))
    tags = sorted({s.case for s in structured})
    add("system (12) carries every solution", {s.values() for s in fams[_F.F12]} == sv,
        f"(12) solutions {_fmt(fams[_F.F12])}; structured tags {tags}")

    checked, bad = _check_system14(bounds, warns)
    add("system (14): q^c+1 has a primitive divisor outside {2,3}", not bad and not fams[_F.F14],
        f"{checked} (q, c) pairs checked; (14) solutions {_fmt(fams[_F.F14])}"
        + (f"; lacking {bad}" if bad else ""))

    near13 = _near_misses_13(bounds)
    add("system (13): no solutions", not fams[_F.F13],
        f"{len(near13)} first-equation tuples with composite p {near13}")
    add("system (15): no solutions", not fams[_F.F15], f"(15) solutions {_fmt(fams[_F.F15])}")
    kz = k_zero_tuples(bounds, 1) + k_zero_tuples(bounds, -1)
    b_ok = all(t[1] == 1 for t in kz)
    add("systems (16)/(17): b = 1 forced and no solutions", b_ok and not fams[_F.F16] and not fams[_F.F17],
        f"{len(kz)} tuples satisfy 3^b q^c = 2^(a-2) +- 1 in range"
        + ("" if b_ok else f"; b != 1 in {kz}"))
    for w in warns:
        verdicts.append(Verdict("factorization uncertainty", "warn", w))
    return Theorem1Report(bounds, direct, structured, expected, verdicts, warns)


def _near_misses_13(bounds):
    """(b, q, c, p) with 3^b - 1 = 2^(a-2) q^c in range but p = 2*3^b - 1 composite."""
    out = []
    b = 1
    while 2 * 3**b - 1 <= bounds.max_p:
        w = 3**b - 1
        e = valuation(w, 2)
        pp = _odd_prime_power(w >> e, bounds, 2) if (w >> e) > 1 else None
        if pp is not None and e + 2 >= 3:
            p = 2 * 3**b - 1
            if not _prime_gt3(p, bounds):
                out.append((b, pp[0], pp[1], p))
        b += 1
    return out


__all__ = [
    "CaseClassification",
    "EmptySearchSpace",
    "EquationSolution",
    "FamilyId",
    "Theorem1Report",
    "Verdict",
    "classify_case_system",
    "expected_in_range",
    "in_range",
    "satisfies",
    "solve_family",
    "solve_family1_structured",
    "verify_lemma",
    "verify_theorem1",
]
