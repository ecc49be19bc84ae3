"""Prime values of integer linear forms.

Admissibility with certificates, exact simultaneous-prime counts, truncated
Bateman-Horn constants and their predicted counts, prime arithmetic
progressions, and fixed-gap prime pair counts.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

from . import _backend
from .arith import factorize, primes_up_to

MAX_BOX_H = 10**3


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple
    constant: int

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients or all(c == 0 for c in self.coefficients):
            raise ValueError("a linear form needs at least one nonzero coefficient")

    def __call__(self, *x):
        return sum(a * v for a, v in zip(self.coefficients, x)) + self.constant

    @property
    def content(self):
        return reduce(math.gcd, self.coefficients, abs(self.constant))

    def __str__(self):
        names = ("x",) if len(self.coefficients) == 1 else tuple(f"x{i + 1}" for i in range(len(self.coefficients)))
        parts = []
        for a, v in zip(self.coefficients, names):
            if a:
                parts.append(v if a == 1 else f"-{v}" if a == -1 else f"{a}{v}")
        s = "+".join(parts).replace("+-", "-")
        if self.constant:
            s += f"{self.constant:+d}"
        return s


@dataclass(frozen=True)
class LinearSystem:
    forms: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if not self.forms:
            raise ValueError("a linear system needs at least one form")
        n = len(self.forms[0].coefficients)
        if any(len(f.coefficients) != n for f in self.forms):
            raise ValueError("all forms must share the same number of variables")

    @property
    def nvars(self):
        return len(self.forms[0].coefficients)

    @property
    def m(self):
        return len(self.forms)

    def __str__(self):
        body = "{" + ", ".join(str(f) for f in self.forms) + "}"
        return f"{self.name} {body}" if self.name else body

    def as_record(self):
        return {
            "name": self.name,
            "forms": [[*f.coefficients, f.constant] for f in self.forms],
        }


def univariate(name, *pairs):
    """System of forms a*x + b from (a, b) pairs."""
    return LinearSystem(tuple(LinearForm((a,), b) for a, b in pairs), name)


def builtin_systems():
    """The prime-pair systems (26)-(32) plus the twin and Sophie Germain pairs."""
    return [
        univariate("(26)", (1, 0), (3, -2)),
        univariate("(27)", (1, 0), (2, -1)),
        univariate("(28)", (1, 0), (2, 1)),
        univariate("(29)", (1, 0), (4, 1)),
        univariate("(30a)", (1, 0), (4, -1)),
        univariate("(30b)", (1, 0), (8, -1)),
        univariate("(31)", (1, 0), (6, -1)),
        univariate("(32)", (1, 0), (6, 1)),
        univariate("twin", (1, 0), (1, 2)),
        univariate("sophie", (1, 0), (2, 1)),
    ]


def get_system(name):
    for s in builtin_systems():
        if s.name == name:
            return s
    if name == "(30)":
        raise KeyError("(30) has two instances: use (30a) for 4x-1 (a=3) or (30b) for 8x-1 (a=4)")
    raise KeyError(f"no builtin system named {name!r}")


def parse_system(spec, name=None):
    """Parse a builtin alias or "c1,..,cn,b;..." (each form: coefficients then constant)."""
    spec = spec.strip()
    try:
        return get_system(spec)
    except KeyError as exc:
        if spec.startswith("(") or spec.isalpha():
            raise ValueError(str(exc).strip("'\"")) from None
    forms = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            nums = [int(t) for t in chunk.split(",")]
        except ValueError:
            raise ValueError(f"malformed form {chunk!r}: expected integers") from None
        if len(nums) < 2:
            raise ValueError(f"malformed form {chunk!r}: need coefficients and a constant")
        forms.append(LinearForm(tuple(nums[:-1]), nums[-1]))
    if not forms:
        raise ValueError("empty system spec")
    return LinearSystem(tuple(forms), name if name is not None else spec)


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    blocking_prime: Optional[int] = None
    witness: dict = field(default_factory=dict)  # prime -> residue point avoiding every form
    positive_point: Optional[tuple] = None  # a point where every form exceeds 1
    tested_prime_bound: int = 0
    reason: str = ""

    def as_record(self):
        return {
            "admissible": self.admissible,
            "blocking_prime": self.blocking_prime,
            "positive_point": list(self.positive_point) if self.positive_point else None,
            "tested_prime_bound": self.tested_prime_bound,
            "witness": {str(r): list(x) for r, x in sorted(self.witness.items())},
            "reason": self.reason,
        }


def _residue_witness(system, r):
    for point in itertools.product(range(r), repeat=system.nvars):
        if all(f(*point) % r for f in system.forms):
            return point
    return None


def _positive_point(system):
    if system.nvars == 1:
        lo, hi = -math.inf, math.inf
        for f in system.forms:
            (a,), b = f.coefficients, f.constant
            if a > 0:
                lo = max(lo, -((b - 2) // a))  # ceil((2 - b) / a)
            elif a < 0:
                hi = min(hi, (2 - b) // a)  # floor((2 - b) / a), a < 0
        if lo > hi:
            return None
        x = lo if lo != -math.inf else (hi if hi != math.inf else 0)
        return (int(x),) if all(f(int(x)) > 1 for f in system.forms) else None
    radius = 60 if system.nvars == 2 else 12
    for point in itertools.product(range(-radius, radius + 1), repeat=system.nvars):
        if all(f(*point) > 1 for f in system.forms):
            return point
    return None


def is_admissible(system: LinearSystem, prime_bound=100) -> AdmissibilityVerdict:
    """Test every prime r <= max(prime_bound, m), plus the prime divisors of each
    form's content, for a residue point where r divides no form value.

    A prime r > m dividing no content cannot block: each form then vanishes on
    at most r^(n-1) of the r^n residue points, and m < r forms cannot cover them
    all. So the cutoff is complete for linear systems; it is recorded in the verdict.
    """
    if prime_bound < 2:
        raise ValueError("prime_bound must be >= 2")
    bound = max(prime_bound, system.m)
    candidates = set(primes_up_to(bound))
    for f in system.forms:
        if f.content > 1:
            candidates.update(factorize(f.content).primes)
    witness = {}
    for r in sorted(candidates):
        point = _residue_witness(system, r)
        if point is None:
            return AdmissibilityVerdict(False, blocking_prime=r, witness=witness,
                                        tested_prime_bound=bound,
                                        reason=f"{r} divides the product of the forms at every point")
        witness[r] = point
    pos = _positive_point(system)
    if pos is None:
        return AdmissibilityVerdict(False, witness=witness, tested_prime_bound=bound,
                                    reason="no integral point found with every form > 1")
    return AdmissibilityVerdict(True, witness=witness, positive_point=pos, tested_prime_bound=bound)


def blocks_everywhere(system, r):
    """Direct check over a full residue cycle: r | prod f_i(x) for all x mod r."""
    for point in itertools.product(range(r), repeat=system.nvars):
        prod = 1
        for f in system.forms:
            prod = prod * f(*point) % r
        if prod:
            return False
    return True


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def _value_limit_univariate(system, lo, hi):
    return max(max(f(lo), f(hi)) for f in system.forms)


def _chunks(lo, hi, parts):
    size = max(1, -(-(hi - lo + 1) // parts))
    start = lo
    while start <= hi:
        yield start, min(hi, start + size - 1)
        start += size


def _run_chunks(fn, lo, hi, threads):
    if threads <= 1 or hi - lo < 10_000:
        return fn(lo, hi)
    with ThreadPoolExecutor(threads) as pool:
        return sum(pool.map(lambda ab: fn(*ab), _chunks(lo, hi, threads)))


def count_simultaneous_primes(system: LinearSystem, h, threads=1):
    """Points where every form is prime: x in [1, h] (univariate) or [-h, h]^2."""
    if h < 2:
        raise ValueError("h must be >= 2")
    k = _backend.kernels()
    if system.nvars == 1:
        limit = max(2, _value_limit_univariate(system, 1, h))
        flags = k.sieve(limit)
        coeffs = [f.coefficients[0] for f in system.forms]
        consts = [f.constant for f in system.forms]
        return _run_chunks(lambda lo, hi: k.count_univariate(flags, coeffs, consts, lo, hi), 1, h, threads)
    if system.nvars == 2:
        if h > MAX_BOX_H:
            raise ValueError(f"bivariate box counts are limited to h <= {MAX_BOX_H}")
        limit = max(2, max(sum(abs(a) for a in f.coefficients) * h + abs(f.constant) for f in system.forms))
        flags = k.sieve(limit)
        c1 = [f.coefficients[0] for f in system.forms]
        c2 = [f.coefficients[1] for f in system.forms]
        consts = [f.constant for f in system.forms]
        return _run_chunks(lambda lo, hi: k.count_box2(flags, c1, c2, consts, lo, hi, h), -h, h, threads)
    raise ValueError("counting supports one or two variables")


def count_prime_aps(length_m, h):
    """Pairs (x1, x2), x2 >= 1, with x1 + j*x2 (0 <= j < m) all prime and <= h."""
    if length_m < 3:
        raise ValueError("progression length must be >= 3")
    if h < 3:
        raise ValueError("h must be >= 3")
    k = _backend.kernels()
    return k.count_aps(k.sieve(h), length_m, h)


def gap_pair_counts(max_gap, n):
    """{2k: #primes p with p + 2k prime, both <= n} for 2 <= 2k <= max_gap."""
    if max_gap < 2 or max_gap % 2:
        raise ValueError("max_gap must be an even integer >= 2")
    if n < 5:
        raise ValueError("N must be >= 5")
    k = _backend.kernels()
    counts = k.gap_counts(k.sieve(n), n, max_gap)
    return {2 * (i + 1): c for i, c in enumerate(counts)}


# ---------------------------------------------------------------------------
# Bateman-Horn constants and predictions
# ---------------------------------------------------------------------------

class InadmissibleSystem(ValueError):
    def __init__(self, system, verdict):
        super().__init__(f"{system} is not admissible: {verdict.reason}")
        self.verdict = verdict


def _check_constant_preconditions(system):
    if system.nvars != 1:
        raise ValueError("Bateman-Horn constants are computed for univariate systems only")
    if any(f.coefficients[0] <= 0 for f in system.forms):
        raise ValueError("forms need positive leading coefficients")
    verdict = is_admissible(system)
    if not verdict.admissible:
        raise InadmissibleSystem(system, verdict)


def _omega_roots(system, p):
    roots = set()
    for f in system.forms:
        a, b = f.coefficients[0], f.constant
        if a % p:
            roots.add(-b * pow(a, -1, p) % p)
        elif b % p == 0:
            return p
    return len(roots)


def bateman_horn_constant(system: LinearSystem, euler_prime_bound=10**6):
    """Truncated product over p <= bound of (1 - w(p)/p) / (1 - 1/p)^m.

    w(p) is the number of residues mod p at which some form vanishes, counted
    as the size of the union of the forms' roots. Returns (C_F, |last factor - 1|).
    """
    _check_constant_preconditions(system)
    m = system.m
    cf = 1.0
    last = 1.0
    for p in primes_up_to(euler_prime_bound):
        w = _omega_roots(system, p)
        last = (1.0 - w / p) / (1.0 - 1.0 / p) ** m
        cf *= last
    return cf, abs(last - 1.0)


def bateman_horn_constant_resultant(system: LinearSystem, euler_prime_bound=10**6):
    """Second, independent evaluation of the same truncated product.

    w(p) = m unless p divides D = prod a_i * prod_{i<j} (a_i b_j - a_j b_i);
    for those few primes w(p) is counted by enumerating all residues. The
    product is summed in log space with math.fsum.
    """
    _check_constant_preconditions(system)
    forms = [(f.coefficients[0], f.constant) for f in system.forms]
    m = len(forms)
    disc = 1
    for a, _ in forms:
        disc *= a
    for (a1, b1), (a2, b2) in itertools.combinations(forms, 2):
        disc *= a1 * b2 - a2 * b1
    if disc == 0:
        raise ValueError("two forms are proportional; the product is degenerate")
    terms = []
    last = 0.0
    for p in primes_up_to(euler_prime_bound):
        if disc % p:
            w = m
        else:
            w = sum(1 for x in range(p) if any((a * x + b) % p == 0 for a, b in forms))
        last = math.log1p(-w / p) - m * math.log1p(-1.0 / p)
        terms.append(last)
    return math.exp(math.fsum(terms)), abs(math.expm1(last))


def omega_enumerated(system, p):
    """w(p) by direct enumeration of all residue points mod p."""
    return sum(
        1 for x in itertools.product(range(p), repeat=system.nvars)
        if any(f(*x) % p == 0 for f in system.forms)
    )


@dataclass(frozen=True)
class Prediction:
    closed_form: float
    integral: Optional[float]
    used: str

    @property
    def value(self):
        return self.integral if self.used == "integral" else self.closed_form


def log_power_integral(h, m, panels=10_000):
    """Composite Simpson estimate of the integral of 1/log(t)^m over [2, h].

    Integrates e^u / u^m over u = log t, which is smooth where 1/log(t)^m is
    steep near t = 2.
    """
    if panels % 2:
        panels += 1
    lo, hi = math.log(2), math.log(h)
    step = (hi - lo) / panels
    f = lambda u: math.exp(u) * u**-m  # noqa: E731
    odd = math.fsum(f(lo + (2 * i - 1) * step) for i in range(1, panels // 2 + 1))
    even = math.fsum(f(lo + 2 * i * step) for i in range(1, panels // 2))
    return step / 3 * (f(lo) + 4 * odd + 2 * even + f(hi))


def predicted_count(system: LinearSystem, h, cf):
    """C_F h^n / log^m h, and for univariate systems C_F times the log-power integral."""
    if h < 3:
        raise ValueError("h must be >= 3")
    n, m = system.nvars, system.m
    closed = cf * h**n / math.log(h) ** m
    if n == 1:
        return Prediction(closed, cf * log_power_integral(h, m), "integral")
    return Prediction(closed, None, "closed_form")


@dataclass(frozen=True)
class SieveReport:
    system: LinearSystem
    range_h: int
    empirical_count: int
    constant_CF: Optional[float]
    euler_prime_bound: Optional[int]
    predicted_count: Optional[float]
    predicted_closed_form: Optional[float]
    prediction_method: Optional[str]
    ratio: Optional[float]
    label: str = "empirical evidence, not proof"

    def as_record(self):
        return {
            "system": self.system.as_record(),
            "h": self.range_h,
            "empirical_count": self.empirical_count,
            "constant_CF": _round(self.constant_CF),
            "euler_prime_bound": self.euler_prime_bound,
            "predicted_count": _round(self.predicted_count),
            "predicted_closed_form": _round(self.predicted_closed_form),
            "prediction_method": self.prediction_method,
            "ratio": _round(self.ratio),
            "label": self.label,
        }


def _round(v, digits=9):
    return None if v is None else round(v, digits)


def sieve_report(system, h, euler_prime_bound=10**6, threads=1):
    """Empirical count plus, for univariate admissible systems, C_F and the prediction."""
    count = count_simultaneous_primes(system, h, threads)
    cf = pred = closed = method = ratio = None
    bound = None
    if system.nvars == 1 and h >= 3:
        try:
            cf, _ = bateman_horn_constant(system, euler_prime_bound)
        except ValueError:
            cf = None
        else:
            bound = euler_prime_bound
            prediction = predicted_count(system, h, cf)
            pred, closed, method = prediction.value, prediction.closed_form, prediction.used
            ratio = count / pred if pred > 0 else None
    return SieveReport(system, h, count, cf, bound, pred, closed, method, ratio)
