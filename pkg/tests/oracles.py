"""Naive nested-loop oracles for every family, over all variables <= LIMIT.

Written straight from the defining equations, with sympy for primality, so
they share no code with the solvers under test.
"""
from sympy import isprime, primerange

LIMIT = 200

BIG_PRIMES = [p for p in primerange(5, LIMIT + 1)]
ALL_PRIMES = [p for p in primerange(2, LIMIT + 1)]
R = range(1, LIMIT + 1)


def _f1(c_min=1, c_exact=None):
    out = set()
    for p in BIG_PRIMES:
        for q in BIG_PRIMES:
            for a in R:
                if 2**a > p * p:
                    break
                for b in R:
                    if 2**a * 3**b > p * p:
                        break
                    for c in R:
                        rhs = 2**a * 3**b * q**c
                        if rhs > p * p:
                            break
                        if c >= c_min and (c_exact is None or c == c_exact) and rhs == p * p - 1:
                            out.add((p, q, a, b) if c_exact == 1 else (p, q, a, b, c))
    return out


def _two_power_pair(base, left, right, n_on):
    """Tuples (p, q, m, n) with base^m - 1 = left*P, base^m + 1 = right*Q."""
    out = set()
    for p in BIG_PRIMES:
        for q in BIG_PRIMES:
            for m in R:
                # one side is a bare prime <= LIMIT, so base^m <= 4*LIMIT + 1
                if base**m > 4 * LIMIT + 1:
                    break
                for n in R:
                    pp = p**n if n_on == "p" else p
                    qq = q**n if n_on == "q" else q
                    if pp > base**m or qq > base**m:
                        break
                    if base**m - 1 == left * pp and base**m + 1 == right * qq:
                        out.add((p, q, m, n))
    return out


def _pq_m(base, left, right):
    out = set()
    for p in BIG_PRIMES:
        for q in BIG_PRIMES:
            for m in R:
                if base**m > 4 * LIMIT + 1:
                    break
                if base**m - 1 == left * p and base**m + 1 == right * q:
                    out.add((p, q, m))
    return out


def _pqabc(pred, need_c=True):
    """All (p, q, a, b, c) with a >= 3, b >= 1, c >= 2 satisfying pred."""
    out = set()
    for p in BIG_PRIMES:
        for q in BIG_PRIMES:
            for a in range(3, LIMIT + 1):
                if 2 ** (a - 2) > 2 * p:
                    break
                for b in R:
                    if 3**b > 2 * p:
                        break
                    for c in range(2, LIMIT + 1) if need_c else (1,):
                        if q**c > 2 * p:
                            break
                        if pred(p, q, a, b, c):
                            out.add((p, q, a, b, c) if need_c else (p, q, a, b))
    return out


def _branch(sign, three_left):
    def pred(p, q, a, b, c):
        for k in range(1, p + 1):
            if sign + 2 ** (a - 1) + k * 2**a > p:
                break
            if sign + 2 ** (a - 1) + k * 2**a != p:
                continue
            left, right = 2 * k + 1, sign + 2 ** (a - 2) + k * 2 ** (a - 1)
            if three_left:
                return left == 3**b and right == q**c
            return left == q**c and right == 3**b
        return False
    return pred


def _pqa(pred):
    out = set()
    for p in BIG_PRIMES:
        for q in BIG_PRIMES:
            for a in range(3, LIMIT + 1):
                if 2 ** (a - 2) > 4 * p:
                    break
                if pred(p, q, a):
                    out.add((p, q, a))
    return out


def _l2():
    out = set()
    for y in range(2, LIMIT + 1):
        for m in range(3, LIMIT + 1):
            for n in range(2, LIMIT + 1):
                if 2 * y**n > 3**m:
                    break
                if 3**m - 2 * y**n == 1:
                    out.add((y, m, n))
    return out


def _l3():
    out = set()
    for x in ALL_PRIMES:
        for y in ALL_PRIMES:
            xm = x
            for m in range(2, LIMIT + 1):
                xm *= x
                yn = y
                for n in range(2, LIMIT + 1):
                    yn *= y
                    if yn >= xm:
                        break
                    if xm - yn == 1:
                        out.add((x, y, m, n))
    return out


def _l4():
    out = set()
    for x in R:
        for y in range(2, LIMIT + 1):
            for n in range(3, LIMIT + 1):
                if 2 * y**n > x * x + 1:
                    break
                if x * x + 1 == 2 * y**n:
                    out.add((x, y, n))
    return out


def _l5():
    out = set()
    for x in R:
        for y in R:
            for n in range(3, LIMIT + 1, 2):
                if 4 * y**n > 3 * x * x + 1:
                    break
                if 3 * x * x + 1 == 4 * y**n:
                    out.add((x, y, n))
    return out


def _l6():
    out = set()
    for m in range(2, LIMIT + 1):
        for y in range(2, LIMIT + 1):
            for n in range(2, LIMIT + 1):
                if 3 * y**n > 2**m + 1:
                    break
                if 2**m + 1 == 3 * y**n:
                    out.add((m, y, n))
    return out


def _l10even():
    out = set()
    for y in range(2, LIMIT + 1):
        for b in R:
            for c in range(2, LIMIT + 1, 2):
                if 4 * y**c > 3**b + 1:
                    break
                if 3**b + 1 == 4 * y**c:
                    out.add((y, b, c))
    return out


def oracle(tag):
    """The naive solution set for a family tag, as a set of tuples in display order."""
    table = {
        "F1": lambda: _f1(),
        "F5": lambda: _f1(c_exact=1),
        "F2": lambda: _two_power_pair(2, 1, 3, "q"),
        "F3": lambda: _two_power_pair(3, 2, 4, "p"),
        "F4": lambda: _two_power_pair(3, 2, 4, "q"),
        "F6": lambda: _pq_m(2, 1, 3),
        "F7": lambda: _pq_m(3, 2, 4),
        "F18": lambda: _pq_m(2, 1, 3),
        "F19": lambda: _pq_m(3, 2, 4),
        "F8": lambda: _pqabc(_branch(1, True)),
        "F9": lambda: _pqabc(_branch(1, False)),
        "F10": lambda: _pqabc(_branch(-1, True)),
        "F11": lambda: _pqabc(_branch(-1, False)),
        "F12": lambda: _pqabc(lambda p, q, a, b, c: q**c - 1 == 2 ** (a - 2) * 3**b and p == 2 * q**c - 1),
        "F13": lambda: _pqabc(lambda p, q, a, b, c: 3**b - 1 == 2 ** (a - 2) * q**c and p == 2 * 3**b - 1),
        "F14": lambda: _pqabc(lambda p, q, a, b, c: q**c + 1 == 2 ** (a - 2) * 3**b and p == 2 * q**c + 1),
        "F15": lambda: _pqabc(lambda p, q, a, b, c: 3**b + 1 == 2 ** (a - 2) * q**c and p == 2 * 3**b + 1),
        "F16": lambda: _pqabc(lambda p, q, a, b, c: 3**b * q**c == 1 + 2 ** (a - 2) and p == 1 + 2 ** (a - 1)),
        "F17": lambda: _pqabc(lambda p, q, a, b, c: 3**b * q**c == -1 + 2 ** (a - 2) and p == -1 + 2 ** (a - 1)),
        "F20": lambda: _pqabc(lambda p, q, a, b, c: q - 1 == 2 ** (a - 2) * 3**b and p == 2 * q - 1, need_c=False),
        "F21": lambda: _pqabc(lambda p, q, a, b, c: 3**b - 1 == 2 ** (a - 2) * q and p == 2 * 3**b - 1, need_c=False),
        "F22": lambda: _pqabc(lambda p, q, a, b, c: q + 1 == 2 ** (a - 2) * 3**b and p == 2 * q + 1, need_c=False),
        "F23": lambda: _pqabc(lambda p, q, a, b, c: 3**b + 1 == 2 ** (a - 2) * q and p == 2 * 3**b + 1, need_c=False),
        "F24": lambda: _pqa(lambda p, q, a: 3 * q == 1 + 2 ** (a - 2) and p == 1 + 2 ** (a - 1)),
        "F25": lambda: _pqa(lambda p, q, a: 3 * q == -1 + 2 ** (a - 2) and p == -1 + 2 ** (a - 1)),
        "L2": _l2,
        "L3": _l3,
        "L4": _l4,
        "L5": _l5,
        "L6": _l6,
        "L10even": _l10even,
    }
    return table[tag]()


def trial_division_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def brute_force_k4(max_q):
    """Prime powers 4 <= q <= max_q whose order q(q^2-1)/gcd(2,q-1) has four primes incl. 2 and 3."""
    out = []
    for q in range(4, max_q + 1):
        ps = [d for d in range(2, q + 1) if q % d == 0 and trial_division_is_prime(d)]
        if len(ps) != 1:
            continue
        order = q * (q * q - 1) // (2 if q % 2 else 1)
        primes = {d for d in range(2, q + 2) if order % d == 0 and trial_division_is_prime(d)}
        rest = order
        for d in primes:
            while rest % d == 0:
                rest //= d
        if rest > 1:
            primes.add(rest)  # q+1 and q-1 are <= q+1, so rest is 1 or prime
        if len(primes) == 4 and {2, 3} <= primes:
            out.append(q)
    return out
