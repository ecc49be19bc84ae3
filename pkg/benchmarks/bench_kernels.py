"""Time the hot kernels under the compiled and pure-Python backends.

    python3 benchmarks/bench_kernels.py [--scale 1.0] [--repeat 3]
"""
import argparse
import time

from k4dioph import _backend
from k4dioph.arith import primes_up_to


def workloads(scale):
    n = int(2 * 10**6 * scale)
    h = int(10**6 * scale)
    box = max(50, int(300 * scale))
    primes = [p for p in primes_up_to(int(10**6 * scale)) if p > 3]

    def run(k):
        flags = k.sieve(n)
        return {
            f"sieve({n})": lambda: k.sieve(n),
            f"count_univariate twin h={h}": lambda: k.count_univariate(flags, [1, 1], [0, 2], 1, h),
            f"count_box2 h={box}": lambda: k.count_box2(flags, [1, 1], [1, -1], [0, 0], -box, box, box),
            f"count_aps m=3 h={h // 50}": lambda: k.count_aps(flags, 3, h // 50),
            f"gap_counts max_gap=20 N={h}": lambda: k.gap_counts(flags, h, 20),
            f"f1_scan {len(primes)} primes": lambda: k.f1_scan(primes, 2),
        }

    return run


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if "cython" not in _backend.available():
        print("compiled kernels not built; nothing to compare")
        return 1
    run = workloads(args.scale)
    previous = _backend.name()
    times = {}
    for which in ("cython", "python"):
        _backend.set_backend(which)
        for label, fn in run(_backend.kernels()).items():
            times.setdefault(label, {})[which] = best_of(fn, args.repeat)
    _backend.set_backend(previous)

    width = max(len(k) for k in times)
    print(f"{'kernel':<{width}}  {'cython s':>10}  {'python s':>10}  {'speedup':>8}")
    for label, t in times.items():
        print(f"{label:<{width}}  {t['cython']:>10.4f}  {t['python']:>10.4f}  {t['python'] / t['cython']:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
