import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k4dioph import _backend, _pykernels
from k4dioph.arith import SearchBounds, primes_up_to
from k4dioph.dickson import builtin_systems, count_simultaneous_primes, gap_pair_counts, count_prime_aps
from k4dioph.equations import FamilyId, solve_family

compiled = pytest.mark.skipif("cython" not in _backend.available(), reason="compiled kernels not built")


@pytest.fixture
def restore_backend():
    previous = _backend.name()
    yield
    _backend.set_backend(previous)


def test_backend_selection(restore_backend):
    assert _backend.name() in _backend.available()
    _backend.set_backend("python")
    assert _backend.kernels() is _pykernels and _backend.name() == "python"
    _backend.set_backend("auto")
    assert _backend.name() == _backend.available()[0]
    with pytest.raises(ValueError):
        _backend.set_backend("fortran")


@compiled
def test_sieve_parity():
    from k4dioph import _kernels

    for n in (0, 1, 2, 3, 10, 97, 10**5 + 3):
        assert bytes(_kernels.sieve(n)) == bytes(_pykernels.sieve(n))


@compiled
@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-9, 9).filter(bool), st.integers(-50, 50)), min_size=1, max_size=3),
    st.integers(-200, 200), st.integers(0, 400),
)
def test_count_univariate_parity(forms, lo, width):
    from k4dioph import _kernels

    flags = _pykernels.sieve(20_000)
    coeffs, consts = [a for a, _ in forms], [b for _, b in forms]
    hi = lo + width
    assert _kernels.count_univariate(flags, coeffs, consts, lo, hi) == _pykernels.count_univariate(flags, coeffs, consts, lo, hi)


@compiled
def test_box_aps_gaps_parity():
    from k4dioph import _kernels

    flags = _pykernels.sieve(5000)
    args = (flags, [1, 1], [1, -1], [0, 0], -40, 40, 40)
    assert _kernels.count_box2(*args) == _pykernels.count_box2(*args)
    for m in (3, 4, 5):
        assert _kernels.count_aps(flags, m, 5000) == _pykernels.count_aps(flags, m, 5000)
    assert list(_kernels.gap_counts(flags, 5000, 20)) == list(_pykernels.gap_counts(flags, 5000, 20))


@compiled
def test_f1_scan_parity():
    from k4dioph import _kernels

    primes = [p for p in primes_up_to(2 * 10**5) if p > 3]
    for min_c in (1, 2):
        assert list(_kernels.f1_scan(primes, min_c)) == _pykernels.f1_scan(primes, min_c)
    with pytest.raises(OverflowError):
        _kernels.f1_scan([2**32 + 15], 1)


@compiled
def test_public_results_identical_under_both_backends(restore_backend):
    bounds = SearchBounds(max_p=10**5, max_m=40)
    results = {}
    for which in ("cython", "python"):
        _backend.set_backend(which)
        results[which] = (
            [s.values() for s in solve_family(FamilyId.F1, bounds)],
            [count_simultaneous_primes(s, 20_000) for s in builtin_systems()],
            gap_pair_counts(10, 20_000),
            count_prime_aps(3, 2000),
        )
    assert results["cython"] == results["python"]


def test_falls_back_to_python_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['k4dioph._kernels'] = None\n"
        "from k4dioph import _backend\n"
        "from k4dioph.equations import FamilyId, solve_family\n"
        "assert _backend.name() == 'python' and _backend.available() == ['python']\n"
        "print([s.values() for s in solve_family(FamilyId.F1, min_exp=2)])\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout
    assert out.strip() == "[(97, 7, 6, 1, 2), (577, 17, 7, 2, 2)]"
