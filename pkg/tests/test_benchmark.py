import runpy
from pathlib import Path

import pytest

from k4dioph import _backend

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


@pytest.mark.skipif("cython" not in _backend.available(), reason="compiled kernels not built")
def test_benchmark_runs_at_tiny_scale(capsys):
    mod = runpy.run_path(str(BENCH))
    assert mod["main"](["--scale", "0.01", "--repeat", "1"]) == 0
    out = capsys.readouterr().out
    assert "speedup" in out and "f1_scan" in out
    assert _backend.name() == "cython"
