"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin. ``set_backend`` switches at runtime (tests and benchmarks use it).
"""
from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _pykernels


def available():
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "cython")
    return names


def name():
    return "cython" if _active is _compiled else "python"


def set_backend(which):
    """Select ``"cython"``, ``"python"`` or ``"auto"``; returns the previous name."""
    global _active
    previous = name()
    if which == "auto":
        _active = _compiled if _compiled is not None else _pykernels
    elif which == "python":
        _active = _pykernels
    elif which == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built; run `pip install -e .`")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {which!r}")
    return previous


def kernels():
    return _active
