"""Bounded solvers and prime-tuple statistics for the simple-K4 Diophantine families."""
__version__ = "0.1.0"

from ._backend import name as backend_name
from .arith import SearchBounds, factorize, is_prime
from .equations import FamilyId, solve_family, verify_lemma, verify_theorem1

__all__ = [
    "FamilyId",
    "SearchBounds",
    "backend_name",
    "factorize",
    "is_prime",
    "solve_family",
    "verify_lemma",
    "verify_theorem1",
]
