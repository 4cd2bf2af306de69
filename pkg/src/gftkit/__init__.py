"""Coefficient machinery for lambda-pseudo bi-starlike functions subordinate to the shell-like curve."""

from .series import NormalizedFn, TruncSeries
from .shell import GOLDEN, TAU
from .pseudo import BoundSet, ClassParams, CoeffSolution, bound_set
from .verify import VerifyReport

__version__ = "0.1.0"

__all__ = [
    "TruncSeries",
    "NormalizedFn",
    "GOLDEN",
    "TAU",
    "BoundSet",
    "ClassParams",
    "CoeffSolution",
    "bound_set",
    "VerifyReport",
]
