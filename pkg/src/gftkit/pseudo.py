"""Coefficient bounds for lambda-pseudo bi-starlike functions subordinate to ``p``.

For ``f = z + a2 z^2 + a3 z^3 + ...`` with inverse ``g`` both
``z f'(z)^lam / f(z)`` and ``w g'(w)^lam / g(w)`` are subordinate to the
shell-like function. Matching second coefficients against the Schwarz
expansions gives a linear system in ``a2^2`` and ``a3`` driven by the
second Caratheodory coefficients ``c2`` (f side) and ``d2`` (g side):

    a2^2 = (c2 + d2) tau^2 / (4 D(lam))
    a3   = a2^2 + (c2 - d2) tau / (4 (3 lam - 1))

with ``D(lam) = (2 lam - 1)^2 - (10 lam^2 - 11 lam + 3) tau``. Everything
else in this module (the bounds and the Fekete-Szego functional) is read
off those two lines.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .series import NormalizedFn, TruncSeries, deriv, div, pow_real, revert
from .shell import TAU

__all__ = [
    "LambdaRangeError",
    "ClassParams",
    "BoundSet",
    "CoeffSolution",
    "lhs_series",
    "ghs_series",
    "lhs_closed_form",
    "ghs_closed_form",
    "denom",
    "solve_coeffs",
    "bound_a2",
    "bound_a2_simple",
    "bound_a3",
    "fs_h",
    "fs_threshold",
    "fs_bound",
    "fs_envelope",
    "fs_functional",
    "fs_decomposition",
    "bound_set",
]

ABS_TAU = abs(TAU)


class LambdaRangeError(ValueError):
    def __init__(self, lam):
        super().__init__(f"lambda must satisfy λ ≥ 1 (got {lam!r})")
        self.lam = lam


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not lam >= 1:
        raise LambdaRangeError(lam)
    return lam


@dataclass(frozen=True)
class ClassParams:
    """Order ``lam >= 1`` of pseudo-starlikeness and Fekete-Szego weight ``mu``."""

    lam: float
    mu: float = 0.0

    def __post_init__(self):
        _check_lambda(self.lam)
        if not denom(self.lam) > 0:
            raise ValueError(f"D(lambda) must be positive at lambda={self.lam}")


@dataclass(frozen=True)
class BoundSet:
    lam: float
    mu: float
    a2_bound: float
    a2_simple_bound: float
    a3_bound: float
    fs_bound: float
    fs_h: float
    fs_threshold: float

    def to_dict(self) -> dict:
        d = asdict(self)
        return {"lambda": d.pop("lam"), **d}


@dataclass(frozen=True)
class CoeffSolution:
    """``a2^2`` and ``a3`` determined by ``(c2, d2)``.

    ``a2`` itself is only fixed up to sign by these equations, so it is not
    stored; :attr:`a2_abs` gives its modulus.
    """

    a2_sq: complex
    a3: complex
    c2: complex
    d2: complex
    lam: float

    @property
    def a2_abs(self) -> float:
        return float(np.sqrt(abs(self.a2_sq)))


def _pad(f: NormalizedFn, order: int) -> TruncSeries:
    return f.series.truncate(max(order, f.order))


def lhs_series(f: NormalizedFn, lam: float, order: int | None = None) -> TruncSeries:
    """``z f'(z)^lam / f(z)`` truncated at ``order``.

    Coefficient ``k`` needs ``a_1..a_{k+1}``, so the default order is
    ``f.order - 1``. A larger ``order`` treats ``f`` as a polynomial (missing
    coefficients are zero).
    """
    lam = _check_lambda(lam)
    if order is None:
        order = f.order - 1
    s = _pad(f, order + 1)
    fp = deriv(s).truncate(order)
    f_over_z = s.shift_down().truncate(order)
    return div(pow_real(fp, lam), f_over_z)


def ghs_series(f: NormalizedFn, lam: float, order: int | None = None) -> TruncSeries:
    """``w g'(w)^lam / g(w)`` for ``g`` the inverse of ``f``."""
    lam = _check_lambda(lam)
    if order is None:
        order = f.order - 1
    g = revert(NormalizedFn(_pad(f, order + 1)))
    return lhs_series(g, lam, order)


def lhs_closed_form(a2: complex, a3: complex, lam: float) -> tuple[complex, complex]:
    """First and second coefficients of ``z f'^lam / f`` in terms of ``a2, a3``."""
    return (
        (2 * lam - 1) * a2,
        (3 * lam - 1) * a3 + (2 * lam**2 - 4 * lam + 1) * a2**2,
    )


def ghs_closed_form(a2: complex, a3: complex, lam: float) -> tuple[complex, complex]:
    """First and second coefficients of ``w g'^lam / g``."""
    return (
        -(2 * lam - 1) * a2,
        (2 * lam**2 + 2 * lam - 1) * a2**2 - (3 * lam - 1) * a3,
    )


def denom(lam: float) -> float:
    """``D(lam) = (2 lam - 1)^2 - (10 lam^2 - 11 lam + 3) tau``."""
    lam = _check_lambda(lam)
    return (2 * lam - 1) ** 2 - (10 * lam**2 - 11 * lam + 3) * TAU


def _solve(c2, d2, lam):
    # array-friendly core shared with the sampling harness
    a2_sq = (c2 + d2) * TAU**2 / (4 * denom(lam))
    a3 = a2_sq + (c2 - d2) * TAU / (4 * (3 * lam - 1))
    return a2_sq, a3


def solve_coeffs(c2: complex, d2: complex, lam: float) -> CoeffSolution:
    lam = _check_lambda(lam)
    c2, d2 = complex(c2), complex(d2)
    a2_sq, a3 = _solve(c2, d2, lam)
    return CoeffSolution(complex(a2_sq), complex(a3), c2, d2, lam)


def bound_a2(lam: float) -> float:
    """``|a2| <= |tau| / sqrt(D(lam))``."""
    return ABS_TAU / np.sqrt(denom(lam))


def bound_a2_simple(lam: float) -> float:
    """The weaker ``|a2| <= |tau| / (2 lam - 1)`` from the first coefficients alone."""
    lam = _check_lambda(lam)
    return ABS_TAU / (2 * lam - 1)


def bound_a3(lam: float) -> float:
    lam = _check_lambda(lam)
    num = ABS_TAU * ((2 * lam - 1) ** 2 - 2 * (5 * lam**2 - 4 * lam + 1) * TAU)
    return num / ((3 * lam - 1) * denom(lam))


def fs_h(mu: float, lam: float) -> float:
    """``h(mu) = (1 - mu) tau^2 / (4 D(lam))`` (signed)."""
    return (1 - mu) * TAU**2 / (4 * denom(lam))


def fs_threshold(lam: float) -> float:
    """``T = |tau| / (4 (3 lam - 1))``."""
    lam = _check_lambda(lam)
    return ABS_TAU / (4 * (3 * lam - 1))


def fs_bound(mu: float, lam: float) -> float:
    """Piecewise Fekete-Szego constant: ``T`` when ``|h(mu)| <= T``, else ``4 |h(mu)|``."""
    h = abs(fs_h(mu, lam))
    t = fs_threshold(lam)
    if h <= t:
        return t
    return 4 * h


def fs_envelope(mu: float, lam: float) -> float:
    """``2|h + T| + 2|h - T|``, the supremum of ``|a3 - mu a2^2|`` over ``|c2|, |d2| <= 2``."""
    h = fs_h(mu, lam)
    t = fs_threshold(lam)
    return 2 * abs(h + t) + 2 * abs(h - t)


def fs_functional(sol: CoeffSolution, mu: float) -> complex:
    """``a3 - mu a2^2``."""
    return sol.a3 - mu * sol.a2_sq


def fs_decomposition(c2, d2, mu: float, lam: float, signed_tau: bool = True):
    """``(h + s) c2 + (h - s) d2`` with ``s = tau / (4 (3 lam - 1))``.

    With ``signed_tau=False`` the constant uses ``|tau|`` instead, which swaps
    the roles of ``c2`` and ``d2`` in the second term since ``tau < 0``.
    """
    lam = _check_lambda(lam)
    h = fs_h(mu, lam)
    s = (TAU if signed_tau else ABS_TAU) / (4 * (3 * lam - 1))
    return (h + s) * c2 + (h - s) * d2


def bound_set(lam: float, mu: float = 1.0) -> BoundSet:
    params = ClassParams(lam, mu)
    return BoundSet(
        lam=params.lam,
        mu=float(mu),
        a2_bound=float(bound_a2(lam)),
        a2_simple_bound=float(bound_a2_simple(lam)),
        a3_bound=float(bound_a3(lam)),
        fs_bound=float(fs_bound(mu, lam)),
        fs_h=float(fs_h(mu, lam)),
        fs_threshold=float(fs_threshold(lam)),
    )
