"""The shell-like function ``p(z) = (1 + tau^2 z^2) / (1 - tau z - tau^2 z^2)``.

``tau = (1 - sqrt 5) / 2`` is the negative root of ``x^2 = 1 + x``. The
Taylor coefficients of ``p`` are Lucas numbers times powers of ``tau``:
``p_n = (u_{n-1} + u_{n+1}) tau^n`` with ``u_n`` the Fibonacci numbers.
The image of the unit circle lies on the cubic
``(10x - sqrt5) y^2 = (sqrt5 - 2x)(sqrt5 x - 1)^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache

import numpy as np

from .series import MAX_ORDER, TruncSeries, div

__all__ = [
    "GoldenConstants",
    "GOLDEN",
    "TAU",
    "SQRT5",
    "RE_LOWER_BOUND",
    "TOL_SING",
    "FIB_MAX",
    "FibonacciOverflow",
    "PoleProximity",
    "FibSequence",
    "fib",
    "fib_closed_form",
    "tau_power_identity",
    "ptilde_coeff",
    "ptilde_series",
    "ptilde_quotient_series",
    "ptilde_eval",
    "curve_residual",
    "curve_samples",
    "min_re_on_grid",
]

SQRT5 = math.sqrt(5.0)
TOL_SING = 1e-8
FIB_MAX = 180
PTILDE_MAX = 70
# Re p > sqrt(5)/10 on the unit disk
RE_LOWER_BOUND = SQRT5 / 10


class FibonacciOverflow(OverflowError):
    pass


class PoleProximity(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class GoldenConstants:
    tau: float
    phi: float
    r0: float

    def __post_init__(self):
        if abs(self.tau**2 - (1 + self.tau)) > 1e-12:
            raise ValueError("tau must satisfy tau^2 = 1 + tau")
        t = abs(self.tau)
        if abs(1 / t - t / (1 - t)) > 1e-12:
            raise ValueError("|tau| must divide [0, 1] in the golden section")


GOLDEN = GoldenConstants(
    tau=(1 - SQRT5) / 2,
    phi=(1 + SQRT5) / 2,
    r0=(3 - SQRT5) / 2,
)
TAU = GOLDEN.tau


@dataclass(frozen=True)
class FibSequence:
    """Exact Fibonacci numbers ``u_0..u_n``."""

    values: tuple[int, ...]

    @classmethod
    def build(cls, n: int) -> "FibSequence":
        if n < 0:
            raise ValueError("n must be non-negative")
        if n > FIB_MAX:
            raise FibonacciOverflow(f"n={n} exceeds the supported maximum {FIB_MAX}")
        vals = [0, 1]
        while len(vals) <= n:
            vals.append(vals[-2] + vals[-1])
        return cls(tuple(vals[: n + 1]))

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=1)
def _fib_table() -> FibSequence:
    return FibSequence.build(FIB_MAX)


def fib(n: int) -> int:
    """Exact Fibonacci number ``u_n`` (``u_0 = 0``, ``u_1 = 1``), for ``0 <= n <= 180``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > FIB_MAX:
        raise FibonacciOverflow(f"n={n} exceeds the supported maximum {FIB_MAX}")
    return _fib_table()[n]


def fib_closed_form(n: int) -> float:
    """Binet form ``((1 - tau)^n - tau^n) / sqrt 5`` in double precision."""
    return ((1 - TAU) ** n - TAU**n) / SQRT5


def tau_power_identity(n: int) -> float:
    """Residual ``|tau^n - (u_n tau + u_{n-1})|``.

    ``tau^n`` is taken in double precision. The right side cancels two terms
    of size ``u_n``, so it is formed in 50-digit decimal arithmetic first.
    """
    if not 1 <= n <= PTILDE_MAX:
        raise ValueError(f"n must lie in [1, {PTILDE_MAX}]")
    with localcontext() as ctx:
        ctx.prec = 50
        tau = (1 - Decimal(5).sqrt()) / 2
        rhs = float(fib(n) * tau + fib(n - 1))
    return abs(TAU**n - rhs)


def ptilde_coeff(n: int) -> float:
    """Taylor coefficient ``p_n = (u_{n-1} + u_{n+1}) tau^n``; ``p_0 = 1``."""
    if n == 0:
        return 1.0
    if not 1 <= n <= PTILDE_MAX:
        raise ValueError(f"n must lie in [0, {PTILDE_MAX}]")
    return float(fib(n - 1) + fib(n + 1)) * TAU**n


def ptilde_series(order: int) -> TruncSeries:
    """``p`` truncated at ``order`` from the Fibonacci coefficient law."""
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_ORDER}]")
    return TruncSeries([ptilde_coeff(n) for n in range(order + 1)])


def ptilde_quotient_series(order: int) -> TruncSeries:
    """``p`` truncated at ``order`` by dividing numerator by denominator series."""
    num = TruncSeries.from_coeffs([1, 0, TAU**2], order)
    den = TruncSeries.from_coeffs([1, -TAU, -(TAU**2)], order)
    return div(num, den)


def ptilde_eval(z):
    """Evaluate ``p`` from its rational form. Accepts scalars or arrays.

    Raises:
        PoleProximity: if ``|1 - tau z - tau^2 z^2| <= TOL_SING`` anywhere.
    """
    z = np.asarray(z, dtype=np.complex128)
    den = 1 - TAU * z - TAU**2 * z * z
    if np.any(np.abs(den) <= TOL_SING):
        raise PoleProximity("evaluation point too close to a pole of p")
    out = (1 + TAU**2 * z * z) / den
    return complex(out) if out.ndim == 0 else out


def _ptilde_on_unit_circle(t: np.ndarray) -> np.ndarray:
    # p(z) = -1 + 1/(z + 1) - phi^2/(z - phi^2), and on |z| = 1
    # 1/(1 + e^{it}) = 1/2 - (i/2) tan(t/2); no cancellation near the pole at t = pi
    phi2 = GOLDEN.phi**2
    far = -phi2 / (np.exp(1j * t) - phi2)
    return -0.5 - 0.5j * np.tan(t / 2) + far


def curve_residual(x, y):
    """``|(10x - sqrt5) y^2 - (sqrt5 - 2x)(sqrt5 x - 1)^2|``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    res = np.abs((10 * x - SQRT5) * y**2 - (SQRT5 - 2 * x) * (SQRT5 * x - 1) ** 2)
    return float(res) if res.ndim == 0 else res


def curve_samples(r: float, count: int, exclusion: float = 0.1) -> list[tuple[float, float, float]]:
    """Sample ``p(r e^{it})`` at ``count`` uniform angles in ``[0, 2 pi)``.

    For ``r == 1`` angles with ``|t - pi| < exclusion`` are skipped, since
    ``z = -1`` is a pole, and the points come from the partial-fraction form
    so that the real part stays accurate next to the pole. ``r == 0`` yields the single point ``(0, 1, 0)``.

    Returns:
        List of ``(t, x, y)`` with ``x + iy = p(r e^{it})``.
    """
    if not 0 <= r <= 1:
        raise ValueError("radius must satisfy 0 <= r <= 1")
    if r == 0:
        return [(0.0, 1.0, 0.0)]
    if count < 1:
        raise ValueError("count must be positive")
    t = 2 * np.pi * np.arange(count) / count
    if r == 1:
        if exclusion < 1e-3:
            raise ValueError("exclusion must be at least 1e-3 on the unit circle")
        t = t[np.abs(t - np.pi) >= exclusion]
        w = _ptilde_on_unit_circle(t)
    else:
        w = np.atleast_1d(ptilde_eval(r * np.exp(1j * t)))
    return [(float(ti), float(wi.real), float(wi.imag)) for ti, wi in zip(t, w)]


def min_re_on_grid(r_max: float, radial: int, angular: int) -> float:
    """Minimum of ``Re p`` on the polar grid ``r in linspace(0, r_max, radial)``.

    Angles are ``2 pi k / angular``. A single radial node is the centre ``z = 0``.
    """
    if not r_max < 1:
        raise ValueError("r_max must be < 1")
    if radial < 1 or angular < 1:
        raise ValueError("grid sizes must be positive")
    r = np.linspace(0.0, r_max, radial)[:, None]
    t = 2 * np.pi * np.arange(angular)[None, :] / angular
    return float(np.min(np.real(ptilde_eval(r * np.exp(1j * t)))))
