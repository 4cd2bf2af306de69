"""Truncated complex power series.

A :class:`TruncSeries` stores the coefficients ``c[0..N]`` of a power
series in ``z`` and all arithmetic is carried out modulo ``z**(N+1)``.
Coefficient ``k`` of every result depends only on input coefficients
``0..k``, so truncation never leaks error downwards.

The operations here (product, quotient, real powers, composition and
reversion) are what the coefficient identities for normalized functions
``f(z) = z + a2 z^2 + a3 z^3 + ...`` are built from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "TOL_ALG",
    "TOL_DIV",
    "DEFAULT_ORDER",
    "MAX_ORDER",
    "SeriesError",
    "OrderMismatch",
    "DivisionBySingularSeries",
    "PowBaseNotUnit",
    "ComposeNotLocal",
    "NotNormalized",
    "TruncSeries",
    "NormalizedFn",
    "mul",
    "div",
    "deriv",
    "log",
    "exp",
    "pow_real",
    "compose",
    "revert",
    "evaluate",
    "allclose",
]

TOL_ALG = 1e-9
TOL_DIV = 1e-12
DEFAULT_ORDER = 16
MAX_ORDER = 64


class SeriesError(ValueError):
    """Base class for invalid truncated-series operations."""


class OrderMismatch(SeriesError):
    pass


class DivisionBySingularSeries(SeriesError, ZeroDivisionError):
    pass


class PowBaseNotUnit(SeriesError):
    pass


class ComposeNotLocal(SeriesError):
    pass


class NotNormalized(SeriesError):
    pass


@dataclass(frozen=True, eq=False)
class TruncSeries:
    """Power series ``sum(coeffs[k] * z**k for k in 0..order)``.

    The coefficient array is copied to complex128 and made read-only on
    construction, so instances can be shared freely.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size == 0:
            raise SeriesError("a truncated series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def from_coeffs(cls, values: Iterable[complex], order: int | None = None) -> "TruncSeries":
        """Build a series from leading coefficients, zero-padding or cutting to ``order``."""
        vals = np.asarray(list(values), dtype=np.complex128)
        if order is None:
            return cls(vals)
        out = np.zeros(order + 1, dtype=np.complex128)
        n = min(order + 1, vals.size)
        out[:n] = vals[:n]
        return cls(out)

    @classmethod
    def constant(cls, value: complex, order: int) -> "TruncSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def identity(cls, order: int) -> "TruncSeries":
        """The series ``z``."""
        return cls.from_coeffs([0, 1], order)

    def __getitem__(self, k: int) -> complex:
        return complex(self.coeffs[k])

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self) -> str:
        return f"TruncSeries(order={self.order}, coeffs={self.coeffs.tolist()!r})"

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries.from_coeffs(self.coeffs, order)

    def shift_down(self) -> "TruncSeries":
        """Divide by ``z``; requires a zero constant term. Order drops by one."""
        if abs(self.coeffs[0]) > TOL_ALG * max(1.0, float(np.abs(self.coeffs).max())):
            raise SeriesError("cannot divide by z: nonzero constant term")
        if self.order == 0:
            return TruncSeries(np.zeros(1))
        return TruncSeries(self.coeffs[1:])

    def shift_up(self) -> "TruncSeries":
        """Multiply by ``z`` keeping the same order."""
        out = np.zeros_like(self.coeffs)
        out[1:] = self.coeffs[:-1]
        return TruncSeries(out)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.constant(complex(other), self.order)

    def __add__(self, other):
        other = self._coerce(other)
        _check_orders(self, other)
        return TruncSeries(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(-self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        _check_orders(self, other)
        return TruncSeries(self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return mul(self, other)
        return TruncSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return div(self, other)
        return TruncSeries(self.coeffs / complex(other))

    def __rtruediv__(self, other):
        return div(self._coerce(other), self)

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)


@dataclass(frozen=True, eq=False)
class NormalizedFn:
    """A truncated ``f(z) = z + a2 z^2 + ...`` with ``f(0) = 0`` and ``f'(0) = 1``."""

    series: TruncSeries

    def __post_init__(self):
        c = self.series.coeffs
        if self.series.order < 1:
            raise NotNormalized("normalized functions need order >= 1")
        if abs(c[0]) > TOL_ALG or abs(c[1] - 1) > TOL_ALG:
            raise NotNormalized(f"expected f(0)=0, f'(0)=1; got c0={c[0]}, c1={c[1]}")

    @classmethod
    def from_coeffs(cls, tail: Sequence[complex], order: int | None = None) -> "NormalizedFn":
        """``z + tail[0] z^2 + tail[1] z^3 + ...`` truncated at ``order``."""
        if order is None:
            order = max(len(tail) + 1, 1)
        return cls(TruncSeries.from_coeffs([0, 1, *tail], order))

    @property
    def order(self) -> int:
        return self.series.order

    def a(self, n: int) -> complex:
        """The coefficient ``a_n`` (``a_1 = 1``)."""
        return self.series[n] if n <= self.order else 0j


def _check_orders(a: TruncSeries, b: TruncSeries) -> None:
    if a.order != b.order:
        raise OrderMismatch(f"series orders differ: {a.order} != {b.order}")


def allclose(a: TruncSeries | np.ndarray, b: TruncSeries | np.ndarray, tol: float = TOL_ALG) -> bool:
    """Coefficientwise agreement, relative to the largest magnitude present (floor 1)."""
    x = a.coeffs if isinstance(a, TruncSeries) else np.asarray(a, dtype=np.complex128)
    y = b.coeffs if isinstance(b, TruncSeries) else np.asarray(b, dtype=np.complex128)
    if x.shape != y.shape:
        return False
    scale = max(1.0, float(np.abs(x).max(initial=0.0)), float(np.abs(y).max(initial=0.0)))
    return bool(np.abs(x - y).max(initial=0.0) <= tol * scale)


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(a, b)
    n = a.order + 1
    return TruncSeries(np.convolve(a.coeffs, b.coeffs)[:n])


def div(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Quotient ``a / b`` by forward substitution.

    Raises:
        DivisionBySingularSeries: if ``|b[0]| <= TOL_DIV``.
    """
    _check_orders(a, b)
    b0 = b.coeffs[0]
    if abs(b0) <= TOL_DIV:
        raise DivisionBySingularSeries(f"constant term of divisor is {b0!r}")
    q = np.zeros(a.order + 1, dtype=np.complex128)
    bc = b.coeffs
    for k in range(a.order + 1):
        # q_k = (a_k - sum_{j=1..k} b_j q_{k-j}) / b_0
        acc = a.coeffs[k] - np.dot(bc[1 : k + 1], q[k - 1 :: -1][:k]) if k else a.coeffs[0]
        q[k] = acc / b0
    return TruncSeries(q)


def deriv(a: TruncSeries) -> TruncSeries:
    """Term-by-term derivative; the order drops by one (an order-0 input gives the zero constant)."""
    if a.order == 0:
        return TruncSeries(np.zeros(1))
    k = np.arange(1, a.order + 1)
    return TruncSeries(k * a.coeffs[1:])


def _integrate(a: TruncSeries) -> TruncSeries:
    out = np.zeros(a.order + 2, dtype=np.complex128)
    out[1:] = a.coeffs / np.arange(1, a.order + 2)
    return TruncSeries(out)


def log(a: TruncSeries) -> TruncSeries:
    """Principal logarithm of a series with constant term exactly 1 (``log(1) = 0``)."""
    if abs(a.coeffs[0] - 1) > TOL_ALG:
        raise PowBaseNotUnit(f"log needs constant term 1, got {a.coeffs[0]!r}")
    if a.order == 0:
        return TruncSeries(np.zeros(1))
    da = deriv(a)
    return _integrate(div(da, a.truncate(a.order - 1)))


def exp(a: TruncSeries) -> TruncSeries:
    """Exponential of a series with zero constant term.

    Uses ``k b_k = sum_{j=1..k} j a_j b_{k-j}``, which follows from ``b' = a' b``.
    """
    if abs(a.coeffs[0]) > TOL_ALG:
        raise ComposeNotLocal(f"exp needs a zero constant term, got {a.coeffs[0]!r}")
    n = a.order + 1
    ja = np.arange(n) * a.coeffs
    b = np.zeros(n, dtype=np.complex128)
    b[0] = 1.0
    for k in range(1, n):
        b[k] = np.dot(ja[1 : k + 1], b[k - 1 :: -1][:k]) / k
    return TruncSeries(b)


def pow_real(a: TruncSeries, lam: float) -> TruncSeries:
    """``a ** lam`` on the principal branch, for ``a[0]`` within ``TOL_ALG`` of 1.

    The input is rescaled by its constant term before taking ``exp(lam * log(.))``
    so that rounding in ``a[0]`` does not bias the result.

    Raises:
        PowBaseNotUnit: if the constant term is not 1 to within ``TOL_ALG``.
    """
    a0 = a.coeffs[0]
    if abs(a0 - 1) > TOL_ALG:
        raise PowBaseNotUnit(f"constant term must be 1, got {a0!r}")
    lam = float(lam)
    unit = TruncSeries(a.coeffs / a0)
    return exp(log(unit) * lam) * (a0**lam)


def compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """``outer(inner(z))`` by Horner's scheme on series.

    ``inner`` must vanish at 0. The result has order ``min(outer.order, inner.order)``.
    """
    if abs(inner.coeffs[0]) > TOL_ALG:
        raise ComposeNotLocal(f"inner series must vanish at 0, got {inner.coeffs[0]!r}")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    oc = outer.coeffs[: n + 1]
    acc = TruncSeries.constant(oc[-1], n)
    for c in oc[-2::-1]:
        acc = mul(acc, inner) + c
    return acc


def revert(f: NormalizedFn) -> NormalizedFn:
    """Compositional inverse ``g`` with ``f(g(w)) = w`` to the order of ``f``.

    Solved order by order: the coefficient of ``w^k`` in ``f(g(w))`` equals
    ``g_k`` plus terms involving only ``g_2..g_{k-1}``, so each step is a
    single subtraction.
    """
    n = f.order
    g = np.zeros(n + 1, dtype=np.complex128)
    g[1] = 1.0
    for k in range(2, n + 1):
        # only the first k+1 coefficients matter at step k
        fk = f.series.truncate(k)
        gk = TruncSeries(g[: k + 1])
        g[k] -= compose(fk, gk).coeffs[k]
    return NormalizedFn(TruncSeries(g))


def evaluate(a: TruncSeries, z: complex) -> complex:
    """Horner evaluation of the truncated polynomial at ``z``."""
    acc = 0j
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc)


# name used by callers that mirror the operation list
eval = evaluate
