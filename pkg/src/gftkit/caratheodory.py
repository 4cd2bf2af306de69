"""Sampling the Caratheodory class through its Herglotz representation.

Every ``h`` with ``h(0) = 1`` and ``Re h > 0`` is an average of the kernels
``(1 + x z) / (1 - x z)`` over a probability measure on ``|x| = 1``. For a
finite measure ``sum w_k delta_{x_k}`` the coefficients are
``c_n = 2 sum_k w_k x_k^n``, so ``|c_n| <= 2`` holds by construction and the
single-atom kernels hit the extreme ``|c_n| = 2``.

Random draws use numpy's Philox (counter-based) bit generator keyed by a
``SeedSequence`` of ``(seed, stream)``; the same key always reproduces the
same atoms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import MAX_ORDER, TruncSeries, div

__all__ = [
    "MAX_ATOMS",
    "InvalidMeasure",
    "CaratheodoryFn",
    "SchwarzFn",
    "AtomBatch",
    "make_rng",
    "coeffs",
    "schwarz_from_h",
    "h_from_schwarz",
    "sample",
    "sample_batch",
]

MAX_ATOMS = 8
_ATOM_TOL = 1e-12


class InvalidMeasure(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CaratheodoryFn:
    """Finite convex combination of Herglotz kernels.

    Attributes:
        weights: non-negative, summing to 1.
        points: unit-modulus complex numbers, one per weight.
    """

    weights: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        x = np.array(self.points, dtype=np.complex128).reshape(-1)
        if w.size == 0 or w.size != x.size:
            raise InvalidMeasure("weights and points must be non-empty and of equal length")
        if np.any(w < 0):
            raise InvalidMeasure("weights must be non-negative")
        if abs(w.sum() - 1) > _ATOM_TOL:
            raise InvalidMeasure(f"weights sum to {w.sum()!r}, not 1")
        if np.any(np.abs(np.abs(x) - 1) > _ATOM_TOL):
            raise InvalidMeasure("points must lie on the unit circle")
        w.setflags(write=False)
        x.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", x)

    @classmethod
    def kernel(cls, point: complex = 1.0) -> "CaratheodoryFn":
        """Single atom: ``h(z) = (1 + x z) / (1 - x z)``."""
        return cls(np.array([1.0]), np.array([point]))

    def coeff(self, n: int) -> complex:
        return complex(2 * np.sum(self.weights * self.points**n)) if n else 1 + 0j

    def __call__(self, z: complex) -> complex:
        xz = self.points * z
        return complex(np.sum(self.weights * (1 + xz) / (1 - xz)))


@dataclass(frozen=True, eq=False)
class SchwarzFn:
    """Truncated Schwarz function ``u`` with ``u(0) = 0``."""

    series: TruncSeries

    def __post_init__(self):
        if abs(self.series.coeffs[0]) > 1e-12:
            raise ValueError("a Schwarz function must vanish at 0")


@dataclass(frozen=True, eq=False)
class AtomBatch:
    """``count`` measures stored densely; unused atom slots carry weight 0."""

    weights: np.ndarray  # (count, max_atoms)
    points: np.ndarray  # (count, max_atoms)

    def __len__(self) -> int:
        return self.weights.shape[0]

    def coeff(self, n: int) -> np.ndarray:
        """``c_n`` for every measure in the batch."""
        if n == 0:
            return np.ones(len(self), dtype=np.complex128)
        return 2 * np.sum(self.weights * self.points**n, axis=1)

    def member(self, i: int) -> CaratheodoryFn:
        keep = self.weights[i] > 0
        return CaratheodoryFn(self.weights[i][keep], self.points[i][keep])


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by ``(seed, stream)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, stream])))


def coeffs(h: CaratheodoryFn, order: int) -> TruncSeries:
    """``1 + c_1 z + ... + c_N z^N`` for ``h``."""
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_ORDER}]")
    n = np.arange(order + 1)
    c = 2 * (h.weights[None, :] * h.points[None, :] ** n[:, None]).sum(axis=1)
    c[0] = 1.0
    return TruncSeries(c)


def schwarz_from_h(c: TruncSeries) -> SchwarzFn:
    """Inverse Cayley map ``u = (h - 1) / (h + 1)``."""
    if abs(c.coeffs[0] - 1) > 1e-12:
        raise ValueError("h must satisfy h(0) = 1")
    return SchwarzFn(div(c - 1, c + 1))


def h_from_schwarz(u: SchwarzFn) -> TruncSeries:
    """Cayley map ``h = (1 + u) / (1 - u)``."""
    s = u.series
    return div(1 + s, 1 - s)


def sample_batch(rng: np.random.Generator, count: int, max_atoms: int = MAX_ATOMS) -> AtomBatch:
    """Draw ``count`` random measures.

    Atom counts are uniform on ``1..max_atoms``, weights are uniform on the
    simplex (normalized exponentials) and points uniform on the circle.
    """
    if not 1 <= max_atoms <= MAX_ATOMS:
        raise ValueError(f"max_atoms must lie in [1, {MAX_ATOMS}]")
    k = rng.integers(1, max_atoms, size=count, endpoint=True)
    e = rng.standard_exponential(size=(count, max_atoms))
    e[np.arange(max_atoms)[None, :] >= k[:, None]] = 0.0
    w = e / e.sum(axis=1, keepdims=True)
    theta = rng.uniform(0.0, 2 * np.pi, size=(count, max_atoms))
    return AtomBatch(w, np.exp(1j * theta))


def sample(seed: int, max_atoms: int = MAX_ATOMS) -> CaratheodoryFn:
    """Deterministic random member for ``seed``; seed 0 is the kernel at ``x = 1``."""
    if max_atoms < 1:
        raise ValueError("max_atoms must be positive")
    if seed == 0:
        return CaratheodoryFn.kernel(1.0)
    return sample_batch(make_rng(seed), 1, max_atoms).member(0)
