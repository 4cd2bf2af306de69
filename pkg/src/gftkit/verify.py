"""Sampling harness for the coefficient inequalities.

Three suites, each producing a :class:`VerifyReport`:

* ``bounds``: draws paired Caratheodory measures (f side and g side), takes
  their second coefficients ``(c2, d2)``, solves for ``a2^2`` and ``a3`` and
  checks the ``|a2|``, ``|a3|`` and Fekete-Szego estimates on a
  ``(lambda, mu)`` grid.
* ``expansions``: checks the series identities behind that linear system
  with the series engine.
* ``shell``: checks the Fibonacci, curve and real-part facts about ``p``.

Violations are counted, never raised. Cells of the grid draw from their own
RNG stream keyed by ``(seed, cell index)``, so results do not depend on
evaluation order.
"""

from __future__ import annotations

import copy
import json
import math
import time
from dataclasses import dataclass, field, fields

import numpy as np

from . import caratheodory as cara
from . import pseudo, shell
from .series import NormalizedFn, TruncSeries, allclose, compose, revert

__all__ = [
    "VIOLATION_TOL",
    "EXTREMAL_TUPLES",
    "VerifyReport",
    "merge",
    "verify_bounds",
    "verify_expansions",
    "verify_shell",
    "run_suite",
    "SUITES",
]

VIOLATION_TOL = 1e-9
EXPANSION_TOL = 1e-9

# deterministic corner tuples (c2, d2); (2, 2) attains the |a2| bound
EXTREMAL_TUPLES = ((2.0, 2.0), (2.0, -2.0), (-2.0, 2.0), (-2.0, -2.0))

DEFAULT_LAMBDAS = (1.0, 1.5, 2.0, 3.0)
DEFAULT_MUS = (-2.0, 0.0, 0.5, 1.0, 2.0)
DEFAULT_SAMPLES = 10_000


@dataclass
class VerifyReport:
    suite: str
    seed: int
    samples: int = 0
    violations: int = 0
    max_ratio_a2: float = 0.0
    max_ratio_a3: float = 0.0
    max_ratio_fs: float = 0.0
    flagged_fs_tuples: int = 0
    elapsed: float = 0.0
    checks: dict = field(default_factory=dict)

    def record(self, name: str, value: float, limit: float, count: int = 1, bad: int | None = None) -> None:
        """Fold a named check (worst value vs. its limit) into the report."""
        if bad is None:
            bad = int(not value <= limit)
        entry = self.checks.setdefault(name, {"count": 0, "worst": 0.0, "limit": limit, "violations": 0})
        entry["count"] += count
        entry["worst"] = max(entry["worst"], float(value))
        entry["violations"] += bad
        self.violations += bad

    def to_dict(self, include_elapsed: bool = True) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        if not include_elapsed:
            d.pop("elapsed")
        return d

    def to_json(self, include_elapsed: bool = True, **kwargs) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=False, **kwargs)


def merge(a: VerifyReport, b: VerifyReport, suite: str | None = None) -> VerifyReport:
    """Combine two reports: counts add, maxima take the max."""
    out = VerifyReport(
        suite=suite or (a.suite if a.suite == b.suite else f"{a.suite}+{b.suite}"),
        seed=a.seed,
        samples=a.samples + b.samples,
        violations=a.violations + b.violations,
        max_ratio_a2=max(a.max_ratio_a2, b.max_ratio_a2),
        max_ratio_a3=max(a.max_ratio_a3, b.max_ratio_a3),
        max_ratio_fs=max(a.max_ratio_fs, b.max_ratio_fs),
        flagged_fs_tuples=a.flagged_fs_tuples + b.flagged_fs_tuples,
        elapsed=a.elapsed + b.elapsed,
    )
    for src in (a.checks, b.checks):
        for name, e in src.items():
            if name not in out.checks:
                out.checks[name] = copy.deepcopy(e)
                continue
            t = out.checks[name]
            if isinstance(e, list):
                t.extend(e)
            elif isinstance(e, dict) and "count" in e:
                t["count"] += e["count"]
                t["worst"] = max(t["worst"], e["worst"])
                t["violations"] += e["violations"]
    return out


def _draw_tuples(seed: int, cell: int, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Admissible ``(c2, d2)`` pairs: the corner tuples first, then random draws."""
    corners = np.array(EXTREMAL_TUPLES[: min(samples, len(EXTREMAL_TUPLES))], dtype=np.complex128)
    n_rand = samples - len(corners)
    rng = cara.make_rng(seed, cell)
    c_side = cara.sample_batch(rng, n_rand)
    d_side = cara.sample_batch(rng, n_rand)
    c2 = np.concatenate([corners[:, 0], c_side.coeff(2)]) if len(corners) else c_side.coeff(2)
    d2 = np.concatenate([corners[:, 1], d_side.coeff(2)]) if len(corners) else d_side.coeff(2)
    return c2, d2


def verify_bounds(lambda_grid=DEFAULT_LAMBDAS, mu_grid=DEFAULT_MUS, samples: int = DEFAULT_SAMPLES,
                  seed: int = 0) -> VerifyReport:
    """Check the ``|a2|``, ``|a3|`` and Fekete-Szego estimates on every ``(lambda, mu)`` cell.

    The Fekete-Szego check is against the exact envelope ``2|h+T| + 2|h-T|``;
    tuples exceeding the piecewise constant from :func:`pseudo.fs_bound` are
    only counted in ``flagged_fs_tuples``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    lambdas = [float(x) for x in lambda_grid]
    for lam in lambdas:
        pseudo.ClassParams(lam)
    t0 = time.perf_counter()
    rep = VerifyReport(suite="bounds", seed=seed)
    cells = []
    idx = 0
    for lam in lambdas:
        b2 = pseudo.bound_a2(lam)
        b3 = pseudo.bound_a3(lam)
        for mu in mu_grid:
            mu = float(mu)
            c2, d2 = _draw_tuples(seed, idx, samples)
            a2_sq, a3 = pseudo._solve(c2, d2, lam)
            fs = np.abs(a3 - mu * a2_sq)
            r2 = np.sqrt(np.abs(a2_sq)) / b2
            r3 = np.abs(a3) / b3
            env = pseudo.fs_envelope(mu, lam)
            piece = pseudo.fs_bound(mu, lam)
            rfs = fs / env
            bad2 = int(np.count_nonzero(r2 > 1 + VIOLATION_TOL))
            bad3 = int(np.count_nonzero(r3 > 1 + VIOLATION_TOL))
            badfs = int(np.count_nonzero(rfs > 1 + VIOLATION_TOL))
            flagged = int(np.count_nonzero(fs > piece * (1 + VIOLATION_TOL)))
            rep.record("a2_bound", float(r2.max()), 1 + VIOLATION_TOL, samples, bad2)
            rep.record("a3_bound", float(r3.max()), 1 + VIOLATION_TOL, samples, bad3)
            rep.record("fs_envelope", float(rfs.max()), 1 + VIOLATION_TOL, samples, badfs)
            rep.samples += samples
            rep.max_ratio_a2 = max(rep.max_ratio_a2, float(r2.max()))
            rep.max_ratio_a3 = max(rep.max_ratio_a3, float(r3.max()))
            rep.max_ratio_fs = max(rep.max_ratio_fs, float(rfs.max()))
            rep.flagged_fs_tuples += flagged
            cells.append({
                "lambda": lam,
                "mu": mu,
                "max_fs": float(fs.max()),
                "fs_bound": float(piece),
                "fs_envelope": float(env),
                "flagged": flagged,
                "max_ratio_a2": float(r2.max()),
                "max_ratio_a3": float(r3.max()),
            })
            idx += 1
    rep.checks["cells"] = cells
    rep.elapsed = time.perf_counter() - t0
    return rep


def _expansion_trial(rng: np.random.Generator, rep: VerifyReport, order: int, lam: float,
                     a2: complex, a3: complex) -> None:
    f = NormalizedFn.from_coeffs([a2, a3], order + 1)
    lhs = pseudo.lhs_series(f, lam, order)
    ghs = pseudo.ghs_series(f, lam, order)
    l1, l2 = pseudo.lhs_closed_form(a2, a3, lam)
    g1, g2 = pseudo.ghs_closed_form(a2, a3, lam)
    scale = max(1.0, abs(l2), abs(g2))
    rep.record("lhs_closed_form", max(abs(lhs[1] - l1), abs(lhs[2] - l2)) / scale, EXPANSION_TOL)
    rep.record("ghs_closed_form", max(abs(ghs[1] - g1), abs(ghs[2] - g2)) / scale, EXPANSION_TOL)

    g = revert(f)
    rep.record("revert_first_terms", max(abs(g.a(2) + a2), abs(g.a(3) - (2 * a2**2 - a3))), 1e-10)
    ident = TruncSeries.identity(f.order)
    rep.record("revert_round_trip",
               float(np.abs(compose(f.series, g.series).coeffs - ident.coeffs).max()), EXPANSION_TOL)


def _subordination_trial(rng: np.random.Generator, rep: VerifyReport, order: int, lam: float) -> None:
    """Rebuild ``a2, a3`` from f-side Caratheodory data and check the g side.

    ``p(u(z))`` from a random measure fixes ``a2`` and ``a3`` through the first
    two coefficients; the g-side series of that ``f`` then determines
    ``d1, d2``. Those must satisfy ``d1 = -c1`` and reproduce ``a2^2, a3``
    through the ``(c2, d2)`` linear system.
    """
    tau = shell.TAU
    h = cara.sample_batch(rng, 1).member(0)
    c = cara.coeffs(h, order)
    u = cara.schwarz_from_h(c)
    pu = compose(shell.ptilde_series(order), u.series)
    c1, c2, c3 = c[1], c[2], c[3]
    p1, p2, p3 = (shell.ptilde_coeff(k) for k in (1, 2, 3))
    # closed forms for p(u(z)) up to z^3
    e1 = p1 * c1 / 2
    e2 = 0.5 * (c2 - c1**2 / 2) * p1 + c1**2 / 4 * p2
    e3 = (0.5 * (c3 - c1 * c2 + c1**3 / 4) * p1 + 0.5 * c1 * (c2 - c1**2 / 2) * p2
          + c1**3 / 8 * p3)
    rep.record("ptilde_of_schwarz", max(abs(pu[1] - e1), abs(pu[2] - e2), abs(pu[3] - e3)), EXPANSION_TOL)
    uc = u.series
    rep.record("schwarz_closed_form",
               max(abs(uc[1] - c1 / 2), abs(uc[2] - (c2 - c1**2 / 2) / 2),
                   abs(uc[3] - (c3 - c1 * c2 + c1**3 / 4) / 2)), EXPANSION_TOL)
    rep.record("cayley_round_trip",
               float(np.abs(cara.h_from_schwarz(u).coeffs - c.coeffs).max()), 1e-10)

    # f side: match z and z^2 coefficients
    a2 = pu[1] / (2 * lam - 1)
    a3 = (pu[2] - (2 * lam**2 - 4 * lam + 1) * a2**2) / (3 * lam - 1)
    f = NormalizedFn.from_coeffs([a2, a3], 4)
    lhs = pseudo.lhs_series(f, lam, 2)
    rep.record("lhs_matches_subordinate", max(abs(lhs[1] - pu[1]), abs(lhs[2] - pu[2])), EXPANSION_TOL)

    # g side: read d1, d2 off w g'^lam / g
    ghs = pseudo.ghs_series(f, lam, 2)
    d1 = 2 * ghs[1] / tau
    d2 = (ghs[2] - d1**2 / 4 * 3 * tau**2) * 2 / tau + d1**2 / 2
    rep.record("c1_equals_minus_d1", abs(c1 + d1), EXPANSION_TOL)
    sol = pseudo.solve_coeffs(c2, d2, lam)
    rep.record("linear_system_a2_sq", abs(sol.a2_sq - a2**2) / max(1.0, abs(a2**2)), EXPANSION_TOL)
    rep.record("linear_system_a3", abs(sol.a3 - a3) / max(1.0, abs(a3)), EXPANSION_TOL)
    # the same d1, d2 fed through p(v(w)) must give the g-side series back
    k = TruncSeries.from_coeffs([1, d1, d2], 2)
    pv = compose(shell.ptilde_series(2), cara.schwarz_from_h(k).series)
    rep.record("ghs_matches_subordinate", max(abs(pv[1] - ghs[1]), abs(pv[2] - ghs[2])), EXPANSION_TOL)


def verify_expansions(trials: int = 200, seed: int = 0, order: int = 6) -> VerifyReport:
    """Random checks of the series identities, with a degenerate ``f = z`` and a ``lambda = 1`` trial included."""
    if order < 3:
        raise ValueError("order must be at least 3")
    t0 = time.perf_counter()
    rep = VerifyReport(suite="expansions", seed=seed)
    rng = cara.make_rng(seed, 0)
    for i in range(trials):
        if i == 0:
            lam, a2, a3 = 1.0, 0j, 0j
        else:
            lam = 1.0 if i == 1 else float(rng.uniform(1.0, 4.0))
            r = np.sqrt(rng.uniform(0, 1, size=2))
            th = rng.uniform(0, 2 * np.pi, size=2)
            a2, a3 = complex(r[0] * np.exp(1j * th[0])), complex(r[1] * np.exp(1j * th[1]))
        _expansion_trial(rng, rep, order, lam, a2, a3)
        _subordination_trial(rng, rep, max(order, 3), lam)
        rep.samples += 1
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_shell(radial: int = 100, angular: int = 400, r_max: float = 0.999, curve_count: int = 360,
                 exclusion: float = 0.1, seed: int = 0) -> VerifyReport:
    """Fibonacci law, coefficient law, real-part bound and curve equation for ``p``."""
    t0 = time.perf_counter()
    rep = VerifyReport(suite="shell", seed=seed)
    tau = shell.TAU

    rep.record("golden_tau_square", abs(tau**2 - (1 + tau)), 1e-12)
    rep.record("golden_section", abs(1 / abs(tau) - abs(tau) / (1 - abs(tau))), 1e-12)
    fib_bad = sum(shell.fib(n + 2) != shell.fib(n) + shell.fib(n + 1) for n in range(shell.FIB_MAX - 1))
    rep.record("fib_recurrence", float(fib_bad), 0.0)
    rel = max(abs(shell.fib_closed_form(n) - shell.fib(n)) / max(1, shell.fib(n)) for n in range(71))
    rep.record("fib_closed_form", rel, 1e-9)
    rep.record("tau_power_identity", max(shell.tau_power_identity(n) for n in range(1, 41)), 1e-9)

    law = shell.ptilde_series(40)
    quot = shell.ptilde_quotient_series(40)
    diff = float(np.max(np.abs(law.coeffs - quot.coeffs) / np.maximum(1.0, np.abs(quot.coeffs))))
    rep.record("ptilde_coeff_law", diff, 1e-9)

    grid_min = shell.min_re_on_grid(r_max, radial, angular)
    rep.record("re_lower_bound", shell.RE_LOWER_BOUND - grid_min, 1e-9)
    rep.checks["re_grid_min"] = grid_min
    rep.record("re_at_origin", shell.RE_LOWER_BOUND - shell.min_re_on_grid(0.5, 1, 1), 0.0)

    pts = shell.curve_samples(1.0, curve_count, exclusion)
    res = max(shell.curve_residual(x, y) for _, x, y in pts)
    rep.record("curve_residual", res, 1e-6, count=len(pts))
    pi_ = shell.ptilde_eval(1j)
    rep.record("curve_residual_at_i", shell.curve_residual(pi_.real, pi_.imag), 1e-9)

    rep.record("special_value_origin", abs(shell.ptilde_eval(0) - 1), 1e-12)
    rep.record("special_value_minus_half_over_tau", abs(shell.ptilde_eval(-1 / (2 * tau)) - 1), 1e-12)
    z = np.exp(1j * math.acos(0.25))
    rep.record("special_value_arccos_quarter", abs(shell.ptilde_eval(z) - shell.SQRT5 / 5), 1e-9)
    rep.samples = radial * angular + len(pts)
    rep.elapsed = time.perf_counter() - t0
    return rep


SUITES = ("shell", "expansions", "bounds", "all")


def run_suite(suite: str, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> list[VerifyReport]:
    """Run one named suite (or ``all``) with the default grids."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    out = []
    if suite in ("shell", "all"):
        out.append(verify_shell(seed=seed))
    if suite in ("expansions", "all"):
        out.append(verify_expansions(seed=seed))
    if suite in ("bounds", "all"):
        out.append(verify_bounds(samples=samples, seed=seed))
    return out
