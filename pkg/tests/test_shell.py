import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gftkit import shell
from gftkit.shell import (
    GOLDEN,
    SQRT5,
    TAU,
    FibonacciOverflow,
    FibSequence,
    PoleProximity,
    curve_residual,
    curve_samples,
    fib,
    fib_closed_form,
    min_re_on_grid,
    ptilde_coeff,
    ptilde_eval,
    ptilde_quotient_series,
    ptilde_series,
    tau_power_identity,
)


class TestGoldenConstants:
    def test_values(self):
        assert GOLDEN.tau == pytest.approx(-0.6180339887498949, abs=1e-15)
        assert GOLDEN.phi == pytest.approx(1 - GOLDEN.tau, abs=1e-15)
        assert GOLDEN.r0 == pytest.approx(0.3819660112501051, abs=1e-15)

    def test_identities(self):
        assert abs(TAU**2 - (1 + TAU)) < 1e-12
        t = abs(TAU)
        assert abs(1 / t - t / (1 - t)) < 1e-12

    def test_rejects_wrong_tau(self):
        with pytest.raises(ValueError):
            shell.GoldenConstants(tau=-0.6, phi=1.6, r0=0.38)


class TestFibonacci:
    @pytest.mark.parametrize("n, expected", [(0, 0), (1, 1), (2, 1), (10, 55), (20, 6765)])
    def test_values(self, n, expected):
        assert fib(n) == expected

    def test_recurrence_to_capacity(self):
        seq = FibSequence.build(180)
        assert len(seq) == 181
        assert all(seq[n + 2] == seq[n] + seq[n + 1] for n in range(179))
        assert seq[180] == 18547707689471986212190138521399707760

    def test_overflow_guard(self):
        with pytest.raises(FibonacciOverflow):
            fib(181)

    @pytest.mark.parametrize("n", range(71))
    def test_closed_form(self, n):
        # Binet form against exact integers
        assert abs(fib_closed_form(n) - fib(n)) <= 1e-9 * max(1, fib(n))


class TestTauPowers:
    def test_small(self):
        assert tau_power_identity(1) == 0
        assert tau_power_identity(2) < 1e-12

    def test_ten(self):
        assert tau_power_identity(10) <= 1e-10

    @pytest.mark.parametrize("n", range(1, 41))
    def test_contract(self, n):
        assert tau_power_identity(n) <= 1e-9


class TestCoefficients:
    @pytest.mark.parametrize("n, lucas", [(1, 1), (2, 3), (3, 4), (4, 7), (5, 11)])
    def test_lucas_law(self, n, lucas):
        assert ptilde_coeff(n) == pytest.approx(lucas * TAU**n, rel=1e-15)

    def test_zero(self):
        assert ptilde_coeff(0) == 1

    def test_series_short(self):
        assert np.allclose(ptilde_series(2).coeffs, [1, TAU, 3 * TAU**2], atol=1e-15)
        assert ptilde_series(0).coeffs.tolist() == [1]

    def test_matches_quotient(self):
        law = ptilde_series(40).coeffs
        quot = ptilde_quotient_series(40).coeffs
        assert np.all(np.abs(law - quot) <= 1e-9 * np.maximum(1, np.abs(quot)))
        assert np.abs(law[:6] - quot[:6]).max() <= 1e-12

    def test_high_precision_oracle(self):
        # Taylor coefficients of the rational function in 40-digit arithmetic
        mpmath.mp.dps = 40
        tau = (1 - mpmath.sqrt(5)) / 2
        coeffs = mpmath.taylor(lambda z: (1 + tau**2 * z**2) / (1 - tau * z - tau**2 * z**2), 0, 12)
        for n, c in enumerate(coeffs):
            assert ptilde_coeff(n) == pytest.approx(float(c), rel=1e-12, abs=1e-15)


class TestEvaluation:
    def test_origin(self):
        assert ptilde_eval(0) == 1

    def test_second_preimage_of_one(self):
        assert abs(ptilde_eval(-1 / (2 * TAU)) - 1) < 1e-12

    def test_arccos_quarter(self):
        for sign in (1, -1):
            z = np.exp(sign * 1j * math.acos(0.25))
            assert abs(ptilde_eval(z) - SQRT5 / 5) < 1e-9

    def test_at_one(self):
        assert ptilde_eval(1) == pytest.approx((2 + TAU) / (-2 * TAU), abs=1e-14)
        assert ptilde_eval(1).real == pytest.approx(1.118033988749895, abs=1e-12)

    def test_pole(self):
        with pytest.raises(PoleProximity):
            ptilde_eval(-1)

    def test_array(self):
        z = np.array([0, 0.5j])
        assert ptilde_eval(z).shape == (2,)


class TestCurve:
    def test_residual_at_i(self):
        w = ptilde_eval(1j)
        assert (w.real, w.imag) == pytest.approx((0.372678, -0.166667), abs=1e-6)
        assert curve_residual(w.real, w.imag) <= 1e-9

    def test_residual_trivial_points(self):
        assert curve_residual(1 / SQRT5, 0) < 1e-15
        assert curve_residual(SQRT5 / 2, 0) == 0
        y = 0.7
        assert curve_residual(SQRT5 / 2, y) == pytest.approx(abs((10 * SQRT5 / 2 - SQRT5) * y**2))

    def test_unit_circle_samples(self):
        pts = curve_samples(1, 8, 0.1)
        assert len(pts) == 7  # t = pi excluded
        assert all(curve_residual(x, y) <= 1e-6 for _, x, y in pts)
        t0, x0, y0 = pts[0]
        assert t0 == 0 and x0 == pytest.approx(1.118033988749895) and abs(y0) < 1e-15

    def test_tight_exclusion_still_on_curve(self):
        pts = curve_samples(1, 20000, 1e-3)
        assert all(abs(t - np.pi) >= 1e-3 for t, _, _ in pts)
        assert max(curve_residual(x, y) for _, x, y in pts) <= 1e-6

    def test_exclusion_floor(self):
        with pytest.raises(ValueError):
            curve_samples(1, 10, 1e-4)

    def test_inner_radius_finite(self):
        pts = curve_samples(GOLDEN.r0, 200)
        assert len(pts) == 200
        assert all(np.isfinite([x, y]).all() for _, x, y in pts)

    def test_radius_zero(self):
        assert curve_samples(0, 10) == [(0.0, 1.0, 0.0)]

    @given(st.floats(0.001, 2 * np.pi - 0.001).filter(lambda t: abs(t - np.pi) > 1e-3))
    def test_unit_circle_form_matches_rational(self, t):
        w = shell._ptilde_on_unit_circle(np.array([t]))[0]
        ref = ptilde_eval(np.exp(1j * t))
        assert abs(w - ref) <= 1e-9 * max(1, abs(ref))


class TestRealPart:
    def test_disk_bound(self):
        assert min_re_on_grid(0.9, 50, 200) >= 0.2236068 - 1e-9

    def test_near_centre(self):
        assert min_re_on_grid(0.1, 10, 64) >= 0.9

    def test_centre_only(self):
        assert min_re_on_grid(0.5, 1, 7) == 1

    def test_rejects_unit_radius(self):
        with pytest.raises(ValueError):
            min_re_on_grid(1.0, 10, 10)
