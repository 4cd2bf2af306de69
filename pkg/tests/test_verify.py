import json

import numpy as np
import pytest

from gftkit import verify
from gftkit.pseudo import fs_threshold
from gftkit.shell import TAU
from gftkit.verify import VerifyReport, merge, run_suite, verify_bounds, verify_expansions, verify_shell

REPORT_FIELDS = ["suite", "seed", "samples", "violations", "max_ratio_a2", "max_ratio_a3",
                 "max_ratio_fs", "flagged_fs_tuples"]


class TestBounds:
    def test_example_run(self):
        rep = verify_bounds([1, 2], [0, 1], 10_000, 42)
        assert rep.violations == 0
        assert rep.samples == 4 * 10_000
        assert rep.max_ratio_a2 >= 0.999
        assert abs(rep.max_ratio_a2 - 1) <= 1e-9
        assert 0 <= rep.max_ratio_a3 <= 1 + 1e-9
        assert 0 <= rep.max_ratio_fs <= 1 + 1e-9

    def test_single_extremal_tuple(self):
        rep = verify_bounds([1], [1], samples=1, seed=0)
        cell = rep.checks["cells"][0]
        assert cell["max_fs"] == pytest.approx(0, abs=1e-15)
        assert cell["max_fs"] <= abs(TAU) / 8
        assert rep.violations == 0 and rep.flagged_fs_tuples == 0

    def test_flags_small_h_branch(self):
        rep = verify_bounds([1], [0], samples=4, seed=0)
        cell = rep.checks["cells"][0]
        assert cell["max_fs"] == pytest.approx(4 * fs_threshold(1), rel=1e-14)
        assert rep.flagged_fs_tuples >= 1
        assert rep.violations == 0

    def test_no_flags_in_large_h_branch(self):
        rep = verify_bounds([1], [-2], samples=5000, seed=3)
        assert rep.flagged_fs_tuples == 0

    def test_deterministic(self):
        a = verify_bounds([1, 3], [0.5], 2000, 9).to_json(include_elapsed=False)
        b = verify_bounds([1, 3], [0.5], 2000, 9).to_json(include_elapsed=False)
        assert a == b

    def test_seed_changes_draws(self):
        a = verify._draw_tuples(1, 0, 100)
        b = verify._draw_tuples(2, 0, 100)
        assert np.array_equal(a[0][:4], b[0][:4])
        assert not np.allclose(a[0][4:], b[0][4:])

    def test_cell_streams_independent_of_grid(self):
        # cell 0 draws the same tuples whatever else is on the grid
        a = verify_bounds([2], [1], 500, 4).checks["cells"][0]
        b = verify_bounds([2, 3], [1, 0], 500, 4).checks["cells"][0]
        assert a == b

    def test_rejects_small_lambda(self):
        with pytest.raises(ValueError):
            verify_bounds([0.5], [0], 10, 0)


class TestExpansions:
    def test_example_run(self):
        rep = verify_expansions(200, 7)
        assert rep.violations == 0
        assert rep.samples == 200
        for name in ("lhs_closed_form", "ghs_closed_form", "revert_first_terms", "ptilde_of_schwarz",
                     "c1_equals_minus_d1", "linear_system_a2_sq", "linear_system_a3"):
            assert rep.checks[name]["count"] == 200
            assert rep.checks[name]["violations"] == 0

    def test_order_floor(self):
        with pytest.raises(ValueError):
            verify_expansions(3, 0, order=2)


class TestShell:
    def test_default(self):
        rep = verify_shell()
        assert rep.violations == 0
        for name in ("fib_closed_form", "ptilde_coeff_law", "re_lower_bound", "curve_residual",
                     "curve_residual_at_i", "tau_power_identity"):
            assert name in rep.checks

    def test_single_point_grid(self):
        rep = verify_shell(radial=1, angular=1)
        assert rep.checks["re_grid_min"] == 1
        assert rep.violations == 0


class TestReport:
    def test_json_fields(self):
        rep = verify_bounds([1], [1], 10, 0)
        d = json.loads(rep.to_json())
        assert list(d)[: len(REPORT_FIELDS)] == REPORT_FIELDS
        assert "elapsed" in d
        assert "elapsed" not in json.loads(rep.to_json(include_elapsed=False))

    def test_merge_commutative_and_associative(self):
        a = verify_bounds([1], [0], 100, 1)
        b = verify_bounds([2], [0], 100, 2)
        c = verify_bounds([3], [0], 100, 3)
        keys = ["samples", "violations", "max_ratio_a2", "max_ratio_a3", "max_ratio_fs", "flagged_fs_tuples"]

        def pick(r):
            return [getattr(r, k) for k in keys]

        assert pick(merge(a, b)) == pick(merge(b, a))
        assert pick(merge(merge(a, b), c)) == pick(merge(a, merge(b, c)))

    def test_record_counts_violation(self):
        rep = VerifyReport("x", 0)
        rep.record("check", 2.0, 1.0)
        rep.record("check", 0.5, 1.0)
        assert rep.violations == 1
        assert rep.checks["check"]["worst"] == 2.0

    def test_run_suite(self):
        reps = run_suite("all", seed=1, samples=100)
        assert [r.suite for r in reps] == ["shell", "expansions", "bounds"]
        with pytest.raises(ValueError):
            run_suite("bogus")

    def test_extremal_tuples_listed(self):
        assert (2.0, 2.0) in verify.EXTREMAL_TUPLES
        assert (2.0, -2.0) in verify.EXTREMAL_TUPLES
