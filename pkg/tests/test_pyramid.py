import numpy as np
import pytest

from pcowave.basis import build_basis, eval_phi, scaled_phi
from pcowave.errors import EmptySampleError, LevelRangeError
from pcowave.pyramid import (data_window, distance_sq, fit_pyramid,
                             fit_top_level, level_alpha, pyramid_down,
                             total_energy)

SQRT2 = np.sqrt(2.0)

TWO_POINTS = [0.25, 0.75]


def coeff_dict(block):
    return {k: v for k, v in zip(range(block.start, block.stop), block.values)}


class TestFitTopLevel:
    def test_haar_two_point_level_one(self, haar):
        fit = fit_top_level(haar, TWO_POINTS, 1)
        coeffs = coeff_dict(fit.coeffs)
        assert coeffs[0] == pytest.approx(SQRT2 / 2, abs=1e-15)
        assert coeffs[1] == pytest.approx(SQRT2 / 2, abs=1e-15)

    def test_haar_two_point_level_zero(self, haar):
        fit = fit_top_level(haar, TWO_POINTS, 0)
        assert coeff_dict(fit.coeffs)[0] == pytest.approx(1.0, abs=1e-15)

    def test_far_translates_are_zero(self, haar):
        fit = fit_top_level(haar, TWO_POINTS, 1, window=(50, 60))
        assert np.all(fit.coeffs.values == 0.0)

    def test_empty_sample(self, haar):
        with pytest.raises(EmptySampleError):
            fit_top_level(haar, [], 3)

    def test_negative_level(self, haar):
        with pytest.raises(LevelRangeError):
            fit_top_level(haar, TWO_POINTS, -1)

    def test_matches_scaled_phi_average(self, db4, rng):
        # definition check against the pointwise evaluator
        x = rng.normal(0.0, 1.0, 40)
        fit = fit_top_level(db4, x, 3)
        for k in range(fit.coeffs.start, fit.coeffs.stop, 7):
            direct = np.mean(scaled_phi(db4, 3, k, x))
            assert coeff_dict(fit.coeffs)[k] == pytest.approx(direct, abs=1e-12)


class TestPyramidDown:
    def test_haar_two_point(self, haar):
        pyr = fit_pyramid(haar, TWO_POINTS, 1)
        assert coeff_dict(pyr.coarse_alpha)[0] == pytest.approx(1.0, abs=1e-15)
        assert np.max(np.abs(pyr.details[0].values)) < 1e-15
        # direct-evaluation oracle at level 0 gives the same coefficients
        direct = fit_top_level(haar, TWO_POINTS, 0,
                               window=(pyr.coarse_alpha.start,
                                       pyr.coarse_alpha.stop - 1))
        assert pyr.coarse_alpha.values == pytest.approx(direct.coeffs.values,
                                                        abs=1e-15)

    def test_energy_parseval_two_point(self, haar):
        pyr = fit_pyramid(haar, TWO_POINTS, 1)
        top, parts = total_energy(pyr)
        assert top == pytest.approx((SQRT2 / 2) ** 2 * 2, abs=1e-15)
        assert parts == pytest.approx(top, abs=1e-14)

    def test_symmetric_sample_kills_details(self, haar):
        # equal halves around the dyadic midpoint: g-filter antisymmetry
        pyr = fit_pyramid(haar, [0.1, 0.9, 0.3, 0.7], 1)
        assert np.max(np.abs(pyr.details[0].values)) < 1e-15

    def test_level_mismatch(self, haar):
        fit = fit_top_level(haar, TWO_POINTS, 2)
        with pytest.raises(LevelRangeError):
            pyramid_down(haar, fit, 3)

    @pytest.mark.parametrize("order", [1, 2, 4])
    def test_energy_conservation(self, order, rng):
        basis = build_basis(order, 12)
        for _ in range(5):
            x = rng.normal(0.0, 1.0, 300)
            pyr = fit_pyramid(basis, x, 5)
            top, parts = total_energy(pyr)
            assert abs(top - parts) <= 1e-10 * top

    def test_windows_cover_data_window(self, db4, rng):
        x = rng.normal(0.0, 1.0, 200)
        pyr = fit_pyramid(db4, x, 4)
        for level in range(5):
            k_lo, k_hi = data_window(db4, level, pyr.data_lo, pyr.data_hi)
            w_lo, w_hi = pyr.alpha_windows[level]
            assert w_lo >= k_lo and w_hi <= k_hi

    def test_coefficients_outside_window_vanish(self, db4, rng):
        # fitting with a deliberately wider window only adds zeros
        x = rng.normal(0.0, 1.0, 100)
        k_lo, k_hi = data_window(db4, 3, float(np.min(x)), float(np.max(x)))
        fit = fit_top_level(db4, x, 3, window=(k_lo - 10, k_hi + 10))
        values = fit.coeffs.values
        assert np.all(values[:10] == 0.0)
        assert np.all(values[-10:] == 0.0)


class TestLevelAlpha:
    def test_round_trip_to_top(self, db4, rng):
        x = rng.normal(0.0, 1.0, 500)
        pyr = fit_pyramid(db4, x, 6)
        rebuilt = level_alpha(pyr, 6)
        assert rebuilt.start == pyr.top_alpha.start
        assert np.max(np.abs(rebuilt.values - pyr.top_alpha.values)) <= 1e-12

    def test_level_zero_is_coarse(self, db4, rng):
        x = rng.normal(0.0, 1.0, 100)
        pyr = fit_pyramid(db4, x, 3)
        assert level_alpha(pyr, 0) is pyr.coarse_alpha

    def test_haar_two_point_synthesis(self, haar):
        pyr = fit_pyramid(haar, TWO_POINTS, 1)
        alpha = coeff_dict(level_alpha(pyr, 1))
        assert alpha[0] == pytest.approx(SQRT2 / 2, abs=1e-15)
        assert alpha[1] == pytest.approx(SQRT2 / 2, abs=1e-15)

    def test_out_of_range(self, haar):
        pyr = fit_pyramid(haar, TWO_POINTS, 1)
        with pytest.raises(LevelRangeError):
            level_alpha(pyr, 2)
        with pytest.raises(LevelRangeError):
            level_alpha(pyr, -1)


class TestDirectPyramidEquivalence:
    # (order, table depth, tolerance): db2 needs the deep table
    CASES = [(1, 12, 1e-12), (2, 18, 1e-5), (4, 12, 1e-5)]

    @pytest.mark.parametrize("order,depth,tol", CASES)
    def test_equivalence(self, order, depth, tol):
        basis = build_basis(order, depth)
        rng = np.random.default_rng(999 + order)
        for trial in range(20):
            n_max = int(rng.integers(2, 7))
            x = rng.normal(0.0, 1.0, int(rng.integers(20, 201)))
            pyr = fit_pyramid(basis, x, n_max)
            for level in range(n_max):
                window = pyr.alpha_windows[level]
                direct = fit_top_level(basis, x, level,
                                       window=(window[0], window[1]))
                dev = np.max(np.abs(level_alpha(pyr, level).values
                                    - direct.coeffs.values))
                assert dev <= tol


class TestDistanceSq:
    def test_top_level_zero(self, db4, rng):
        pyr = fit_pyramid(db4, rng.normal(0, 1, 50), 4)
        assert distance_sq(pyr, 4) == 0.0

    def test_haar_two_point(self, haar):
        pyr = fit_pyramid(haar, TWO_POINTS, 1)
        assert distance_sq(pyr, 0) == pytest.approx(0.0, abs=1e-28)

    def test_monotone_nonincreasing(self, db2, rng):
        for _ in range(5):
            pyr = fit_pyramid(db2, rng.normal(0, 1, 200), 6)
            values = [distance_sq(pyr, N) for N in range(7)]
            assert all(a >= b - 1e-15 for a, b in zip(values, values[1:]))

    def test_equals_detail_energy_sum(self, db4, rng):
        pyr = fit_pyramid(db4, rng.normal(0, 1, 150), 5)
        for N in range(6):
            expected = sum(pyr.details[l].energy() for l in range(N, 5))
            assert distance_sq(pyr, N) == pytest.approx(expected, rel=1e-12)

    def test_out_of_range(self, haar):
        pyr = fit_pyramid(haar, TWO_POINTS, 1)
        with pytest.raises(LevelRangeError):
            distance_sq(pyr, 5)


class TestUnbiasedness:
    def test_monte_carlo_coefficient_means(self, db2):
        # alpha-hat averages approach the true projection coefficients
        from tests._densities import Triangle

        model = Triangle()
        level, reps, n = 2, 2000, 60
        window = data_window(db2, level, 0.0, 1.0)
        width = window[1] - window[0] + 1
        acc = np.zeros((reps, width))
        for r in range(reps):
            x = model.sample(n, [505, r])
            acc[r] = fit_top_level(db2, x, level, window=window).coeffs.values
        mean = acc.mean(axis=0)
        se = acc.std(axis=0, ddof=1) / np.sqrt(reps)
        # quadrature oracle for the true coefficients
        grid = np.linspace(-2.0, 3.0, 2 ** 15)
        pdf = model.pdf(grid)
        for i, k in enumerate(range(window[0], window[1] + 1)):
            truth = np.trapezoid(pdf * scaled_phi(db2, level, k, grid), grid)
            assert abs(mean[i] - truth) <= 3.0 * se[i] + 1e-9
