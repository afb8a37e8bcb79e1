import numpy as np
import pytest

from pcowave.basis import build_basis, phi_mass
from pcowave.errors import GridError
from pcowave.estimator import (clip_renormalize, default_grid, estimate_at,
                               estimate_from_fit, evaluate, evaluate_grid,
                               evaluate_multires)
from pcowave.pyramid import fit_pyramid, fit_top_level

TWO_POINTS = [0.25, 0.75]


class TestEvaluate:
    def test_haar_two_point_level_zero(self, haar):
        est = estimate_at(fit_pyramid(haar, TWO_POINTS, 1), 0)
        for x in (0.0, 0.3, 0.999):
            assert evaluate(est, x) == pytest.approx(1.0, abs=1e-14)

    def test_haar_two_point_level_one(self, haar):
        est = estimate_at(fit_pyramid(haar, TWO_POINTS, 1), 1)
        for x in (0.1, 0.6, 0.95):
            assert evaluate(est, x) == pytest.approx(1.0, abs=1e-14)

    def test_zero_outside_support(self, db4, rng):
        est = estimate_at(fit_pyramid(db4, rng.normal(0, 1, 100), 2), 2)
        lo, hi = est.support()
        assert evaluate(est, lo - 0.5) == 0.0
        assert evaluate(est, hi + 0.5) == 0.0

    def test_projection_can_go_negative(self, db2):
        est = estimate_from_fit(db2, fit_top_level(db2, [0.5], 2))
        grid = np.linspace(*est.support(), 512)
        assert np.min(evaluate(est, grid)) < 0.0


class TestEvaluateGrid:
    def test_constant_one_haar_on_quarter_grid(self, haar):
        est = estimate_at(fit_pyramid(haar, TWO_POINTS, 1), 0)
        values = evaluate_grid(est, np.array([0.0, 0.25, 0.5, 0.75, 1.0]))
        assert values == pytest.approx([1, 1, 1, 1, 0], abs=1e-14)

    def test_grid_outside_support(self, haar):
        est = estimate_at(fit_pyramid(haar, TWO_POINTS, 1), 0)
        assert np.all(evaluate_grid(est, np.linspace(5, 6, 32)) == 0.0)

    def test_nonuniform_grid_rejected(self, haar):
        est = estimate_at(fit_pyramid(haar, TWO_POINTS, 1), 0)
        with pytest.raises(GridError):
            evaluate_grid(est, np.array([0.0, 0.1, 0.3, 0.35]))
        with pytest.raises(GridError):
            evaluate_grid(est, np.array([0.5, 0.4, 0.3]))


class TestParseval:
    @pytest.mark.parametrize("order,level", [(1, 2), (4, 3), (10, 2)])
    def test_quadrature_energy_matches_coefficients(self, order, level, rng):
        basis = build_basis(order, 12)
        x = rng.normal(0.0, 1.0, 250)
        est = estimate_at(fit_pyramid(basis, x, level), level)
        lo, hi = est.support()
        step_target = 2.0 ** (-(level + 4))
        nodes = max(int(np.ceil((hi - lo) / step_target)) + 1, 2 ** 12)
        grid = np.linspace(lo, hi, nodes)
        vals = evaluate_grid(est, grid)
        quad = np.trapezoid(vals * vals, grid)
        coeff = est.coeffs.energy()
        assert quad == pytest.approx(coeff, rel=1e-3)


class TestFormEquivalence:
    @pytest.mark.parametrize("order,depth,tol", [(1, 12, 1e-12), (4, 14, 1e-6),
                                                 (10, 12, 1e-6)])
    def test_scaling_vs_multires_expansion(self, order, depth, tol):
        basis = build_basis(order, depth)
        rng = np.random.default_rng(31 + order)
        x = rng.normal(0.0, 1.0, 200)
        pyr = fit_pyramid(basis, x, 4)
        est = estimate_at(pyr, 4)
        pts = rng.uniform(*est.support(), 1000)
        direct = evaluate(est, pts)
        two_form = evaluate_multires(pyr, 4, pts)
        assert np.max(np.abs(direct - two_form)) <= tol


class TestMassConsistency:
    @pytest.mark.parametrize("order", [1, 4, 10])
    def test_quadrature_mass_matches_coefficient_mass(self, order, rng):
        basis = build_basis(order, 12)
        x = rng.normal(0.0, 1.0, 400)
        level = 2
        est = estimate_at(fit_pyramid(basis, x, level), level)
        lo, hi = est.support()
        grid = np.linspace(lo, hi, 2 ** 14)
        quad_mass = np.trapezoid(evaluate_grid(est, grid), grid)
        coeff_mass = np.sum(est.coeffs.values) * 2.0 ** (-level / 2.0) * phi_mass(basis)
        assert quad_mass == pytest.approx(coeff_mass, abs=1e-3)


def test_default_grid_spans_padded_data_range(db4, rng):
    x = rng.normal(0.0, 1.0, 64)
    est = estimate_at(fit_pyramid(db4, x, 3), 3)
    grid = default_grid(est)
    pad = db4.support_radius * 2.0 ** (-3)
    assert len(grid) == 2 ** 12
    assert grid[0] == pytest.approx(np.min(x) - pad)
    assert grid[-1] == pytest.approx(np.max(x) + pad)


def test_clip_renormalize_masses_to_one(db2):
    est = estimate_from_fit(db2, fit_top_level(db2, [0.4, 0.5, 0.61], 3))
    grid = np.linspace(*est.support(), 2 ** 12)
    vals = evaluate_grid(est, grid)
    fixed = clip_renormalize(grid, vals)
    assert np.all(fixed >= 0.0)
    assert np.trapezoid(fixed, grid) == pytest.approx(1.0, rel=1e-9)
