"""Pointwise and grid evaluation of the wavelet projection estimator."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .basis import WaveletBasis
from .errors import GridError
from .pyramid import (CoefficientPyramid, LevelCoeffs, TopLevelFit,
                      level_alpha)

DEFAULT_GRID_NODES = 2 ** 12


@dataclass(frozen=True)
class DensityEstimate:
    """Projection estimator at a fixed resolution level (scaling expansion)."""

    basis: WaveletBasis
    level: int
    coeffs: LevelCoeffs
    data_lo: float
    data_hi: float
    pyramid: Optional[CoefficientPyramid] = None

    def support(self) -> tuple:
        """Interval outside which the estimate is identically zero.

        Uses the exact scaling-function support and drops zero coefficients
        at the window edges; an identically-zero estimate reports its data
        range.
        """
        nonzero = np.nonzero(self.coeffs.values)[0]
        if len(nonzero) == 0:
            return (self.data_lo, self.data_hi)
        scale = 2.0 ** (-self.level)
        k_first = self.coeffs.start + int(nonzero[0])
        k_last = self.coeffs.start + int(nonzero[-1])
        return ((k_first + self.basis.support_lo) * scale,
                (k_last + self.basis.support_hi) * scale)


def estimate_at(pyramid: CoefficientPyramid, level: int) -> DensityEstimate:
    """Materialize ``f_hat_N`` from a fitted pyramid (synthesizing coefficients)."""
    return DensityEstimate(pyramid.basis, level, level_alpha(pyramid, level),
                           pyramid.data_lo, pyramid.data_hi, pyramid)


def estimate_from_fit(basis: WaveletBasis, fit: TopLevelFit) -> DensityEstimate:
    """Materialize the estimator from a direct single-level fit."""
    return DensityEstimate(basis, fit.level, fit.coeffs, fit.data_lo, fit.data_hi)


def evaluate(estimate: DensityEstimate, x):
    """``f_hat_N(x) = sum_k alpha_k 2**(N/2) phi(2**N x - k)``.

    A finite sum (at most ``2A + 1`` terms); may be negative — projection
    estimators are not constrained to be densities.
    """
    b = estimate.basis
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = _kernels.eval_expansion(
        estimate.coeffs.values, estimate.coeffs.start, estimate.level,
        b.phi_table, b.grid_origin, 1.0 / b.step, b.is_step_function,
        b.support_radius, arr,
    )
    if np.ndim(x) == 0:
        return float(out[0])
    return out


def evaluate_grid(estimate: DensityEstimate, grid) -> np.ndarray:
    """Evaluate on a strictly increasing uniform grid."""
    grid = np.asarray(grid, dtype=float)
    check_uniform_grid(grid)
    return evaluate(estimate, grid)


def check_uniform_grid(grid: np.ndarray) -> float:
    """Validate uniform spacing and return the step."""
    if grid.ndim != 1 or len(grid) < 2:
        raise GridError("grid must be a 1-d array with at least two nodes")
    steps = np.diff(grid)
    if steps[0] <= 0 or not np.allclose(steps, steps[0], rtol=1e-8, atol=0.0):
        raise GridError("grid must be strictly increasing and uniform")
    return float(steps[0])


def default_grid(estimate: DensityEstimate,
                 nodes: int = DEFAULT_GRID_NODES) -> np.ndarray:
    """Uniform grid spanning the data range padded by ``A * 2**-N``."""
    pad = estimate.basis.support_radius * 2.0 ** (-estimate.level)
    return np.linspace(estimate.data_lo - pad, estimate.data_hi + pad, nodes)


def evaluate_multires(pyramid: CoefficientPyramid, level: int, x) -> np.ndarray:
    """Equivalent coarse-plus-details form of the estimator.

    ``f_hat_N = sum_k alpha_{0k} phi_{0k} + sum_{l<N} sum_k beta_{lk} psi_{lk}``;
    used to confirm the two representations agree.
    """
    b = pyramid.basis
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    coarse = pyramid.coarse_alpha
    out = _kernels.eval_expansion(
        coarse.values, coarse.start, 0, b.phi_table, b.grid_origin,
        1.0 / b.step, b.is_step_function, b.support_radius, arr,
    )
    for l in range(level):
        d = pyramid.details[l]
        out += _kernels.eval_expansion(
            d.values, d.start, l, b.psi_table, b.grid_origin,
            1.0 / b.step, b.is_step_function, b.support_radius, arr,
        )
    return out


def clip_renormalize(grid: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Plotting-only post-processing: clip negatives, renormalize to mass one.

    Outside the risk pipeline by design — reported MISEs always use the raw
    projection estimator.
    """
    clipped = np.clip(values, 0.0, None)
    mass = np.trapezoid(clipped, grid)
    if mass <= 0:
        return clipped
    return clipped / mass
