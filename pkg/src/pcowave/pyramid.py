"""Empirical wavelet coefficients organized as a multiresolution pyramid.

Coefficients are fitted once at the top resolution by direct evaluation of
the scaling function and propagated to every coarser level with the
orthonormal analysis filter bank; the two-scale relation commutes with
empirical averaging, so the filter-bank coefficients coincide with direct
per-level fits.  Levels are stored as dense arrays over short translate
windows derived from the data range.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .basis import WaveletBasis
from .errors import EmptySampleError, LevelRangeError


@dataclass(frozen=True)
class LevelCoeffs:
    """Dense coefficient block: ``values[i]`` belongs to translate ``start + i``."""

    start: int
    values: np.ndarray

    @property
    def stop(self) -> int:
        """One past the last translate index."""
        return self.start + len(self.values)

    def energy(self) -> float:
        return float(np.dot(self.values, self.values))


@dataclass(frozen=True)
class TopLevelFit:
    """Result of fitting empirical scaling coefficients at one level."""

    level: int
    coeffs: LevelCoeffs
    n: int
    data_lo: float
    data_hi: float


@dataclass(frozen=True)
class CoefficientPyramid:
    """Multiresolution decomposition of one empirical top-level fit.

    ``details[l]`` holds the detail coefficients of level ``l`` for
    ``l = 0..n_max-1``; ``alpha_windows[l]`` records the translate window the
    scaling coefficients of level ``l`` occupy, so synthesis reproduces the
    analysis layout exactly.
    """

    basis: WaveletBasis
    n: int
    n_max: int
    data_lo: float
    data_hi: float
    top_alpha: LevelCoeffs
    coarse_alpha: LevelCoeffs
    details: tuple
    alpha_windows: tuple
    detail_energy_suffix: np.ndarray  # suffix[N] = sum_{l >= N} ||beta_l||^2


def data_window(basis: WaveletBasis, level: int, lo: float, hi: float):
    """Translate window of possibly nonzero coefficients at one level."""
    A = basis.support_radius
    return (int(np.floor(np.ldexp(lo, level))) - A,
            int(np.ceil(np.ldexp(hi, level))) + A)


def fit_top_level(basis: WaveletBasis, sample, n_max: int,
                  window=None) -> TopLevelFit:
    """Empirical scaling coefficients at level ``n_max`` by direct evaluation.

    ``alpha_k = (1/n) sum_u 2**(N/2) phi(2**N x_u - k)`` for every ``k`` in
    the data window (or an explicit ``window=(k_lo, k_hi)``).
    """
    x = np.asarray(sample, dtype=float).ravel()
    if len(x) == 0:
        raise EmptySampleError("cannot fit coefficients on an empty sample")
    if n_max < 0:
        raise LevelRangeError(f"resolution level must be >= 0, got {n_max}")
    lo, hi = float(np.min(x)), float(np.max(x))
    k_lo, k_hi = window if window is not None else data_window(basis, n_max, lo, hi)
    values = _kernels.fit_coeffs(
        basis.phi_table, basis.grid_origin, 1.0 / basis.step,
        basis.is_step_function, basis.support_radius,
        x, int(n_max), int(k_lo), int(k_hi),
    )
    return TopLevelFit(int(n_max), LevelCoeffs(int(k_lo), values), len(x), lo, hi)


def pyramid_down(basis: WaveletBasis, top_alpha: TopLevelFit,
                 n_max: int) -> CoefficientPyramid:
    """Analysis filter bank from the top level down to level 0.

    ``alpha_{N-1,k} = sum_m h_{m-2k} alpha_{N,m}`` and
    ``beta_{N-1,k} = sum_m g_{m-2k} alpha_{N,m}`` (taps indexed in the
    centred frame); windows are clipped to the data window of each level,
    where all coefficients outside are structurally zero.
    """
    if n_max != top_alpha.level:
        raise LevelRangeError(
            f"top fit is at level {top_alpha.level}, expected {n_max}"
        )
    h, g = basis.lowpass, basis.highpass
    origin = -basis.shift
    ntaps = len(h)
    lo, hi = top_alpha.data_lo, top_alpha.data_hi

    windows = [None] * (n_max + 1)
    windows[n_max] = (top_alpha.coeffs.start, top_alpha.coeffs.stop - 1)
    details = [None] * n_max
    alpha = top_alpha.coeffs
    energies = np.zeros(n_max)
    for level in range(n_max, 0, -1):
        in_lo, in_hi = alpha.start, alpha.stop - 1
        reach_lo = int(np.ceil((in_lo - origin - (ntaps - 1)) / 2))
        reach_hi = int(np.floor((in_hi - origin) / 2))
        win_lo, win_hi = data_window(basis, level - 1, lo, hi)
        out_lo, out_hi = max(reach_lo, win_lo), min(reach_hi, win_hi)
        a_next = _kernels.analysis_step(alpha.values, alpha.start, h, origin,
                                        out_lo, out_hi)
        d_next = _kernels.analysis_step(alpha.values, alpha.start, g, origin,
                                        out_lo, out_hi)
        details[level - 1] = LevelCoeffs(out_lo, d_next)
        energies[level - 1] = float(np.dot(d_next, d_next))
        windows[level - 1] = (out_lo, out_hi)
        alpha = LevelCoeffs(out_lo, a_next)

    suffix = np.zeros(n_max + 1)
    suffix[:n_max] = np.cumsum(energies[::-1])[::-1]
    return CoefficientPyramid(
        basis=basis,
        n=top_alpha.n,
        n_max=n_max,
        data_lo=lo,
        data_hi=hi,
        top_alpha=top_alpha.coeffs,
        coarse_alpha=alpha,
        details=tuple(details),
        alpha_windows=tuple(windows),
        detail_energy_suffix=suffix,
    )


def fit_pyramid(basis: WaveletBasis, sample, n_max: int) -> CoefficientPyramid:
    """Fit at ``n_max`` and decompose: the one-call entry point."""
    return pyramid_down(basis, fit_top_level(basis, sample, n_max), n_max)


def level_alpha(pyramid: CoefficientPyramid, level: int) -> LevelCoeffs:
    """Scaling coefficients at ``level`` via the synthesis filter bank.

    ``alpha_{N,m} = sum_k h_{m-2k} alpha_{N-1,k} + sum_k g_{m-2k} beta_{N-1,k}``,
    reconstructed from the stored coarse block and details.
    """
    _check_level(pyramid, level)
    if level == pyramid.n_max:
        return pyramid.top_alpha
    basis = pyramid.basis
    origin = -basis.shift
    alpha = pyramid.coarse_alpha
    for l in range(level):
        beta = pyramid.details[l]
        out_lo, out_hi = pyramid.alpha_windows[l + 1]
        values = _kernels.synthesis_step(
            alpha.values, alpha.start, beta.values, beta.start,
            basis.lowpass, basis.highpass, origin, out_lo, out_hi,
        )
        alpha = LevelCoeffs(out_lo, values)
    return alpha


def distance_sq(pyramid: CoefficientPyramid, level: int) -> float:
    """``||f_hat_{n_max} - f_hat_N||^2 = sum_{l >= N} sum_k beta_{lk}^2``.

    Exact in coefficient space by orthonormality of the wavelet system.
    """
    _check_level(pyramid, level)
    return float(pyramid.detail_energy_suffix[level])


def total_energy(pyramid: CoefficientPyramid) -> tuple:
    """(top-level energy, coarse + detail energy) for the Parseval identity."""
    top = pyramid.top_alpha.energy()
    parts = pyramid.coarse_alpha.energy() + float(pyramid.detail_energy_suffix[0])
    return top, parts


def _check_level(pyramid: CoefficientPyramid, level: int) -> None:
    if not 0 <= level <= pyramid.n_max:
        raise LevelRangeError(
            f"level {level} outside pyramid range [0, {pyramid.n_max}]"
        )
