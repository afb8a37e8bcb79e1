"""Integrated squared error, Monte Carlo risk studies and statistical checks.

The module carries the empirical counterparts of the theory: trapezoid
quadrature of the squared error, the replication-averaged MISE, the
closed-form variance bound, the bias-decay slope, the coefficient
concentration frequencies and the MISE-vs-n rate slope.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .basis import WaveletBasis
from .errors import ConfigurationError, CoverageError
from .estimator import (check_uniform_grid, estimate_at, estimate_from_fit,
                        evaluate_grid)
from .pyramid import data_window, fit_pyramid, fit_top_level
from .selection import PcoConfig, candidate_set, select

QUADRATURE_NODES = 2 ** 14 + 1
COVERAGE_TOLERANCE = 1e-6


# ---------------------------------------------------------------------------
# quadrature and ISE
# ---------------------------------------------------------------------------

def risk_grid(model, estimate=None, nodes: int = QUADRATURE_NODES,
              pad: float = 0.0) -> np.ndarray:
    """Uniform grid covering the model's effective support (and the
    estimate's support when given), optionally padded on both sides."""
    lo, hi = model.support()
    if estimate is not None:
        elo, ehi = estimate.support()
        lo, hi = min(lo, elo), max(hi, ehi)
    return np.linspace(lo - pad, hi + pad, nodes)


def ise(estimate, model, grid) -> float:
    """Composite-trapezoid quadrature of ``(f_hat - f)^2`` over ``grid``."""
    grid = np.asarray(grid, dtype=float)
    step = check_uniform_grid(grid)
    tail_mass = float(model.cdf(grid[0]) + (1.0 - model.cdf(grid[-1])))
    if tail_mass > COVERAGE_TOLERANCE:
        raise CoverageError(
            f"model mass {tail_mass:.2e} beyond the grid endpoints"
        )
    elo, ehi = estimate.support()
    if elo < grid[0] - step or ehi > grid[-1] + step:
        raise CoverageError("grid does not cover the estimate support")
    diff = evaluate_grid(estimate, grid) - model.pdf(grid)
    return float(np.trapezoid(diff * diff, dx=step))


# ---------------------------------------------------------------------------
# Monte Carlo MISE study
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RiskReport:
    """Replication-level ISEs with summary statistics and settings echo."""

    model: str
    n: int
    reps: int
    lam: float
    vanishing_moments: int
    level_cap: int
    cascade_depth: int
    seed: int
    ise_values: np.ndarray
    mise_mean: float
    mise_sd: float  # nan when reps < 2
    selected_counts: dict
    quartiles: tuple

    @property
    def selected_mode(self) -> int:
        """Most frequent selected level (smallest on ties)."""
        best = min(self.selected_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return int(best[0])

    def to_json_dict(self) -> dict:
        return {
            "model": self.model,
            "n": self.n,
            "reps": self.reps,
            "lambda": self.lam,
            "vanishing_moments": self.vanishing_moments,
            "level_cap": self.level_cap,
            "cascade_depth": self.cascade_depth,
            "seed": self.seed,
            "ise": [float(v) for v in self.ise_values],
            "mise_mean": float(self.mise_mean),
            "mise_sd": float(self.mise_sd),
            "selected_histogram": {str(k): int(v)
                                   for k, v in sorted(self.selected_counts.items())},
            "ise_quartiles": [float(q) for q in self.quartiles],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    def csv_row(self) -> str:
        """One-row CSV matching the benchmark table layout (model, mise)."""
        return f"{self.model},{self.mise_mean:.12e}"


def worker_count() -> int:
    """Replication worker cap from the PCO_THREADS environment variable."""
    try:
        return max(1, int(os.environ.get("PCO_THREADS", "1")))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    workers = worker_count()
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def mise_study(model, n: int, reps: int, cfg: PcoConfig, basis: WaveletBasis,
               seed: int) -> RiskReport:
    """Sample/fit/select/score ``reps`` times and aggregate.

    Replication ``r`` draws from the stream seeded by ``(seed, r)``;
    aggregation is an ordered reduction, so reports are bitwise
    reproducible for identical settings.
    """
    if reps < 1:
        raise ConfigurationError(f"need at least one replication, got {reps}")
    cfg_n = replace(cfg, n=n)
    candidates = candidate_set(n, cfg.level_cap)
    n_max = int(candidates[-1])

    def one(rep: int):
        x = model.sample(n, [seed, rep])
        pyramid = fit_pyramid(basis, x, n_max)
        report = select(pyramid, cfg_n, basis, candidates)
        est = estimate_at(pyramid, report.selected)
        return ise(est, model, risk_grid(model, est)), report.selected

    results = _map_ordered(one, range(reps))
    ises = np.array([r[0] for r in results])
    counts = {}
    for _, sel in results:
        counts[sel] = counts.get(sel, 0) + 1
    mise_sd = float(np.std(ises, ddof=1)) if reps > 1 else float("nan")
    return RiskReport(
        model=model.label,
        n=n,
        reps=reps,
        lam=cfg.lam,
        vanishing_moments=basis.vanishing_moments,
        level_cap=cfg.level_cap,
        cascade_depth=basis.cascade_depth,
        seed=seed,
        ise_values=ises,
        mise_mean=float(np.mean(ises)),
        mise_sd=mise_sd,
        selected_counts=counts,
        quartiles=tuple(float(q) for q in
                        np.quantile(ises, [0.0, 0.25, 0.5, 0.75, 1.0])),
    )


# ---------------------------------------------------------------------------
# variance bound (empirical against the closed form)
# ---------------------------------------------------------------------------

def variance_bound_check(model, basis: WaveletBasis, level: int, n: int,
                         reps: int, seed: int = 0) -> tuple:
    """Empirical ``V_N`` versus the bound ``(2^N/n)(2A+1)^2 ||phi||_inf^2``.

    The empirical variance is computed in coefficient space,
    ``sum_k Var(alpha_hat_{N,k})`` over replications, which equals
    ``E || f_hat_N - mean f_hat_N ||^2`` by orthonormality.
    """
    if reps < 100:
        raise ConfigurationError(f"need reps >= 100, got {reps}")
    lo, hi = model.support()
    window = data_window(basis, level, lo, hi)
    width = window[1] - window[0] + 1
    coeffs = np.empty((reps, width))
    for r in range(reps):
        x = model.sample(n, [seed, r])
        coeffs[r] = fit_top_level(basis, x, level, window=window).coeffs.values
    empirical = float(np.sum(np.var(coeffs, axis=0, ddof=1)))
    A = basis.support_radius
    bound = (2.0 ** level / n) * (2 * A + 1) ** 2 * basis.phi_sup ** 2
    return empirical, bound


# ---------------------------------------------------------------------------
# bias decay
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BiasDecayResult:
    levels: tuple
    bias_proxies: np.ndarray
    noise_floors: np.ndarray
    variance_estimates: np.ndarray
    used_levels: tuple      # levels whose proxy cleared the noise floor
    slope: float            # OLS slope of log2(proxy) vs level; nan if < 2 usable


def bias_decay_check(model, basis: WaveletBasis, levels, n_large: int,
                     seed: int = 0) -> BiasDecayResult:
    """Squared-bias proxy per level and its fitted log2 slope.

    One sample of size ``n_large``; at each level the proxy is the
    quadrature ISE minus the estimated variance ``sum_k Var(alpha_hat_k)``.
    Levels whose proxy falls below the stochastic noise floor are truncated
    before the slope fit.
    """
    levels = [int(l) for l in levels]
    if n_large < 10 ** 5:
        raise ConfigurationError(f"need n_large >= 1e5, got {n_large}")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ConfigurationError("levels must be strictly ascending")
    x = model.sample(n_large, seed)
    # pad for the widest estimate support among the requested levels
    pad = basis.support_radius * 2.0 ** (-levels[0]) + 1.0
    grid = risk_grid(model, nodes=2 ** 16 + 1, pad=pad)
    sq_table = basis.phi_table ** 2
    n = n_large

    proxies, floors, variances = [], [], []
    for N in levels:
        fit = fit_top_level(basis, x, N)
        est = estimate_from_fit(basis, fit)
        ise_n = ise(est, model, grid)
        # second empirical moment of phi_{N,k}(X) per translate, via the
        # squared table: m2_k = (1/n) sum_u 2^N phi(2^N x - k)^2
        m2 = 2.0 ** (N / 2.0) * _kernels.fit_coeffs(
            sq_table, basis.grid_origin, 1.0 / basis.step,
            basis.is_step_function, basis.support_radius,
            x, N, fit.coeffs.start, fit.coeffs.stop - 1,
        )
        v_k = (m2 - fit.coeffs.values ** 2) / (n - 1)
        var_n = float(np.sum(v_k))
        proxy = ise_n - var_n
        # realization noise of ||f_hat - f_N||^2 plus the bias-interaction term
        noise = math.sqrt(2.0 * float(np.sum(v_k ** 2)))
        noise += 2.0 * math.sqrt(max(proxy, 0.0) * float(np.max(v_k)))
        floors.append(3.0 * noise + 1e-11)
        proxies.append(proxy)
        variances.append(var_n)

    proxies = np.array(proxies)
    floors = np.array(floors)
    usable = [l for l, p, f in zip(levels, proxies, floors) if p > f]
    if len(usable) >= 2:
        mask = np.array([l in usable for l in levels])
        slope = _ols_slope(np.array(usable, dtype=float),
                           np.log2(proxies[mask]))
    else:
        slope = float("nan")
    return BiasDecayResult(tuple(levels), proxies, floors,
                           np.array(variances), tuple(usable), slope)


def _ols_slope(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    return float(np.dot(xc, y) / np.dot(xc, xc))


# ---------------------------------------------------------------------------
# concentration of empirical coefficient sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcentrationResult:
    freq_any: float
    freq_scaling: float
    freq_detail: float
    threshold_scaling: float
    threshold_detail: float


def _folded_period(basis: WaveletBasis, table: np.ndarray,
                   squared: bool = False) -> np.ndarray:
    """One period (plus wrap node) of ``sum_m T(y + m)`` on the dyadic grid."""
    step_count = 2 ** basis.cascade_depth
    src = table[:-1] ** 2 if squared else table[:-1]
    period = src.reshape(-1, step_count).sum(axis=0)
    return np.append(period, period[0])


def _periodic_eval(period: np.ndarray, basis: WaveletBasis, x: np.ndarray):
    frac = np.mod(x, 1.0)
    return _kernels.interp_table(period, 0.0, 2.0 ** basis.cascade_depth,
                                 basis.is_step_function, frac)


def concentration_check(model, basis: WaveletBasis, level: int, n: int,
                        reps: int, threshold_constant: float,
                        seed: int = 0) -> ConcentrationResult:
    """Exceedance frequency of centred coefficient-sum deviations.

    Per replication the statistics are the sample means of
    ``sum_k phi(X - k)`` and ``sum_{l<N} sum_k psi_{lk}(X)`` minus their
    expectations, compared against ``c sqrt(log n (2A+1)^2 Phi0^2 / n)``
    and the detail analogue carrying the ``4^N`` factor.
    """
    if reps < 1000:
        raise ConfigurationError(f"need reps >= 1000, got {reps}")
    A = basis.support_radius
    c = float(threshold_constant)
    base = math.log(n) * (2 * A + 1) ** 2 * basis.phi0 ** 2 / n
    t_phi = c * math.sqrt(base)
    t_psi = c * math.sqrt(base * 4.0 ** level)

    phi_period = _folded_period(basis, basis.phi_table)
    psi_period = _folded_period(basis, basis.psi_table)

    def stat_phi(x):
        return _periodic_eval(phi_period, basis, x)

    def stat_psi(x):
        acc = np.zeros(np.shape(x))
        for l in range(level):
            acc += 2.0 ** (l / 2.0) * _periodic_eval(psi_period, basis,
                                                     np.ldexp(x, l))
        return acc

    quad = risk_grid(model, nodes=2 ** 16 + 1)
    fq = model.pdf(quad)
    mean_phi = float(np.trapezoid(fq * stat_phi(quad), quad))
    mean_psi = float(np.trapezoid(fq * stat_psi(quad), quad))

    hits_phi = hits_psi = hits_any = 0
    for r in range(reps):
        x = model.sample(n, [seed, r])
        dev_phi = abs(float(np.mean(stat_phi(x))) - mean_phi)
        dev_psi = abs(float(np.mean(stat_psi(x))) - mean_psi)
        ex_phi = dev_phi > t_phi
        ex_psi = dev_psi > t_psi
        hits_phi += ex_phi
        hits_psi += ex_psi
        hits_any += ex_phi or ex_psi
    return ConcentrationResult(
        freq_any=hits_any / reps,
        freq_scaling=hits_phi / reps,
        freq_detail=hits_psi / reps,
        threshold_scaling=t_phi,
        threshold_detail=t_psi,
    )


# ---------------------------------------------------------------------------
# convergence rate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RateResult:
    n_values: tuple
    mise_values: np.ndarray
    mise_sds: np.ndarray
    slope: float


def rate_check(model, n_list, cfg: PcoConfig, basis: WaveletBasis,
               reps: int, seed: int = 0) -> RateResult:
    """OLS slope of ``log MISE`` against ``log n`` over a geometric n-list."""
    ns = [int(n) for n in n_list]
    if len(ns) < 4:
        raise ConfigurationError("need at least 4 sample sizes")
    ratios = [b / a for a, b in zip(ns, ns[1:])]
    if any(abs(r - ratios[0]) > 1e-9 * ratios[0] for r in ratios):
        raise ConfigurationError("sample sizes must form a geometric sequence")
    reports = [mise_study(model, n, reps, cfg, basis, seed=seed + i)
               for i, n in enumerate(ns)]
    mises = np.array([rep.mise_mean for rep in reports])
    sds = np.array([rep.mise_sd for rep in reports])
    slope = _ols_slope(np.log(np.array(ns, dtype=float)), np.log(mises))
    return RateResult(tuple(ns), mises, sds, slope)
