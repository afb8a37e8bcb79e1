"""Data-driven resolution selection by penalized comparison to overfitting.

Each candidate estimator is compared to the most overfitted one through
``||f_hat_Nmax - f_hat_N||^2`` and corrected by the explicit penalty

    pen(N) = (2A+1)^2 Phi0^2 (lambda 2^(N+1) - (Nmax - N) 2^Nmax) / n,

which may be negative; the selected level minimizes the criterion, ties
broken toward the smallest level.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .basis import WaveletBasis
from .errors import ConfigurationError, SampleSizeError
from .pyramid import CoefficientPyramid, distance_sq

DEFAULT_LAMBDA = 10.0
DEFAULT_LEVEL_CAP = 15


@dataclass(frozen=True)
class PcoConfig:
    """Tuning knobs of the selection rule."""

    lam: float = DEFAULT_LAMBDA
    level_cap: int = DEFAULT_LEVEL_CAP
    n: int = 0

    def __post_init__(self):
        if not self.lam > 0:
            raise ConfigurationError(f"lambda must be positive, got {self.lam}")
        if self.level_cap < 1:
            raise ConfigurationError(
                f"level cap must be at least 1, got {self.level_cap}"
            )


@dataclass(frozen=True)
class SelectionReport:
    """Per-level criterion table and the selected resolution."""

    lam: float
    n_max: int
    candidates: tuple
    distances: np.ndarray
    penalties: np.ndarray
    criteria: np.ndarray
    selected: int

    def to_json_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "candidates": [
                {
                    "N": int(N),
                    "distance": float(d),
                    "penalty": float(p),
                    "criterion": float(c),
                }
                for N, d, p, c in zip(self.candidates, self.distances,
                                      self.penalties, self.criteria)
            ],
            "selected": int(self.selected),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)


def candidate_set(n: int, level_cap: int = DEFAULT_LEVEL_CAP,
                  min_level: int = 1) -> np.ndarray:
    """Candidate levels ``{min_level, ..., min(ceil(n/log n) - 1, level_cap)}``.

    The theoretical collection keeps every level below ``n / log n``; the
    cap bounds the top resolution so coefficient windows stay in memory.
    """
    if n < 2:
        raise SampleSizeError(f"need a sample of size >= 2, got n={n}")
    top = min(math.ceil(n / math.log(n)) - 1, int(level_cap))
    if top < min_level:
        raise ConfigurationError(
            f"empty candidate set: n={n} admits no level >= {min_level}"
        )
    return np.arange(min_level, top + 1)


def penalty(cfg: PcoConfig, basis: WaveletBasis, level: int, n_max: int) -> float:
    """Explicit penalty at ``level``; negative values are kept as written."""
    if level > n_max:
        raise ConfigurationError(f"level {level} above n_max={n_max}")
    if cfg.n < 1:
        raise SampleSizeError("config must carry the sample size n")
    A = basis.support_radius
    scale = (2 * A + 1) ** 2 * basis.phi0 ** 2
    return scale * (cfg.lam * 2.0 ** (level + 1)
                    - (n_max - level) * 2.0 ** n_max) / cfg.n


def criterion(pyramid: CoefficientPyramid, cfg: PcoConfig,
              basis: WaveletBasis, level: int) -> float:
    """``Crit(N) = ||f_hat_Nmax - f_hat_N||^2 + pen(N)``."""
    return distance_sq(pyramid, level) + penalty(cfg, basis, level, pyramid.n_max)


def select(pyramid: CoefficientPyramid, cfg: PcoConfig, basis: WaveletBasis,
           candidates=None) -> SelectionReport:
    """Minimize the criterion over the candidate set.

    ``candidates`` defaults to ``candidate_set(cfg.n, cfg.level_cap)`` and
    must top out at the pyramid's fitted level.
    """
    if candidates is None:
        candidates = candidate_set(cfg.n, cfg.level_cap)
    cand = np.asarray(candidates, dtype=int)
    if len(cand) == 0:
        raise ConfigurationError("empty candidate set")
    if int(np.max(cand)) != pyramid.n_max:
        raise ConfigurationError(
            f"pyramid fitted at level {pyramid.n_max}, but candidates top out"
            f" at {int(np.max(cand))}"
        )
    dists = np.array([distance_sq(pyramid, int(N)) for N in cand])
    pens = np.array([penalty(cfg, basis, int(N), pyramid.n_max) for N in cand])
    crits = dists + pens
    best = int(np.argmin(crits))  # first minimum -> smallest level on ties
    return SelectionReport(
        lam=cfg.lam,
        n_max=pyramid.n_max,
        candidates=tuple(int(N) for N in cand),
        distances=dists,
        penalties=pens,
        criteria=crits,
        selected=int(cand[best]),
    )
