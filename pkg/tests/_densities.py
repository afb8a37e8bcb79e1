"""Ad-hoc test densities implementing the model protocol (pdf/cdf/sample/support)."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Uniform01:
    label: str = "uniform01"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= 0) & (x < 1), 1.0, 0.0)

    def cdf(self, x):
        return np.clip(np.asarray(x, dtype=float), 0.0, 1.0)

    def support(self):
        return (0.0, 1.0)

    def sample(self, n, seed):
        return np.random.default_rng(seed).random(n)


@dataclass(frozen=True)
class Staircase:
    """Piecewise-constant density: 1.5 on [0, 1/3), 0.75 on [1/3, 1)."""

    label: str = "staircase"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= 0) & (x < 1 / 3), 1.5,
                        np.where((x >= 1 / 3) & (x < 1), 0.75, 0.0))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip(np.where(x < 1 / 3, 1.5 * x, 0.5 + 0.75 * (x - 1 / 3)),
                       0.0, 1.0)

    def support(self):
        return (0.0, 1.0)

    def sample(self, n, seed):
        u = np.random.default_rng(seed).random(n)
        return np.where(u < 0.5, u / 1.5, 1 / 3 + (u - 0.5) / 0.75)


@dataclass(frozen=True)
class Triangle:
    """Tent density on [0, 1]: Lipschitz, the r = 1 case for the Haar system."""

    label: str = "triangle"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= 0) & (x < 0.5), 4 * x,
                        np.where((x >= 0.5) & (x < 1), 4 * (1 - x), 0.0))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        lo = 2.0 * np.clip(x, 0.0, 0.5) ** 2
        hi = 1.0 - 2.0 * (1.0 - np.clip(x, 0.5, 1.0)) ** 2
        return np.where(x < 0.5, lo, hi)

    def support(self):
        return (0.0, 1.0)

    def sample(self, n, seed):
        u = np.random.default_rng(seed).random(n)
        return np.where(u < 0.5, np.sqrt(u / 2.0), 1.0 - np.sqrt((1.0 - u) / 2.0))
