"""Benchmark densities with exact pdf/cdf evaluation and seeded sampling.

The three standard test models: a unit Gaussian, a two-component Gaussian
mixture (multimodal, heteroscedastic) and a Beta(2,5) (bounded support,
sharp boundary behaviour), plus custom two-component Gaussian mixtures
parsed from ``mix:w,mu1,var1,mu2,var2`` strings.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import ModelParameterError, SampleSizeError

PDF_FLOOR = 1e-12  # effective support boundary
SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Gaussian:
    mean: float = 0.0
    sd: float = 1.0
    label: str = field(default="gaussian", compare=False)

    def __post_init__(self):
        if not self.sd > 0:
            raise ModelParameterError(f"standard deviation must be > 0, got {self.sd}")

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / self.sd
        return np.exp(-0.5 * z * z) / (self.sd * SQRT_2PI)

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / (self.sd * math.sqrt(2.0))
        return 0.5 * (1.0 + special.erf(z))

    def support(self):
        # pdf falls below PDF_FLOOR beyond z*
        z = math.sqrt(-2.0 * math.log(PDF_FLOOR * self.sd * SQRT_2PI))
        return (self.mean - z * self.sd, self.mean + z * self.sd)

    def sample(self, n, seed):
        rng = _check_and_rng(n, seed)
        return self.mean + self.sd * rng.standard_normal(n)


@dataclass(frozen=True)
class GaussianMixture:
    """Mixture of two Gaussians; ``weight`` is the probability of the first."""

    weight: float
    first: Gaussian
    second: Gaussian
    label: str = field(default="gaussian-mixture", compare=False)

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise ModelParameterError(f"weight must lie in [0, 1], got {self.weight}")

    def pdf(self, x):
        return self.weight * self.first.pdf(x) + (1.0 - self.weight) * self.second.pdf(x)

    def cdf(self, x):
        return self.weight * self.first.cdf(x) + (1.0 - self.weight) * self.second.cdf(x)

    def support(self):
        lo1, hi1 = self.first.support()
        lo2, hi2 = self.second.support()
        return (min(lo1, lo2), max(hi1, hi2))

    def sample(self, n, seed):
        rng = _check_and_rng(n, seed)
        pick_first = rng.random(n) < self.weight
        z1 = self.first.mean + self.first.sd * rng.standard_normal(n)
        z2 = self.second.mean + self.second.sd * rng.standard_normal(n)
        return np.where(pick_first, z1, z2)


@dataclass(frozen=True)
class Beta:
    a: float
    b: float
    label: str = field(default="beta", compare=False)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ModelParameterError(
                f"Beta shape parameters must be > 0, got ({self.a}, {self.b})"
            )

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x > 0.0) & (x < 1.0)
        xi = np.clip(x, 1e-300, 1.0 - 1e-16)
        vals = xi ** (self.a - 1.0) * (1.0 - xi) ** (self.b - 1.0) / special.beta(self.a, self.b)
        return np.where(inside, vals, 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return special.betainc(self.a, self.b, np.clip(x, 0.0, 1.0))

    def support(self):
        return (0.0, 1.0)

    def sample(self, n, seed):
        rng = _check_and_rng(n, seed)
        return rng.beta(self.a, self.b, n)


def _check_and_rng(n, seed) -> np.random.Generator:
    if n < 1:
        raise SampleSizeError(f"sample size must be >= 1, got {n}")
    return np.random.default_rng(seed)


def model_m1() -> Gaussian:
    """Standard normal benchmark (symmetric, unimodal, smooth)."""
    return Gaussian(0.0, 1.0, label="m1")


def model_m2() -> GaussianMixture:
    """0.25 N(0,1) + 0.75 N(10, 4); the variance-4 reading means sd = 2."""
    return GaussianMixture(0.25, Gaussian(0.0, 1.0), Gaussian(10.0, 2.0), label="m2")


def model_m3() -> Beta:
    """Beta(2,5): bounded, asymmetric, steep near the left boundary."""
    return Beta(2.0, 5.0, label="m3")


def parse_model(spec: str):
    """Model from a CLI string: ``m1 | m2 | m3 | mix:w,mu1,var1,mu2,var2``."""
    name = spec.strip().lower()
    if name == "m1":
        return model_m1()
    if name == "m2":
        return model_m2()
    if name == "m3":
        return model_m3()
    if name.startswith("mix:"):
        parts = name[4:].split(",")
        if len(parts) != 5:
            raise ModelParameterError(
                f"custom mixture needs 5 parameters w,mu1,var1,mu2,var2, got {spec!r}"
            )
        try:
            w, mu1, var1, mu2, var2 = (float(p) for p in parts)
        except ValueError as exc:
            raise ModelParameterError(f"malformed mixture spec {spec!r}") from exc
        if var1 <= 0 or var2 <= 0:
            raise ModelParameterError("mixture variances must be positive")
        return GaussianMixture(
            w, Gaussian(mu1, math.sqrt(var1)), Gaussian(mu2, math.sqrt(var2)),
            label=name,
        )
    raise ModelParameterError(f"unknown model {spec!r}")
