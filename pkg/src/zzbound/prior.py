"""Prior distributions of the unknown parameter."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class UniformWindowPrior:
    """Flat prior of height 1/width on [mean - width/2, mean + width/2]."""

    mean: float
    width: float

    def __post_init__(self):
        if not (self.width > 0.0 and math.isfinite(self.width)):
            raise ValueError(f"prior width must be positive and finite, got {self.width}")

    def density(self, x):
        x = np.asarray(x, dtype=float)
        inside = np.abs(x - self.mean) <= self.width / 2.0
        return np.where(inside, 1.0 / self.width, 0.0)

    def std_dev(self) -> float:
        return std_dev(self)

    def overlap(self, gamma):
        return overlap(self, gamma)


@dataclass(frozen=True)
class GaussianPrior:
    mean: float
    sigma: float

    def __post_init__(self):
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise ValueError(f"prior standard deviation must be positive, got {self.sigma}")

    def std_dev(self) -> float:
        return self.sigma


def std_dev(prior) -> float:
    if isinstance(prior, UniformWindowPrior):
        return prior.width / math.sqrt(12.0)
    return prior.std_dev()


def overlap(prior: UniformWindowPrior, gamma):
    """Valley integral of min[p(x), p(x + gamma)] for the window prior."""
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0.0):
        raise ValueError("separation gamma must be non-negative")
    out = np.maximum(0.0, 1.0 - g / prior.width)
    return out if out.ndim else float(out)


def prior_fisher_information(prior) -> float:
    """Fisher information of the prior, int p (d ln p / dx)^2 dx.

    Only defined for smooth priors; the window prior has jump discontinuities
    at its edges and the integral diverges.
    """
    if isinstance(prior, GaussianPrior):
        return 1.0 / prior.sigma**2
    raise ValueError("prior Fisher information is undefined for non-smooth prior")
