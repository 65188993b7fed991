"""Fidelity-versus-separation models F(gamma) fed to the Ziv-Zakai integral."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .states import StateFamily, state_fidelity, state_mean_photon, state_total_photons


class ModelKind(str, Enum):
    LINEAR_BOUND = "linear"
    COSINE_BOUND = "cosine"
    STATE_EXACT = "state"


@dataclass(frozen=True)
class GeneratorMoments:
    """Moments of the phase generator H >= 0 in the probe state."""

    mean_h: float
    std_h: float = 0.0
    seminorm_h: Optional[float] = None

    def __post_init__(self):
        if not (self.mean_h >= 0.0 and math.isfinite(self.mean_h)):
            raise ValueError("mean of H must be finite and >= 0")
        if not (self.std_h >= 0.0 and math.isfinite(self.std_h)):
            raise ValueError("standard deviation of H must be finite and >= 0")
        if self.seminorm_h is not None and not self.seminorm_h > 0.0:
            raise ValueError("seminorm of H must be positive")


@dataclass(frozen=True)
class FidelityModel:
    """A lower bound (or exact value) of F(rho_0, rho_gamma) as a function of gamma.

    ``scale`` is the separation x0 used to define the regime z0 = W/(2 x0);
    it is None when the model has no natural scale.
    """

    kind: ModelKind
    cutoff: float
    func: Callable[[np.ndarray], np.ndarray]
    label: str
    scale: Optional[float] = None
    # inverse photon resource of the underlying state, used by the dominance check
    mean_h: Optional[float] = None

    def __call__(self, gamma):
        g = np.asarray(gamma, dtype=float)
        out = np.clip(self.func(g), 0.0, 1.0)
        if math.isfinite(self.cutoff):
            out = np.where(g >= self.cutoff, 0.0, out)
        return out if out.ndim else float(out)


def linear_bound_model(moments: GeneratorMoments, bounded: bool = False) -> FidelityModel:
    """F = max(0, 1 - gamma/x0) with x0 = 1/||H|| (bounded) or 1/<H>."""
    if bounded:
        if moments.seminorm_h is None:
            raise ValueError("bounded linear model needs the seminorm of H")
        inv = moments.seminorm_h
    else:
        if moments.mean_h == 0.0:
            raise ValueError("degenerate generator: <H> = 0 gives an infinite cutoff")
        inv = moments.mean_h
    x0 = 1.0 / inv
    return FidelityModel(
        kind=ModelKind.LINEAR_BOUND,
        cutoff=x0,
        func=lambda g: np.maximum(0.0, 1.0 - g * inv),
        label=f"linear(x0={x0:.12g})",
        scale=x0,
        mean_h=inv,
    )


def cosine_bound_model(moments: GeneratorMoments) -> FidelityModel:
    """F = cos(gamma dH) up to pi/(2 dH), zero beyond."""
    dh = moments.std_h
    if not dh > 0.0:
        raise ValueError("cosine model needs a positive standard deviation of H")
    cutoff = math.pi / (2.0 * dh)
    return FidelityModel(
        kind=ModelKind.COSINE_BOUND,
        cutoff=cutoff,
        func=lambda g: np.where(g < cutoff, np.cos(g * dh), 0.0),
        label=f"cosine(dH={dh:.12g})",
        scale=1.0 / dh,
    )


def state_model(state: StateFamily) -> FidelityModel:
    """Exact fidelity of a catalog state; phase shifts are taken modulo 2 pi."""
    total = state_total_photons(state)

    def func(g):
        return state_fidelity(state, np.mod(g, 2.0 * math.pi))

    return FidelityModel(
        kind=ModelKind.STATE_EXACT,
        cutoff=math.inf,
        func=func,
        label=state.name,
        scale=1.0 / total if total > 0 else None,
        mean_h=total,
    )


def repeat(f, m: int):
    """m-fold repeated measurement: F -> F^m, for values or models."""
    if int(m) != m or m < 1:
        raise ValueError("repeat count must be an integer >= 1")
    m = int(m)
    if isinstance(f, FidelityModel):
        base = f.func
        return FidelityModel(
            kind=f.kind,
            cutoff=f.cutoff,
            func=lambda g: np.clip(base(g), 0.0, 1.0) ** m,
            label=f"{f.label}^{m}",
            scale=None if f.scale is None else f.scale / m,
            mean_h=None if f.mean_h is None else f.mean_h * m,
        )
    value = np.asarray(f, dtype=float)
    if np.any(value < 0.0) or np.any(value > 1.0):
        raise ValueError("fidelity must lie in [0, 1]")
    out = value**m
    return out if out.ndim else float(out)


__all__ = [
    "ModelKind",
    "GeneratorMoments",
    "FidelityModel",
    "linear_bound_model",
    "cosine_bound_model",
    "state_model",
    "repeat",
    "state_mean_photon",
]
