"""Minimum detectable phase shift and its scaling with the photon number.

A state detects a shift gamma once F(rho_0, rho_gamma) drops to a
threshold. The smallest such gamma, gamma_m, bounds the achievable
sensitivity; gamma_m ~ <n>^(-alpha) with alpha <= 1 is the Heisenberg
constraint checked here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .states import StateFamily, state_fidelity, state_mean_photon, state_total_photons

DEFAULT_THRESHOLD = 0.5
DEFAULT_WINDOW = (1e-9, math.pi)
DEFAULT_GRID_POINTS = 10_000
BISECTION_RTOL = 1e-6
HEISENBERG_FLOOR = 0.1


@dataclass(frozen=True)
class DetectabilityResult:
    gamma_m: Optional[float]
    threshold: float
    state: str
    mean_photons: float
    repeats: int = 1
    window: tuple = DEFAULT_WINDOW

    @property
    def detectable(self) -> bool:
        return self.gamma_m is not None

    @property
    def total_photons(self) -> float:
        return self.repeats * self.mean_photons


@dataclass(frozen=True)
class FloorCheck:
    passed: bool
    product: float
    floor: float

    @property
    def margin(self) -> float:
        return self.product - self.floor


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    intercept: float
    r2: float
    points: list
    dropped: list = field(default_factory=list)


def first_crossing(
    f: Callable[[np.ndarray], np.ndarray],
    threshold: float,
    window=DEFAULT_WINDOW,
    points: int = DEFAULT_GRID_POINTS,
    rtol: float = BISECTION_RTOL,
) -> Optional[float]:
    """Smallest gamma in the window with f(gamma) <= threshold, or None.

    A log-spaced grid brackets the first crossing; bisection then narrows
    the bracket to relative width rtol/2 and returns its upper end.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    lo, hi = float(window[0]), float(window[1])
    if not 0.0 < lo < hi:
        raise ValueError("search window must satisfy 0 < lo < hi")
    if points < 2:
        raise ValueError("need at least two grid points")
    grid = np.geomspace(lo, hi, points)
    values = np.asarray(f(grid), dtype=float)
    if values[0] <= threshold:
        raise ValueError(f"fidelity at the window start ({values[0]:.6g}) is already <= threshold")
    below = np.nonzero(values <= threshold)[0]
    if below.size == 0:
        return None
    k = below[0]
    a, b = grid[k - 1], grid[k]
    while b - a > 0.5 * rtol * b:
        c = 0.5 * (a + b)
        if float(f(np.array([c]))[0]) <= threshold:
            b = c
        else:
            a = c
    return float(b)


def min_detectable(
    state: StateFamily,
    threshold: float = DEFAULT_THRESHOLD,
    window=DEFAULT_WINDOW,
    points: int = DEFAULT_GRID_POINTS,
) -> DetectabilityResult:
    """First threshold crossing of the state's fidelity (all repeats included).

    States whose fidelity never reaches the threshold in the window give a
    result with ``gamma_m = None`` rather than an error.
    """
    gamma_m = first_crossing(lambda g: state_fidelity(state, g), threshold, window, points)
    return DetectabilityResult(
        gamma_m=gamma_m,
        threshold=threshold,
        state=state.name,
        mean_photons=state_mean_photon(state),
        repeats=state.repeats,
        window=(float(window[0]), float(window[1])),
    )


def repeated_measurement_detect(
    state: StateFamily,
    m: int,
    threshold: float = DEFAULT_THRESHOLD,
    window=DEFAULT_WINDOW,
    points: int = DEFAULT_GRID_POINTS,
) -> DetectabilityResult:
    """min_detectable for m identical copies; total_photons gives N_T = m <n>."""
    return min_detectable(state.with_repeats(m), threshold, window, points)


def heisenberg_floor_check(result: DetectabilityResult, floor: float = HEISENBERG_FLOOR) -> FloorCheck:
    """Check gamma_m * N_T >= floor, the order-one slack of gamma_m >= 1/<H>."""
    if result.gamma_m is None:
        raise ValueError(f"{result.state}: no crossing in the search window")
    product = result.gamma_m * result.total_photons
    return FloorCheck(product >= floor, product, floor)


def fit_power_law(nbar, gamma_m) -> tuple[float, float, float]:
    """Least-squares line through (log nbar, log gamma_m); returns (alpha, intercept, r2)."""
    x = np.log(np.asarray(nbar, dtype=float))
    y = np.log(np.asarray(gamma_m, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return -float(slope), float(intercept), r2


def scaling_exponent(
    family: Callable[[float], StateFamily],
    sweep: Iterable[float],
    threshold: float = DEFAULT_THRESHOLD,
    window=DEFAULT_WINDOW,
    points: int = DEFAULT_GRID_POINTS,
) -> ScalingFit:
    """Fit gamma_m ~ <n>^(-alpha) over a photon-number sweep.

    Points with no crossing in the window are dropped and listed in
    ``dropped``; at least five detectable points are required.
    """
    kept, dropped = [], []
    for nbar in sweep:
        state = family(nbar)
        result = min_detectable(state, threshold, window, points)
        if result.detectable:
            kept.append((result.mean_photons, result.gamma_m))
        else:
            dropped.append(result.mean_photons)
    if len(kept) < 5:
        raise ValueError(f"scaling fit needs >= 5 detectable points, got {len(kept)} (dropped {dropped})")
    alpha, intercept, r2 = fit_power_law([p[0] for p in kept], [p[1] for p in kept])
    return ScalingFit(alpha, intercept, r2, kept, dropped)
