"""Ziv-Zakai and Cramer-Rao lower bounds on the parameter sensitivity.

For the uniform window prior of width W the Ziv-Zakai bound reads

    dY_LB^2 = int_0^W gamma (1 - gamma/W) Pr_e(gamma) dgamma

with Pr_e = (1 - sqrt(1 - F^2))/2 for a fidelity lower bound F, or
Pr_e = (1 - D)/2 when the trace distance D is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .fidelity import FidelityModel
from .prior import UniformWindowPrior
from .quadrature import ConvergenceError, adaptive_simpson

DEFAULT_TOL = 1e-9
# below this regime parameter the closed forms lose digits to cancellation;
# the series is accurate to ~1e-16 there
SMALL_Z0 = 1e-2

LINEAR_BRANCH_Z0 = 0.5
COSINE_BRANCH_Z0 = math.pi / 4.0
LINEAR_LPI_CONSTANT = math.sqrt(5.0 / 12.0 - math.pi / 8.0)  # 0.15482...
COSINE_LPI_CONSTANT = math.sqrt(math.pi**2 / 16.0 - 0.5)  # 0.34184...

# initial panel width in v = gamma/l; the fidelity cannot vary on scales much
# below l, so coarse panels would let aliased oscillations pass the error test
PANEL_WIDTH = 0.5
MAX_INITIAL_PANELS = 2**16

# squared bound / x0^2 as a series in s = sqrt(z0), coefficients of s^k
_LINEAR_SERIES = ((4, 1 / 3), (5, -16 / 35), (7, 8 / 63), (9, 2 / 99), (11, 1 / 143), (13, 1 / 312), (15, 7 / 4080))
_COSINE_SERIES = ((4, 1 / 3), (6, -1 / 3), (10, 4 / 45), (14, -1 / 105), (18, 8 / 14175))


class Method(str, Enum):
    QUADRATURE = "quadrature"
    CLOSED_FORM_LINEAR = "closed_form_linear"
    CLOSED_FORM_COSINE = "closed_form_cosine"
    CRAMER_RAO = "cramer_rao"


@dataclass(frozen=True)
class SensitivityBound:
    value: float
    method: Method
    z0: Optional[float]
    model: str
    # which formula produced a closed-form value: "hpi", "lpi" or "series"
    branch: Optional[str] = None

    def __float__(self):
        return self.value


__all__ = [
    "ConvergenceError",
    "Method",
    "SensitivityBound",
    "zz_bound_quadrature",
    "zz_bound_from_distance",
    "zz_closed_linear",
    "zz_closed_cosine",
    "cr_bound",
    "lpi_linear_limit",
]


def _check_tol(tol):
    if not 0.0 < tol <= 1e-3:
        raise ValueError("tolerance must lie in (0, 1e-3]")


def _zz_integral(prior: UniformWindowPrior, error_prob: Callable, breakpoints, tol, scale=None) -> float:
    # integrate in v = gamma/l with l = min(W, scale), so the integral is O(1)
    # in both the small- and the large-window regime
    w = prior.width
    ell = min(w, scale) if scale else w

    def integrand(v):
        g = v * ell
        return v * prior.overlap(g) * error_prob(g)

    span = w / ell
    cuts = [c / ell for c in breakpoints if 0.0 < c < w]
    pieces = min(math.ceil(span / PANEL_WIDTH), MAX_INITIAL_PANELS)
    cuts += list(np.linspace(0.0, span, pieces + 1)[1:-1])
    integral = adaptive_simpson(integrand, 0.0, span, tol=tol, breakpoints=cuts)
    return ell * math.sqrt(max(integral, 0.0))


def zz_bound_quadrature(
    prior: UniformWindowPrior, model: FidelityModel, tol: float = DEFAULT_TOL
) -> SensitivityBound:
    """Ziv-Zakai bound for any fidelity model by adaptive quadrature.

    The integral is taken in the scaled separation v = gamma/l with
    l = min(W, x0), and ``tol`` is the absolute tolerance on
    int v (1 - v l/W) Pr_e dv. The domain is split at the model cutoff,
    where sqrt(1 - F^2) has a kink, and into initial panels of width
    PANEL_WIDTH in v so oscillating fidelities are resolved.
    """
    _check_tol(tol)

    def error_prob(g):
        f = np.asarray(model(g))
        return 0.5 * (1.0 - np.sqrt(np.clip(1.0 - f * f, 0.0, 1.0)))

    breaks = [model.cutoff] if math.isfinite(model.cutoff) else []
    value = _zz_integral(prior, error_prob, breaks, tol, model.scale)
    z0 = prior.width / (2.0 * model.scale) if model.scale else None
    return SensitivityBound(value, Method.QUADRATURE, z0, model.label)


def zz_bound_from_distance(
    prior: UniformWindowPrior,
    distance: Callable,
    tol: float = DEFAULT_TOL,
    breakpoints=(),
    label: str = "distance",
    scale: Optional[float] = None,
) -> SensitivityBound:
    """Same integral with the tighter error probability (1 - D)/2."""
    _check_tol(tol)

    def error_prob(g):
        d = np.asarray(distance(g), dtype=float)
        if np.any(d < -1e-12) or np.any(d > 1.0 + 1e-12):
            raise ValueError("trace distance must lie in [0, 1]")
        return 0.5 * (1.0 - np.clip(d, 0.0, 1.0))

    value = _zz_integral(prior, error_prob, breakpoints, tol, scale)
    return SensitivityBound(value, Method.QUADRATURE, None, label)


def _series(coeffs, z0):
    s = math.sqrt(z0)
    return math.fsum(c * s**k for k, c in coeffs)


def linear_hpi_sq(z: float) -> float:
    """Squared linear-model bound over x0^2, small-window branch."""
    # pi/2 - asin(1 - 2z) == 2 asin(sqrt z), without the rounding of 1 - 2z
    arc = 2.0 * math.asin(math.sqrt(z))
    poly = 15.0 - 14.0 * z - 8.0 * z * z + 16.0 * z**3
    return z * z / 3.0 - poly / 48.0 * math.sqrt((1.0 - z) / z) + arc * (5.0 / 32.0 - z / 4.0) / z


def linear_lpi_sq(z: float) -> float:
    """Squared linear-model bound over x0^2, large-window branch."""
    return (5.0 / 12.0 - math.pi / 8.0) - (0.25 - 5.0 * math.pi / 64.0) / z


def cosine_hpi_sq(z: float) -> float:
    """Squared cosine-model bound over x0^2, small-window branch."""
    # (cos 2z - 1)/(2z) written as -sin^2(z)/z
    return z * z / 3.0 - math.sin(z) ** 2 / z + math.sin(2.0 * z) / 2.0


def cosine_lpi_sq(z: float) -> float:
    """Squared cosine-model bound over x0^2, large-window branch."""
    return (math.pi**2 / 16.0 - 0.5) - (0.5 - math.pi / 4.0 + math.pi**3 / 96.0) / z


def zz_closed_linear(x0: float, width: float) -> SensitivityBound:
    """Closed form for the linear fidelity bound F = max(0, 1 - gamma/x0)."""
    if not (x0 > 0.0 and width > 0.0):
        raise ValueError("x0 and width must be positive")
    z = width / (2.0 * x0)
    if z < SMALL_Z0:
        sq, branch = _series(_LINEAR_SERIES, z), "series"
    elif z <= LINEAR_BRANCH_Z0:
        sq, branch = linear_hpi_sq(z), "hpi"
    else:
        sq, branch = linear_lpi_sq(z), "lpi"
    return SensitivityBound(x0 * math.sqrt(max(sq, 0.0)), Method.CLOSED_FORM_LINEAR, z, f"linear(x0={x0:.12g})", branch)


def zz_closed_cosine(std_h: float, width: float) -> SensitivityBound:
    """Closed form for the cosine fidelity bound F = cos(gamma dH), x0 = 1/dH."""
    if not (std_h > 0.0 and width > 0.0):
        raise ValueError("standard deviation of H and width must be positive")
    x0 = 1.0 / std_h
    z = width / (2.0 * x0)
    if z < SMALL_Z0:
        sq, branch = _series(_COSINE_SERIES, z), "series"
    elif z <= COSINE_BRANCH_Z0:
        sq, branch = cosine_hpi_sq(z), "hpi"
    else:
        sq, branch = cosine_lpi_sq(z), "lpi"
    return SensitivityBound(x0 * math.sqrt(max(sq, 0.0)), Method.CLOSED_FORM_COSINE, z, f"cosine(dH={std_h:.12g})", branch)


def lpi_linear_limit(mean_h: float) -> float:
    """Large-window limit of the linear-model bound, sqrt(5/12 - pi/8)/<H>."""
    if not mean_h > 0.0:
        raise ValueError("<H> must be positive")
    return LINEAR_LPI_CONSTANT / mean_h


def cr_bound(std_h: float, prior_fisher: float = 0.0) -> SensitivityBound:
    """Quantum Cramer-Rao bound 1/sqrt(4 dH^2 + Pi)."""
    if std_h < 0.0 or prior_fisher < 0.0:
        raise ValueError("dH and prior Fisher information must be non-negative")
    info = 4.0 * std_h * std_h + prior_fisher
    if not info > 0.0:
        raise ValueError("Cramer-Rao bound undefined: dH and prior Fisher information are both zero")
    return SensitivityBound(1.0 / math.sqrt(info), Method.CRAMER_RAO, None, f"cr(dH={std_h:.12g}, Pi={prior_fisher:.12g})")
