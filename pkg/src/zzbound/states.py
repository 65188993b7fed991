"""Catalog of probe states and their exact phase-shift fidelities.

Every fidelity is F(theta) = |<psi| U_theta |psi>| for the state's own
phase generator, raised to the repeat count ``m`` for m identical copies.
The mixed two-mode Fock state is handled through its trace distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import special_fn as sf

# theta samples per block when summing the truncated SSW series
_SSW_BLOCK_ELEMENTS = 2_000_000
# largest truncation family_from_nbar will build; the direct sum is O(lambda) per phase
SSW_MAX_LAMBDA = 10**8


class Variant(str, Enum):
    COHERENT = "coherent"
    SCV = "scv"
    COHERENT_SQUEEZED = "coherent_squeezed"
    SSW = "ssw"
    SMALL_PEAK = "small_peak"
    TMSV = "tmsv"
    ENTANGLED_COHERENT = "entangled_coherent"
    NOON_LIKE = "noon_like"
    DUAL_FOCK_LIKE = "dual_fock_like"
    MIXED_FOCK = "mixed_fock"


REQUIRED_PARAMS: dict[Variant, frozenset[str]] = {
    Variant.COHERENT: frozenset({"alpha"}),
    Variant.SCV: frozenset({"alpha"}),
    Variant.COHERENT_SQUEEZED: frozenset({"alpha", "r"}),
    Variant.SSW: frozenset({"lambda"}),
    Variant.SMALL_PEAK: frozenset({"nu", "alpha"}),
    Variant.TMSV: frozenset({"nbar"}),
    Variant.ENTANGLED_COHERENT: frozenset({"alpha"}),
    Variant.NOON_LIKE: frozenset(),
    Variant.DUAL_FOCK_LIKE: frozenset(),
    Variant.MIXED_FOCK: frozenset({"n", "p"}),
}
OPTIONAL_PARAMS = frozenset({"m"})
_INTEGER_PARAMS = frozenset({"lambda", "n", "m"})


def parse_variant(name) -> Variant:
    if isinstance(name, Variant):
        return name
    key = str(name).strip().lower().replace("-", "").replace("_", "")
    for v in Variant:
        if v.value.replace("_", "") == key:
            return v
    raise ValueError(f"unknown state variant {name!r}; choose from {[v.value for v in Variant]}")


@dataclass(frozen=True)
class StateFamily:
    variant: Variant
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        variant = parse_variant(self.variant)
        object.__setattr__(self, "variant", variant)
        params = dict(self.params)
        required = REQUIRED_PARAMS[variant]
        missing = required - params.keys()
        extra = params.keys() - required - OPTIONAL_PARAMS
        if missing:
            raise ValueError(f"{variant.value}: missing parameter(s) {sorted(missing)}")
        if extra:
            raise ValueError(f"{variant.value}: unexpected parameter(s) {sorted(extra)}")
        clean = {}
        for key, value in params.items():
            value = float(value)
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{variant.value}: parameter {key} must be finite and >= 0")
            if key in _INTEGER_PARAMS:
                if value != int(value):
                    raise ValueError(f"{variant.value}: parameter {key} must be an integer")
                value = int(value)
            clean[key] = value
        clean.setdefault("m", 1)
        if clean["m"] < 1:
            raise ValueError("repeat count m must be >= 1")
        if variant is Variant.SSW and clean["lambda"] < 2:
            raise ValueError("ssw: truncation lambda must be >= 2")
        if variant is Variant.MIXED_FOCK and clean["p"] > 1.0:
            raise ValueError("mixed_fock: mixing weight p must lie in [0, 1]")
        object.__setattr__(self, "params", MappingProxyType(clean))

    @property
    def repeats(self) -> int:
        return self.params["m"]

    @property
    def name(self) -> str:
        shown = ", ".join(f"{k}={v:g}" for k, v in sorted(self.params.items()) if not (k == "m" and v == 1))
        return f"{self.variant.value}({shown})"

    def with_repeats(self, m: int) -> "StateFamily":
        params = dict(self.params)
        params["m"] = m
        return StateFamily(self.variant, params)


def make_state(variant, **params) -> StateFamily:
    return StateFamily(parse_variant(variant), params)


# -- per-variant closed forms -------------------------------------------------

def squeezing_beta(r: float) -> float:
    """beta = 1/(1 - tanh r), written as (1 + e^{2r})/2 to avoid cancellation."""
    return 0.5 * (1.0 + math.exp(2.0 * r))


def coherent_fidelity(alpha, theta):
    return np.exp(-alpha * alpha * (1.0 - np.cos(theta)))


def coherent_fidelity_gaussian(nbar, theta):
    """Small-angle comparison curve exp(-<n> theta^2 / 2)."""
    return np.exp(-nbar * np.asarray(theta) ** 2 / 2.0)


def scv_fidelity(alpha, theta):
    theta = np.asarray(theta, dtype=float)
    return np.abs(1.0 + np.exp(alpha * alpha * (np.exp(1j * theta) - 1.0))) / 2.0


def scv_fidelity_approx(alpha, theta):
    """The (1 + cos(alpha^2 theta))/2 approximation of the SCV overlap."""
    return (1.0 + np.cos(alpha * alpha * np.asarray(theta))) / 2.0


def coherent_squeezed_fidelity(alpha, r, theta):
    beta = squeezing_beta(r)
    b2 = 1.0 + (beta * np.asarray(theta)) ** 2
    return np.exp(-alpha * alpha * beta * np.asarray(theta) ** 2 / b2) / b2**0.25


def coherent_squeezed_asymptotic(alpha, r, theta):
    """Regime alpha^2 >> sinh^2 r: exp(-e^{2r} alpha^2 theta^2 / 2)."""
    return np.exp(-math.exp(2.0 * r) * alpha * alpha * np.asarray(theta) ** 2 / 2.0)


def coherent_squeezed_optimal(nbar, theta):
    """Optimal point alpha^2 = sinh^2 r expressed through <n>."""
    x2 = (nbar * np.asarray(theta)) ** 2
    return np.exp(-(x2 / 2.0) / (1.0 + x2)) / (1.0 + x2) ** 0.25


def optimal_coherent_squeezed(nbar: float, m: int = 1) -> StateFamily:
    """Coherent-squeezed state at alpha^2 = sinh^2 r with the given <n>."""
    half = nbar / 2.0
    return make_state(Variant.COHERENT_SQUEEZED, alpha=math.sqrt(half), r=math.asinh(math.sqrt(half)), m=m)


def _ssw_weights(lam: int) -> np.ndarray:
    return 1.0 / np.arange(1, lam + 2, dtype=float) ** 2


def ssw_fidelity(lam: int, theta):
    """|sum_{n=0}^{lam} e^{i n theta}/(n+1)^2| / S_lam, summed directly."""
    theta = np.asarray(theta, dtype=float)
    flat = theta.ravel()
    w = _ssw_weights(lam)
    norm = math.fsum(w.tolist())
    n = np.arange(lam + 1, dtype=float)
    out = np.empty_like(flat)
    block = max(1, _SSW_BLOCK_ELEMENTS // (lam + 1))
    for start in range(0, flat.size, block):
        phase = np.outer(flat[start:start + block], n)
        re = np.cos(phase) @ w
        im = np.sin(phase) @ w
        out[start:start + block] = np.hypot(re, im) / norm
    return out.reshape(theta.shape)


def ssw_fidelity_limit(theta):
    """Infinite-truncation reference |Li2(e^{i theta})| / zeta(2)."""
    return np.abs(sf.polylog_unit_circle(2, theta)) / sf.zeta(2)


def ssw_mean_photon(lam: int) -> float:
    w = _ssw_weights(lam)
    n = np.arange(lam + 1, dtype=float)
    return math.fsum((n * w).tolist()) / math.fsum(w.tolist())


def ssw_mean_photon_leading(lam: int) -> float:
    return math.log(lam) / sf.zeta(2)


def small_peak_fidelity(nu, alpha, theta):
    """Single-copy overlap |1 + nu^2 exp(-alpha^2 (1 - e^{i theta}))| / (1 + nu^2)."""
    theta = np.asarray(theta, dtype=float)
    nu2 = nu * nu
    return np.abs(1.0 + nu2 * np.exp(-alpha * alpha * (1.0 - np.exp(1j * theta)))) / (1.0 + nu2)


def small_peak_fidelity_approx(nu, alpha, theta, m: int = 1):
    return (1.0 - nu * nu * (1.0 - np.cos(alpha * alpha * np.asarray(theta)))) ** m


def tmsv_fidelity(nbar, theta):
    s = np.sin(np.asarray(theta) / 2.0)
    return 1.0 / np.sqrt(1.0 + nbar * (nbar + 2.0) * s * s)


def tmsv_fidelity_series(nbar, theta, tail_tol: float = 1e-12):
    """(1 - t) sum_n t^n P_n(cos theta) with t = <n>/(<n> + 2).

    Truncated once the geometric tail t^(N+1) drops below tail_tol.
    """
    t = nbar / (nbar + 2.0)
    if t == 0.0:
        return np.ones_like(np.asarray(theta, dtype=float))
    nmax = max(1, math.ceil(math.log(tail_tol) / math.log(t)))
    x = np.cos(np.asarray(theta, dtype=float))
    table = sf.legendre_table(nmax, x)
    weights = t ** np.arange(nmax + 1)
    return (1.0 - t) * np.tensordot(weights, table, axes=1)


def noon_like_fidelity(theta):
    return np.abs(1.0 + sf.polylog_unit_circle(3, theta) / sf.zeta(3)) / 2.0


def dual_fock_like_fidelity(theta):
    return np.abs(sf.polylog_unit_circle(3, theta)) / sf.zeta(3)


def mixed_fock_distance(n: int, p: float, theta):
    return p * np.sqrt(sf.legendre_complement_sq(n, theta))


def mixed_fock_distance_bessel(n: int, p: float, theta):
    """Large-n approximation p sqrt(1 - J0(n theta)^2)."""
    j0 = sf.bessel_j0(n * np.asarray(theta, dtype=float))
    return p * np.sqrt(np.clip(1.0 - j0 * j0, 0.0, 1.0))


# -- public dispatch ----------------------------------------------------------

def _single_copy_fidelity(state: StateFamily, theta):
    v, p = state.variant, state.params
    if v is Variant.COHERENT:
        return coherent_fidelity(p["alpha"], theta)
    if v in (Variant.SCV, Variant.ENTANGLED_COHERENT):
        return scv_fidelity(p["alpha"], theta)
    if v is Variant.COHERENT_SQUEEZED:
        return coherent_squeezed_fidelity(p["alpha"], p["r"], theta)
    if v is Variant.SSW:
        return ssw_fidelity(p["lambda"], theta)
    if v is Variant.SMALL_PEAK:
        return small_peak_fidelity(p["nu"], p["alpha"], theta)
    if v is Variant.TMSV:
        return tmsv_fidelity(p["nbar"], theta)
    if v is Variant.NOON_LIKE:
        return noon_like_fidelity(theta)
    if v is Variant.DUAL_FOCK_LIKE:
        return dual_fock_like_fidelity(theta)
    if v is Variant.MIXED_FOCK:
        d = mixed_fock_distance(p["n"], p["p"], theta)
        return np.sqrt(1.0 - d * d)
    raise AssertionError(v)


def state_fidelity(state: StateFamily, theta):
    """Fidelity between the unshifted state and the state shifted by theta.

    For the mixed Fock state this is the induced quantity sqrt(1 - D^2);
    use :func:`state_distance` to get D itself.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(theta)) or np.any(theta < 0.0) or np.any(theta > sf.TWO_PI):
        raise ValueError("phase shift must lie in [0, 2*pi]")
    f = np.clip(_single_copy_fidelity(state, theta), 0.0, 1.0)
    m = state.repeats
    if m > 1:
        f = f**m
    return f if f.ndim else float(f)


def state_distance(state: StateFamily, theta):
    """Trace distance between unshifted and shifted states.

    Exact for the mixed Fock state; for the pure states D = sqrt(1 - F^2).
    """
    if state.variant is Variant.MIXED_FOCK:
        if state.repeats != 1:
            raise ValueError("mixed_fock trace distance is only available for m = 1")
        p = state.params
        theta = np.asarray(theta, dtype=float)
        if np.any(theta < 0.0) or np.any(theta > sf.TWO_PI):
            raise ValueError("phase shift must lie in [0, 2*pi]")
        d = mixed_fock_distance(p["n"], p["p"], theta)
        return d if d.ndim else float(d)
    f = np.asarray(state_fidelity(state, theta))
    d = np.sqrt(np.clip(1.0 - f * f, 0.0, 1.0))
    return d if d.ndim else float(d)


def state_mean_photon(state: StateFamily) -> float:
    """Mean photon number of a single copy (exact where the sum is finite)."""
    v, p = state.variant, state.params
    if v is Variant.COHERENT:
        return p["alpha"] ** 2
    if v is Variant.SCV:
        return p["alpha"] ** 2 / 2.0
    if v is Variant.COHERENT_SQUEEZED:
        return p["alpha"] ** 2 + math.sinh(p["r"]) ** 2
    if v is Variant.SSW:
        return ssw_mean_photon(p["lambda"])
    if v is Variant.SMALL_PEAK:
        nu2 = p["nu"] ** 2
        return nu2 * p["alpha"] ** 2 / (1.0 + nu2)
    if v is Variant.TMSV:
        return float(p["nbar"])
    if v is Variant.ENTANGLED_COHERENT:
        return p["alpha"] ** 2
    if v in (Variant.NOON_LIKE, Variant.DUAL_FOCK_LIKE):
        return sf.zeta(2) / sf.zeta(3)
    if v is Variant.MIXED_FOCK:
        return 2.0 * p["p"] * p["n"]
    raise AssertionError(v)


def state_total_photons(state: StateFamily) -> float:
    """Photon resource N_T = m <n> over all repeated copies."""
    return state.repeats * state_mean_photon(state)


# -- families parameterized by <n> ------------------------------------------------

def family_from_nbar(variant, nbar: float, **fixed) -> StateFamily:
    """Build a state of the given variant whose single-copy <n> equals nbar."""
    v = parse_variant(variant)
    m = fixed.pop("m", 1)
    if v is Variant.COHERENT:
        return make_state(v, alpha=math.sqrt(nbar), m=m)
    if v is Variant.SCV:
        return make_state(v, alpha=math.sqrt(2.0 * nbar), m=m)
    if v is Variant.ENTANGLED_COHERENT:
        return make_state(v, alpha=math.sqrt(nbar), m=m)
    if v is Variant.COHERENT_SQUEEZED:
        return optimal_coherent_squeezed(nbar, m=m)
    if v is Variant.TMSV:
        return make_state(v, nbar=nbar, m=m)
    if v is Variant.MIXED_FOCK:
        p = fixed.get("p", 1.0)
        return make_state(v, n=max(1, round(nbar / (2.0 * p))), p=p, m=m)
    if v is Variant.SSW:
        # leading order <n> = ln(lambda)/zeta(2)
        log_lam = sf.zeta(2) * nbar
        if log_lam > math.log(SSW_MAX_LAMBDA):
            raise ValueError(f"ssw: <n> = {nbar:g} needs lambda = e^{log_lam:.4g}, above the limit {SSW_MAX_LAMBDA:g}")
        return make_state(v, **{"lambda": max(2, round(math.exp(log_lam)))}, m=m)
    if v is Variant.SMALL_PEAK:
        nu = fixed.get("nu", 0.1)
        return make_state(v, nu=nu, alpha=math.sqrt(nbar * (1.0 + nu * nu)) / nu, m=m)
    raise ValueError(f"{v.value} has a fixed photon number and cannot be swept")
