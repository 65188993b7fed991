import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zzbound import states as S
from zzbound.detectability import (
    DetectabilityResult,
    first_crossing,
    fit_power_law,
    heisenberg_floor_check,
    min_detectable,
    repeated_measurement_detect,
    scaling_exponent,
)
from zzbound.states import make_state


def test_coherent_example():
    res = min_detectable(make_state("coherent", alpha=100.0), threshold=math.exp(-0.5))
    assert res.gamma_m == pytest.approx(0.01, rel=0.05)
    assert res.mean_photons == pytest.approx(1e4)
    check = heisenberg_floor_check(res)
    assert check.passed and check.product == pytest.approx(100.0, rel=0.05)


def test_scv_cosine_form_example():
    alpha = 30.0
    g = first_crossing(lambda t: S.scv_fidelity_approx(alpha, t), 0.5)
    assert g == pytest.approx(math.pi / 2 / alpha**2, rel=1e-5)
    nbar = alpha**2 / 2
    assert g * nbar == pytest.approx(math.pi / 4, rel=1e-5)


def test_scv_exact_form():
    # |cos(alpha^2 theta/2)| = 1/2 first at alpha^2 theta = 2 pi/3
    res = min_detectable(make_state("scv", alpha=30.0))
    assert res.gamma_m * res.mean_photons == pytest.approx(math.pi / 3, rel=1e-3)
    assert heisenberg_floor_check(res).passed


def test_tmsv_example():
    nbar = 10.0
    res = min_detectable(make_state("tmsv", nbar=nbar), threshold=1 / math.sqrt(2))
    exact = 2 * math.asin(1 / math.sqrt(nbar * (nbar + 2)))
    assert res.gamma_m == pytest.approx(exact, rel=2e-6)
    assert exact == pytest.approx(0.18257, rel=2e-3)


def test_bracketing_postcondition():
    state = make_state("small_peak", nu=0.9, alpha=8.0)
    res = min_detectable(state, 0.6)
    g = res.gamma_m
    assert S.state_fidelity(state, g) <= 0.6 < S.state_fidelity(state, g * (1 - 1e-6))
    grid = np.geomspace(1e-9, math.pi, 10_000)
    below = grid[grid < g * (1 - 1e-6)]
    assert np.all(S.state_fidelity(state, below) > 0.6)


def test_not_detectable_is_typed_outcome():
    res = min_detectable(make_state("dual_fock_like"))
    assert not res.detectable and res.gamma_m is None
    with pytest.raises(ValueError, match="no crossing"):
        heisenberg_floor_check(res)


def test_fock_like_states_order_one():
    noon = min_detectable(make_state("noon_like"))
    assert noon.gamma_m > 0.3
    assert heisenberg_floor_check(noon).product > 0.3
    dual = min_detectable(make_state("dual_fock_like"), threshold=0.8)
    assert dual.gamma_m > 0.3


def test_floor_violation_reported():
    res = DetectabilityResult(gamma_m=0.01 / 50.0, threshold=0.5, state="hypothetical", mean_photons=50.0)
    check = heisenberg_floor_check(res)
    assert not check.passed
    assert check.margin == pytest.approx(0.01 - 0.1)


def test_invalid_inputs():
    s = make_state("coherent", alpha=2.0)
    for thr in (0.0, 1.0, 1.5):
        with pytest.raises(ValueError):
            min_detectable(s, threshold=thr)
    with pytest.raises(ValueError):
        min_detectable(s, window=(0.5, 0.1))
    with pytest.raises(ValueError):
        min_detectable(s, window=(0.0, 1.0))
    with pytest.raises(ValueError, match="already"):
        min_detectable(s, window=(3.0, 3.1))


def test_repeat_one_is_identity():
    s = make_state("tmsv", nbar=3.0)
    assert repeated_measurement_detect(s, 1).gamma_m == min_detectable(s).gamma_m


def test_ssw_repeated():
    lam = 10_000
    res = repeated_measurement_detect(make_state("ssw", **{"lambda": lam}), lam, threshold=math.exp(-3 / math.pi) + 0.01)
    assert 0.5 / lam <= res.gamma_m <= 2.0 / lam
    assert res.total_photons == pytest.approx(lam * S.ssw_mean_photon(lam))
    assert heisenberg_floor_check(res).passed


def test_small_peak_repeated():
    m = 10_000
    res = repeated_measurement_detect(make_state("small_peak", nu=1 / math.sqrt(m), alpha=math.sqrt(m)), m)
    product = res.gamma_m * res.total_photons
    assert 0.1 <= product <= 10.0


@settings(max_examples=15, deadline=None)
@given(st.floats(1.0, 50.0), st.integers(1, 6), st.integers(1, 6))
def test_monotone_in_repeats(nbar, m1, m2):
    s = make_state("tmsv", nbar=nbar)
    a, b = sorted((m1, m2))
    assert repeated_measurement_detect(s, b).gamma_m <= repeated_measurement_detect(s, a).gamma_m * (1 + 1e-6)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.1, 0.9), st.floats(0.1, 0.9))
def test_monotone_in_threshold(t1, t2):
    s = make_state("coherent", alpha=5.0)
    lo, hi = sorted((t1, t2))
    assert min_detectable(s, hi).gamma_m <= min_detectable(s, lo).gamma_m * (1 + 1e-6)


def test_fit_power_law_exact():
    n = np.array([1.0, 10.0, 100.0, 1000.0, 1e4])
    alpha, intercept, r2 = fit_power_law(n, 3.0 * n**-0.7)
    assert alpha == pytest.approx(0.7, abs=1e-12)
    assert intercept == pytest.approx(math.log(3.0), abs=1e-12)
    assert r2 == pytest.approx(1.0)


@pytest.mark.parametrize(
    "variant, sweep, expected",
    [
        ("coherent", [1e2, 1e3, 1e4, 1e5, 1e6], 0.5),
        ("tmsv", [10, 1e2, 1e3, 1e4, 1e5], 1.0),
        ("scv", [10, 1e2, 1e3, 1e4, 1e5], 1.0),
    ],
)
def test_scaling_examples(variant, sweep, expected):
    fit = scaling_exponent(lambda n: S.family_from_nbar(variant, n), sweep)
    assert fit.exponent == pytest.approx(expected, abs=0.05)
    assert fit.exponent <= 1.05
    assert len(fit.points) == 5 and 0.0 <= fit.r2 <= 1.0


def test_scaling_needs_five_points():
    with pytest.raises(ValueError, match=">= 5"):
        scaling_exponent(lambda n: S.family_from_nbar("coherent", n), [10, 100, 1000])
