import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zzbound.fidelity import (
    GeneratorMoments,
    ModelKind,
    cosine_bound_model,
    linear_bound_model,
    repeat,
    state_model,
)
from zzbound.states import make_state


def test_linear_model_shape():
    m = linear_bound_model(GeneratorMoments(mean_h=2.0))
    assert m.kind is ModelKind.LINEAR_BOUND
    assert m.cutoff == 0.5 and m.scale == 0.5
    assert m(0.0) == 1.0 and m(0.25) == 0.5 and m(0.5) == 0.0 and m(3.0) == 0.0


def test_bounded_linear_model_uses_seminorm():
    m = linear_bound_model(GeneratorMoments(mean_h=1.0, seminorm_h=4.0), bounded=True)
    assert m.cutoff == 0.25
    with pytest.raises(ValueError):
        linear_bound_model(GeneratorMoments(mean_h=1.0), bounded=True)


def test_degenerate_generators_rejected():
    with pytest.raises(ValueError):
        linear_bound_model(GeneratorMoments(mean_h=0.0))
    with pytest.raises(ValueError):
        cosine_bound_model(GeneratorMoments(mean_h=1.0, std_h=0.0))
    with pytest.raises(ValueError):
        GeneratorMoments(mean_h=-1.0)


def test_cosine_model_shape():
    m = cosine_bound_model(GeneratorMoments(mean_h=1.0, std_h=2.0))
    assert m.cutoff == pytest.approx(math.pi / 4)
    assert m(0.1) == pytest.approx(math.cos(0.2))
    assert m(1.0) == 0.0


@given(st.floats(0.01, 100.0), st.floats(0.01, 100.0))
def test_bound_models_unit_at_zero_and_nonincreasing(mean_h, std_h):
    for model in (linear_bound_model(GeneratorMoments(mean_h)), cosine_bound_model(GeneratorMoments(mean_h, std_h))):
        g = np.linspace(0, model.cutoff, 1001)
        f = model(g)
        assert f[0] == 1.0
        assert np.all((f >= 0) & (f <= 1))
        assert np.all(np.diff(f) <= 1e-15)


def test_state_model_wraps_phase():
    s = make_state("coherent", alpha=2.0)
    m = state_model(s)
    assert m.cutoff == math.inf and m.scale == pytest.approx(0.25)
    assert m(0.3 + 2 * math.pi) == pytest.approx(m(0.3), abs=1e-12)


def test_repeat_values():
    assert repeat(1.0, 10**6) == 1.0
    assert repeat(0.5, 2) == 0.25
    lam = 10_000
    assert repeat(1 - 3 / (math.pi * lam), lam) == pytest.approx(math.exp(-3 / math.pi), abs=2e-3)
    with pytest.raises(ValueError):
        repeat(0.5, 0)
    with pytest.raises(ValueError):
        repeat(1.5, 2)


def test_repeat_model():
    base = linear_bound_model(GeneratorMoments(mean_h=1.0))
    m3 = repeat(base, 3)
    g = np.linspace(0, 1, 11)
    assert np.allclose(m3(g), base(g) ** 3)
    assert m3.scale == pytest.approx(1 / 3)
