"""Quantum Ziv-Zakai bounds, state fidelities and minimum detectable phase shifts."""

from .bounds import (
    ConvergenceError,
    Method,
    SensitivityBound,
    cr_bound,
    lpi_linear_limit,
    zz_bound_from_distance,
    zz_bound_quadrature,
    zz_closed_cosine,
    zz_closed_linear,
)
from .detectability import (
    DetectabilityResult,
    ScalingFit,
    heisenberg_floor_check,
    min_detectable,
    repeated_measurement_detect,
    scaling_exponent,
)
from .fidelity import (
    FidelityModel,
    GeneratorMoments,
    ModelKind,
    cosine_bound_model,
    linear_bound_model,
    repeat,
    state_model,
)
from .prior import GaussianPrior, UniformWindowPrior, overlap, prior_fisher_information, std_dev
from .states import (
    StateFamily,
    Variant,
    family_from_nbar,
    make_state,
    state_distance,
    state_fidelity,
    state_mean_photon,
    state_total_photons,
)

__version__ = "0.1.0"
