from .kloosterman_sums import a1_sum, weil_trivial_envelope
from .main_term import main_term, main_term_via_afe, optimal_v, sv_main_split
from .scaling import (
    ScalingQuantity,
    envelope_consistent,
    fit_power_law,
    lambda_drift_experiment,
    optimal_n_scale,
    predicted_exponents,
    scaling_fit,
)
from .spectral import (
    load_eigenvalues,
    main_approximation_constant,
    smoothed_spectral_sum,
    spectral_sum,
)

__all__ = [
    "a1_sum",
    "weil_trivial_envelope",
    "main_term",
    "main_term_via_afe",
    "optimal_v",
    "sv_main_split",
    "ScalingQuantity",
    "envelope_consistent",
    "fit_power_law",
    "lambda_drift_experiment",
    "optimal_n_scale",
    "predicted_exponents",
    "scaling_fit",
    "load_eigenvalues",
    "main_approximation_constant",
    "smoothed_spectral_sum",
    "spectral_sum",
]
