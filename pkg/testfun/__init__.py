from .bessel import bessel_j, bessel_j_many
from .beta import beta_integral, log_beta, phi1_integral_via_beta
from .bump import bump_integral, bump_spec, h_bump, h_mellin
from .checks import closed_form_suite, phi1_integral_reports
from .envelopes import f_envelope, g_envelope
from .kernels import (
    capital_phi,
    capital_phi_integral,
    modulus_identities,
    phi,
    phi0_closed,
    phi1_antiderivative,
    phi1_closed,
    phi1_derivative,
    phi1_derivative_bound,
    phi_b,
    phi_hat_closed,
    phi_hat_leading,
    phi_hat_main,
)
from .oracles import (
    bessel_exp_integral,
    bessel_exp_integral_quadrature,
    capital_phi_quadrature,
    phi0_quadrature,
    phi_b_double_integral,
    phi_hat_quadrature,
    psi_transform,
)
from .params import BumpSpec, TestParams, params_new

__all__ = [
    "bessel_j",
    "bessel_j_many",
    "beta_integral",
    "log_beta",
    "phi1_integral_via_beta",
    "closed_form_suite",
    "phi1_integral_reports",
    "bump_integral",
    "bump_spec",
    "h_bump",
    "h_mellin",
    "f_envelope",
    "g_envelope",
    "capital_phi",
    "capital_phi_integral",
    "modulus_identities",
    "phi",
    "phi0_closed",
    "phi1_antiderivative",
    "phi1_closed",
    "phi1_derivative",
    "phi1_derivative_bound",
    "phi_b",
    "phi_hat_closed",
    "phi_hat_leading",
    "phi_hat_main",
    "bessel_exp_integral",
    "bessel_exp_integral_quadrature",
    "capital_phi_quadrature",
    "phi0_quadrature",
    "phi_b_double_integral",
    "phi_hat_quadrature",
    "psi_transform",
    "BumpSpec",
    "TestParams",
    "params_new",
]
