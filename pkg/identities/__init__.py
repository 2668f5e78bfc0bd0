from .cosine import cosine_kloosterman_check, cosine_kloosterman_suite
from .exact_formula import (
    exact_formula_check,
    half_line_integral,
    l_phi_sum_at_one,
    residue_term,
    weighted_kloosterman_sum,
    weil_q_tail,
)
from .fourier import f_psi, fourier_check
from .inequality import arctan_addition_check, arg_inequality_check, inequality_grid
from .kuznetsov import (
    decay_cutoff,
    kuznetsov_check,
    sigma_star_sum,
    z_psi_lhs,
    z_psi_rhs,
)

__all__ = [
    "cosine_kloosterman_check",
    "cosine_kloosterman_suite",
    "exact_formula_check",
    "half_line_integral",
    "l_phi_sum_at_one",
    "residue_term",
    "weighted_kloosterman_sum",
    "weil_q_tail",
    "f_psi",
    "fourier_check",
    "arctan_addition_check",
    "arg_inequality_check",
    "inequality_grid",
    "decay_cutoff",
    "kuznetsov_check",
    "sigma_star_sum",
    "z_psi_lhs",
    "z_psi_rhs",
]
