from .afe import afe_integral, s_v, script_l_via_afe
from .checks import lfunction_suite, series_reports
from .dirichlet import dirichlet_l, dirichlet_l_hurwitz, dirichlet_l_many
from .generalized import (
    lambda_mean,
    script_l,
    script_l_many,
    script_l_series_forms,
    script_l_series_oracle,
    select_tau_convention,
    subconvexity_ratio,
    t_factor,
    tau_power_sum,
)
from .symbols import (
    lambda_drift_aggregate,
    lambda_many,
    lambda_partial_sum,
    lambda_q,
    lambda_table,
    rho_direct,
    rho_fast,
    rho_majorant,
    rho_many,
    rho_table,
)
from .zeta import hurwitz_zeta, hurwitz_zeta_pole_scaled, zeta

__all__ = [
    "afe_integral",
    "s_v",
    "script_l_via_afe",
    "lfunction_suite",
    "series_reports",
    "dirichlet_l",
    "dirichlet_l_hurwitz",
    "dirichlet_l_many",
    "lambda_mean",
    "script_l",
    "script_l_many",
    "script_l_series_forms",
    "script_l_series_oracle",
    "select_tau_convention",
    "subconvexity_ratio",
    "t_factor",
    "tau_power_sum",
    "lambda_drift_aggregate",
    "lambda_many",
    "lambda_partial_sum",
    "lambda_q",
    "lambda_table",
    "rho_direct",
    "rho_fast",
    "rho_majorant",
    "rho_many",
    "rho_table",
    "hurwitz_zeta",
    "hurwitz_zeta_pole_scaled",
    "zeta",
]
