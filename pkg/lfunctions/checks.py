"""Decomposition against the Dirichlet-series oracle, and the approximate functional equation."""

import logging
from collections.abc import Sequence

from common.config import TauConvention, get_tolerances
from common.schemas import IdentityReport

from .afe import script_l_via_afe
from .generalized import script_l, script_l_series_oracle

logger = logging.getLogger(__name__)

SERIES_M = (5, 12, 21, 32, 45, 60)
SERIES_S = 2.5
SERIES_Q = 2000
AFE_N = tuple(range(3, 13))
AFE_V = (10.0, 100.0, 1000.0)


def series_reports(
    m_values: Sequence[int] = SERIES_M,
    s: complex = SERIES_S,
    Q: int = SERIES_Q,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> list[IdentityReport]:
    """𝓛_m(s) by the discriminant decomposition against the truncated Dirichlet series."""
    tol = get_tolerances().check("series_oracle")
    s = complex(s)
    reports = []
    for m in m_values:
        oracle = script_l_series_oracle(s, m, Q)
        reports.append(
            IdentityReport.build(
                "series_oracle",
                script_l(s, m, convention).complex,
                oracle.complex,
                rhs_tail=oracle.tail_bound,
                tol_abs=tol.abs,
                tol_rel=tol.rel,
                params={"m": m, "s": [s.real, s.imag], "Q": Q},
                details={"forms_agree": oracle.converged},
                converged=oracle.converged,
            )
        )
    return reports


def lfunction_suite(
    n_values: Sequence[int] = AFE_N,
    V_values: Sequence[float] = AFE_V,
    t_max: float = 40.0,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> list[IdentityReport]:
    """Series-oracle checks plus the AFE at every (n, V); 𝓛_{n²−4}(1) must not depend on V."""
    reports = series_reports(convention=convention)
    for n in n_values:
        for V in V_values:
            reports.append(script_l_via_afe(n * n - 4, V, t_max, convention))
    failed = sum(not r.passed for r in reports)
    logger.info("L-function suite: %d checks, %d failed", len(reports), failed)
    return reports
