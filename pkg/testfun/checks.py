"""Closed forms against their quadrature oracles, packaged as identity reports."""

import logging
from collections.abc import Sequence

from common.config import get_tolerances
from common.schemas import IdentityReport, TruncatedValue

from .beta import phi1_integral_via_beta
from .kernels import (
    capital_phi,
    capital_phi_integral,
    phi0_closed,
    phi1_antiderivative,
    phi_b,
    phi_hat_closed,
)
from .oracles import (
    bessel_exp_integral,
    bessel_exp_integral_quadrature,
    capital_phi_quadrature,
    phi0_quadrature,
    phi_b_double_integral,
    phi_hat_quadrature,
)
from .params import TestParams

logger = logging.getLogger(__name__)

DEFAULT_N = (0.0, 1.0, 5.0)
DEFAULT_S = (1.0, 1.75)
DEFAULT_X = (1.0, 5.0)
DEFAULT_T = (0.5, 2.0)


def _oracle_report(
    name: str, closed: complex, oracle: TruncatedValue, params: dict[str, object]
) -> IdentityReport:
    tol = get_tolerances().check("closed_vs_quadrature")
    return IdentityReport.build(
        name,
        closed,
        oracle.complex,
        rhs_tail=oracle.tail_bound,
        tol_abs=tol.abs,
        tol_rel=tol.rel,
        params=params,
        details={"converged": oracle.converged},
    )


def phi1_integral_reports(p: TestParams, upper: float = 1e4) -> list[IdentityReport]:
    """∫_0^∞ Φ(x,1) dx = 0 by the Beta route, and the finite integral against its antiderivative.

    Both are measured against |sinh²β|/|c|, the natural size of the integral.
    """
    tol = get_tolerances().check("phi1_integral")
    scale = abs(p.sinh2) / p.abs_c
    params = {**p.as_dict(), "upper": upper}
    return [
        IdentityReport.build(
            "phi1_integral_beta",
            phi1_integral_via_beta(p),
            0.0,
            tol_abs=tol.abs * scale,
            params=p.as_dict(),
        ),
        IdentityReport.build(
            "phi1_integral_finite",
            complex(capital_phi_integral(upper, 1.0, p)),
            complex(phi1_antiderivative(upper, p)),
            tol_abs=tol.abs * scale,
            tol_rel=tol.rel,
            params=params,
        ),
    ]


def closed_form_suite(
    p: TestParams,
    n_values: Sequence[float] = DEFAULT_N,
    s_values: Sequence[complex] = DEFAULT_S,
    x_values: Sequence[float] = DEFAULT_X,
    t_values: Sequence[float] = DEFAULT_T,
    include_phi_hat: bool = True,
) -> list[IdentityReport]:
    """Every closed form of the test-function family against quadrature.

    φ̂ needs one Bessel series per quadrature node and dominates the run time;
    ``include_phi_hat`` drops it.
    """
    reports = [_oracle_report("phi0", phi0_closed(p), phi0_quadrature(p), p.as_dict())]
    for t in t_values:
        reports.append(
            _oracle_report(
                "bessel_exp",
                bessel_exp_integral(t, p),
                bessel_exp_integral_quadrature(t, p),
                {**p.as_dict(), "t": t},
            )
        )
        if include_phi_hat:
            reports.append(
                _oracle_report(
                    "phi_hat",
                    complex(phi_hat_closed(t, p)),
                    phi_hat_quadrature(t, p),
                    {**p.as_dict(), "t": t},
                )
            )
    for s in s_values:
        for n in n_values:
            s_c = complex(s)
            reports.append(
                _oracle_report(
                    "capital_phi",
                    complex(capital_phi(n, s_c, p)),
                    capital_phi_quadrature(n, s_c, p),
                    {**p.as_dict(), "n": n, "s": [s_c.real, s_c.imag]},
                )
            )
    for x in x_values:
        exact = TruncatedValue.of(phi_b_double_integral(x, p), 0.0, 1)
        reports.append(_oracle_report("phi_b", phi_b(x, p), exact, {**p.as_dict(), "x": x}))
    reports.extend(phi1_integral_reports(p))
    failed = sum(not r.passed for r in reports)
    logger.info("closed-form suite: %d checks, %d failed", len(reports), failed)
    return reports

