"""Smoothed sums S_V(m) and the approximate functional equation for 𝓛_m(1)."""

import logging
import math

import numpy as np
from scipy.special import gamma

from common.config import TauConvention, get_tolerances
from common.exceptions import InvalidArgumentError
from common.schemas import IdentityReport, TruncatedValue
from common.utils.quadrature import integrate_panels

from .generalized import DIVISOR_CONSTANT, script_l, script_l_many
from .symbols import lambda_table, rho_majorant

logger = logging.getLogger(__name__)

SV_TAIL_TARGET = 1e-8
TRAILING_PANEL_LIMIT = 1e-8
INTEGRAL_FLOOR = 1e-16
PANEL_ORDER = 12


def s_v(m: int, V: float, tail_target: float = SV_TAIL_TARGET) -> TruncatedValue:
    """S_V(m) = Σ_q λ_q(m) e^{−q/V} / q, cut where the exponential tail drops below target.

    With |λ_q(m)| ≤ 16·B(m)·q^{g} the tail past Q* is at most
    2·16·B(m)·Q*^{g−1}·e^{−Q*/V}·(V + 1).

    Args:
        m: Discriminant argument.
        V: Smoothing length, V ≥ 1.
        tail_target: Bound the discarded tail must meet.

    Returns:
        Value, tail bound and the cutoff Q* as ``terms_used``.
    """
    if V < 1:
        raise InvalidArgumentError(f"V must be at least 1, got {V}")
    if m % 4 in (2, 3):
        return TruncatedValue.of(0.0, 0.0, 1)
    bound = rho_majorant(m) if m else 1.0
    growth = 2.0 / 3.0 if m else 7.0 / 6.0
    step = int(math.ceil(V))
    cutoff = step

    def tail(q_star: int) -> float:
        return (
            2.0
            * DIVISOR_CONSTANT**2
            * bound
            * q_star ** (growth - 1.0)
            * math.exp(-q_star / V)
            * (V + 1.0)
        )

    while tail(cutoff) > tail_target:
        cutoff += step
    q = np.arange(1, cutoff + 1, dtype=np.float64)
    lam = lambda_table(m, cutoff)[1:].astype(np.float64)
    value = float(np.dot(lam, np.exp(-q / V) / q))
    logger.debug("S_V(m=%d, V=%.3g) cut at Q*=%d", m, V, cutoff)
    return TruncatedValue.of(value, tail(cutoff), cutoff)


def afe_integral(
    m: int,
    V: float,
    t_max: float = 40.0,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> TruncatedValue:
    """(2πi)^{-1} ∫_{(−1/2)} 𝓛_m(1+s) V^s Γ(s) ds over |t| ≤ t_max.

    The integrand at −t is the conjugate of the one at t, so the integral is
    (1/π)·Re ∫_0^{t_max}. The tail past the last panel is estimated from the
    e^{−π|t|/2} decay of Γ; ``converged`` is False if the trailing panel still
    exceeds 10⁻⁸.
    """
    log_v = math.log(V)

    def integrand(t: np.ndarray) -> np.ndarray:
        s = -0.5 + 1j * t
        return script_l_many(1.0 + s, m, convention) * np.exp(s * log_v) * gamma(s)

    result = integrate_panels(
        integrand, 0.0, 1.0, stop=t_max, order=PANEL_ORDER, rel_tol=0.0, abs_tol=INTEGRAL_FLOOR
    )
    value = result.value.real / math.pi
    edge = abs(complex(integrand(np.array([result.end]))[0]))
    tail = edge / math.pi * (4.0 / math.pi)
    trailing = result.last_panel / math.pi
    converged = result.converged and (result.end < t_max or trailing <= TRAILING_PANEL_LIMIT)
    if not converged:
        logger.warning("AFE integral for m=%d: trailing panel %.3e at t=%.1f", m, trailing, t_max)
    return TruncatedValue.of(value, tail, result.panels * PANEL_ORDER, converged)


def script_l_via_afe(
    m: int,
    V: float,
    t_max: float = 40.0,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> IdentityReport:
    """Compare 𝓛_m(1) with S_V(m) − (2πi)^{-1}∫_{(−1/2)} 𝓛_m(1+s) V^s Γ(s) ds.

    Args:
        m: Discriminant n² − 4 (nonzero, not a square).
        V: Smoothing length, V ≥ 1.
        t_max: Contour truncation.
        convention: τ normalization for 𝓛.

    Returns:
        Report with lhs = 𝓛_m(1) and rhs the AFE reconstruction.
    """
    if m == 0 or m % 4 in (2, 3) or (m > 0 and math.isqrt(m) ** 2 == m):
        raise InvalidArgumentError(f"AFE needs a non-square discriminant, got {m}")
    lhs = script_l(1.0, m, convention).complex
    smoothed = s_v(m, V)
    integral = afe_integral(m, V, t_max, convention)
    tol = get_tolerances().check("afe")
    return IdentityReport.build(
        "afe",
        lhs,
        smoothed.complex - integral.complex,
        rhs_tail=smoothed.tail_bound + integral.tail_bound,
        tol_abs=tol.abs,
        tol_rel=tol.rel,
        params={"m": m, "V": V, "t_max": t_max},
        details={
            "s_v": smoothed.value.re,
            "integral": integral.value.re,
            "q_star": smoothed.terms_used,
            "integral_converged": integral.converged,
        },
    )
