"""The generalized Dirichlet series 𝓛_m(s) and its Dirichlet-series oracle."""

import logging
import math
from collections.abc import Sequence
from typing import Union

import numpy as np

from arith.characters import kronecker, split_discriminant
from arith.factorization import divisors, mobius, sieve_tables
from common.config import TauConvention
from common.exceptions import InvalidArgumentError, PoleError
from common.schemas import ComplexValue, LMethod, LValue, TruncatedValue

from .dirichlet import dirichlet_l_many
from .symbols import lambda_table, rho_majorant, rho_table
from .zeta import ComplexLike, zeta

logger = logging.getLogger(__name__)

# The explicit part of an oracle tail runs over (Q, TAIL_SPAN·Q].
TAIL_SPAN = 64
# τ₀(q) ≤ DIVISOR_CONSTANT·q^{1/3} for every q ≥ 1.
DIVISOR_CONSTANT = 4.0
ORACLE_MIN_SIGMA = 1.5
ORACLE_AGREEMENT = 1e-6


def tau_power_sum(k: int, w: ComplexLike, convention: TauConvention) -> ComplexLike:
    """τ_w(k): Σ_{ab=k} (a/b)^w (symmetric) or Σ_{d|k} d^w (divisor)."""
    w_arr = np.asarray(w, dtype=np.complex128)
    log_d = np.log(np.array(divisors(k), dtype=np.float64))
    if convention is TauConvention.SYMMETRIC:
        log_d = 2.0 * log_d - math.log(k)
    out = np.exp(w_arr[..., None] * log_d).sum(axis=-1)
    return complex(out) if out.ndim == 0 else out


def t_factor(
    s: ComplexLike, D: int, l: int, convention: TauConvention = TauConvention.SYMMETRIC
) -> ComplexLike:
    """T_l^{(D)}(s) = Σ_{l₁l₂=l} χ_D(l₁) μ(l₁) l₁^{-1/2} τ_{s−1/2}(l₂).

    Args:
        s: Complex point(s).
        D: Fundamental discriminant (or 1).
        l: Positive integer.
        convention: Normalization of τ.

    Returns:
        Value with the shape of ``s``.
    """
    if l < 1:
        raise InvalidArgumentError(f"l must be positive, got {l}")
    s_arr = np.asarray(s, dtype=np.complex128)
    total = np.zeros(s_arr.shape, dtype=np.complex128)
    for l1 in divisors(l):
        weight = mobius(l1) * kronecker(D, l1)
        if weight:
            total = total + weight / math.sqrt(l1) * np.asarray(
                tau_power_sum(l // l1, s_arr - 0.5, convention)
            )
    return complex(total) if total.ndim == 0 else total


def _is_square(m: int) -> bool:
    return m > 0 and math.isqrt(m) ** 2 == m


def script_l_many(
    s: ComplexLike, m: int, convention: TauConvention = TauConvention.SYMMETRIC
) -> np.ndarray:
    """𝓛_m(s) for an array of s through the decomposition l^{1/2−s} T_l^{(D)}(s) L(s, χ_D).

    Raises:
        PoleError: At s = 1 for m = 0 or m a nonzero square.
    """
    s_arr = np.asarray(s, dtype=np.complex128)
    if m % 4 in (2, 3):
        return np.zeros(s_arr.shape, dtype=np.complex128)
    if m == 0:
        if np.any(s_arr == 1):
            raise PoleError("script_l(m=0)", 1.0)
        return np.asarray(zeta(2.0 * s_arr - 1.0), dtype=np.complex128)
    if _is_square(m) and np.any(s_arr == 1):
        raise PoleError(f"script_l(m={m})", 1.0)
    split = split_discriminant(m)
    value = dirichlet_l_many(s_arr, split.D)
    if split.l > 1:
        value = (
            value
            * np.exp((0.5 - s_arr) * math.log(split.l))
            * np.asarray(t_factor(s_arr, split.D, split.l, convention))
        )
    return value


def script_l(
    s: complex, m: int, convention: TauConvention = TauConvention.SYMMETRIC
) -> LValue:
    """𝓛_m(s) at one point with provenance."""
    value = complex(script_l_many(np.array([s]), m, convention)[0])
    return LValue(
        s=ComplexValue.of(s), m=m, value=ComplexValue.of(value), method=LMethod.DECOMPOSITION
    )


def _majorant_tail(
    weights: np.ndarray, q: np.ndarray, sigma: float, growth: float, constant: float
) -> float:
    """Σ_{q>Q} w(q) q^{-σ}: explicit over the sieved block, analytic beyond it.

    Beyond the block w(q) ≤ constant·q^{growth}; if that sum diverges the
    remainder is extrapolated from the block by the ratio of ∫ q^{-σ}.
    """
    explicit = float(np.sum(weights * q ** (-sigma)))
    start, stop = float(q[0] - 1), float(q[-1])
    if sigma - growth > 1.0:
        remainder = constant * stop ** (1.0 + growth - sigma) / (sigma - growth - 1.0)
    else:
        ratio = stop ** (1.0 - sigma) / (start ** (1.0 - sigma) - stop ** (1.0 - sigma))
        remainder = explicit * ratio
        logger.debug("tail beyond q=%d extrapolated (sigma=%.3f)", int(stop), sigma)
    return explicit + remainder


def script_l_series_forms(s: complex, m: int, Q: int) -> tuple[TruncatedValue, TruncatedValue]:
    """Both Dirichlet-series forms of 𝓛_m(s) truncated at q ≤ Q.

    The ρ-form is ζ(2s)/ζ(s)·Σ ρ_q(m) q^{-s}; the λ-form is Σ λ_q(m) q^{-s}.
    Tails use ρ_q(m) ≤ B(m)·2^{ω(q)} and |λ_q(m)| ≤ B(m)·τ₀(q²).

    Args:
        s: Point with Re s > 1.5.
        m: Discriminant argument.
        Q: Truncation of the q-sum.

    Returns:
        Pair (rho_form, lambda_form).
    """
    s = complex(s)
    sigma = s.real
    if sigma <= ORACLE_MIN_SIGMA:
        raise InvalidArgumentError(f"series oracle needs Re s > {ORACLE_MIN_SIGMA}, got {s}")
    if Q < 1:
        raise InvalidArgumentError("Q must be positive")
    if m % 4 in (2, 3):
        zero = TruncatedValue.of(0.0, 0.0, Q)
        return zero, zero

    q = np.arange(1, Q + 1, dtype=np.float64)
    powers = np.exp(-s * np.log(q))
    rho = rho_table(m, Q)[1:].astype(np.float64)
    lam = lambda_table(m, Q)[1:].astype(np.float64)
    ratio = complex(zeta(2.0 * s)) / complex(zeta(s))
    rho_sum = ratio * complex(rho @ powers)
    lam_sum = complex(lam @ powers)

    upper = TAIL_SPAN * Q
    tables = sieve_tables(upper)
    block = np.arange(Q + 1, upper + 1, dtype=np.float64)
    if m == 0:
        root = np.sqrt(block)
        rho_tail = _majorant_tail(root, block, sigma, 0.5, 1.0)
        lam_weights = tables.tau0_square[Q + 1 :] * root
        lam_tail = _majorant_tail(lam_weights, block, sigma, 7.0 / 6.0, DIVISOR_CONSTANT**2)
    else:
        bound = rho_majorant(m)
        rho_weights = bound * 2.0 ** tables.omega[Q + 1 :]
        rho_tail = _majorant_tail(rho_weights, block, sigma, 1.0 / 3.0, bound * DIVISOR_CONSTANT)
        lam_weights = bound * tables.tau0_square[Q + 1 :].astype(np.float64)
        lam_tail = _majorant_tail(
            lam_weights, block, sigma, 2.0 / 3.0, bound * DIVISOR_CONSTANT**2
        )
    return (
        TruncatedValue.of(rho_sum, abs(ratio) * rho_tail, Q),
        TruncatedValue.of(lam_sum, lam_tail, Q),
    )


def script_l_series_oracle(s: complex, m: int, Q: int) -> TruncatedValue:
    """ρ-form of the Dirichlet series, cross-checked against the λ-form.

    Returns the ρ-form; ``converged`` is False when the two forms disagree
    beyond their combined tails.
    """
    rho_form, lam_form = script_l_series_forms(s, m, Q)
    gap = abs(rho_form.complex - lam_form.complex)
    allowed = rho_form.tail_bound + lam_form.tail_bound + ORACLE_AGREEMENT
    if gap > allowed:
        logger.warning("rho/lambda series forms of L_%d(%s) differ by %.3e", m, s, gap)
        return rho_form.model_copy(update={"converged": False})
    return rho_form


def select_tau_convention(
    m_values: Sequence[int] = (12, 32, 45, 60), s: complex = 2.5, Q: int = 2000
) -> TauConvention:
    """Pick the τ normalization under which the decomposition reproduces the series.

    Each convention is scored by its worst excess over the oracle tails on
    ``m_values`` (discriminants with l > 1); the symmetric one wins ties.
    """
    scores: dict[TauConvention, float] = {}
    oracles = {m: script_l_series_oracle(s, m, Q) for m in m_values}
    for convention in (TauConvention.SYMMETRIC, TauConvention.DIVISOR):
        excess = 0.0
        for m, oracle in oracles.items():
            value = script_l(s, m, convention).complex
            excess = max(excess, abs(value - oracle.complex) - oracle.tail_bound)
        scores[convention] = excess
    chosen = min(scores, key=lambda c: (scores[c], c is not TauConvention.SYMMETRIC))
    logger.info("tau convention %s selected (scores %s)", chosen.value, scores)
    return chosen


def lambda_mean(s: ComplexLike) -> ComplexLike:
    """ζ(2s)/ζ(1+s), the average over n of 𝓛_{n²−4}(s)."""
    s_arr = np.asarray(s, dtype=np.complex128)
    out = np.asarray(zeta(2.0 * s_arr)) / np.asarray(zeta(1.0 + s_arr))
    return complex(out) if out.ndim == 0 else out


def subconvexity_ratio(m: int, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """|𝓛_m(½+it)| / ((1+|m|)^{1/4} (1+|t|)^{1/4}), the convexity-normalized size."""
    t_arr = np.asarray(t, dtype=np.float64)
    value = np.abs(script_l_many(0.5 + 1j * t_arr, m))
    out = value / ((1.0 + abs(m)) ** 0.25 * (1.0 + np.abs(t_arr)) ** 0.25)
    return float(out) if out.ndim == 0 else out
