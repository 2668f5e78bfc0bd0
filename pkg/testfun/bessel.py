"""J_ν(x) of complex order by its power series, in multiprecision.

Σ_k (−1)^k (x/2)^{ν+2k} / (k! Γ(ν+k+1)) has terms as large as e^{x} before they
cancel to O(x^{−1/2}), so the working precision grows with x.
"""

import logging
import math

import mpmath
import numpy as np

from common.exceptions import RegimeError

logger = logging.getLogger(__name__)

MAX_ARGUMENT = 250.0
MAX_ORDER = 60.0
GUARD_DIGITS = 20
MAX_TERMS = 5000


def _check_regime(nu: complex, x: float) -> None:
    if not 0.0 < x <= MAX_ARGUMENT:
        raise RegimeError(f"bessel_j needs 0 < x <= {MAX_ARGUMENT}, got {x}")
    if abs(nu) > MAX_ORDER:
        raise RegimeError(f"bessel_j needs |nu| <= {MAX_ORDER}, got {nu}")


def _working_digits(x: float) -> int:
    return GUARD_DIGITS + int(math.ceil(x / math.log(10.0)))


def bessel_j(nu: complex, x: float) -> complex:
    """J_ν(x) for real 0 < x ≤ 250 and |ν| ≤ 60.

    Args:
        nu: Complex order.
        x: Positive real argument.

    Returns:
        J_ν(x) rounded to double precision.

    Raises:
        RegimeError: Outside the supported regime.
    """
    nu = complex(nu)
    x = float(x)
    _check_regime(nu, x)
    if nu.imag == 0.0 and nu.real < 0 and nu.real.is_integer():
        return (-1) ** int(-nu.real) * bessel_j(-nu, x)
    with mpmath.workdps(_working_digits(x)):
        order = mpmath.mpc(nu.real, nu.imag)
        half = mpmath.mpf(x) / 2
        quarter_sq = half * half
        term = mpmath.power(half, order) * mpmath.rgamma(order + 1)
        total = term
        eps = mpmath.mpf(10) ** (-mpmath.mp.dps)
        k = 0
        while k < MAX_TERMS:
            k += 1
            term = -term * quarter_sq / (k * (order + k))
            total += term
            if k > half and abs(term) <= eps * abs(total):
                break
        else:
            logger.warning("bessel_j series hit %d terms at nu=%s, x=%g", MAX_TERMS, nu, x)
        return complex(total)


def bessel_j_many(nu: complex, x: np.ndarray) -> np.ndarray:
    """bessel_j over an array of arguments (same order)."""
    x_arr = np.asarray(x, dtype=np.float64)
    out = np.empty(x_arr.shape, dtype=np.complex128)
    flat = out.reshape(-1)
    for i, value in enumerate(x_arr.reshape(-1)):
        flat[i] = bessel_j(nu, float(value))
    return out
