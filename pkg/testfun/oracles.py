"""Quadrature oracles for the closed forms in :mod:`testfun.kernels`.

Every integrand here carries the damping e^{−ax} of φ; integration runs on
half-period panels (see :func:`common.utils.quadrature.oscillatory_integral`).
"""

import cmath
import logging
import math
from collections.abc import Callable

import numpy as np
from scipy.special import j0

from common.exceptions import ConvergenceError
from common.schemas import TruncatedValue
from common.utils.quadrature import PanelIntegral, integrate_edges, oscillatory_integral

from .bessel import bessel_j_many
from .kernels import phi
from .params import TestParams

logger = logging.getLogger(__name__)

ORACLE_REL_TOL = 1e-12
BESSEL_ORDER = 12
BESSEL_LEVELS = 20

Psi = Callable[[np.ndarray], np.ndarray]


def _result(
    integral: PanelIntegral, factor: complex, label: str, strict: bool
) -> TruncatedValue:
    if not integral.converged:
        if strict:
            raise ConvergenceError(f"{label} quadrature did not converge")
        logger.warning("%s quadrature stopped at x=%.1f without converging", label, integral.end)
    return TruncatedValue.of(
        factor * integral.value,
        abs(factor) * integral.last_panel,
        integral.panels,
        integral.converged,
    )


def phi_hat_quadrature(t: float, p: TestParams, strict: bool = False) -> TruncatedValue:
    """(πi / 2 sinh πt) ∫_0^∞ (J_{2it}(x) − J_{−2it}(x)) φ(x) dx/x.

    For real x, J_{−2it}(x) is the conjugate of J_{2it}(x), so the bracket is
    2i·Im J_{2it}(x) and only one Bessel series per node is needed.
    """
    order = 2j * t

    def integrand(x: np.ndarray) -> np.ndarray:
        bracket = 2j * bessel_j_many(order, x).imag
        return bracket * np.asarray(phi(x, p)) / x

    integral = oscillatory_integral(
        integrand, 1.0 + p.b, rel_tol=ORACLE_REL_TOL, order=BESSEL_ORDER, levels=BESSEL_LEVELS
    )
    factor = math.pi * 1j / (2.0 * math.sinh(math.pi * t))
    return _result(integral, factor, "phi_hat", strict)


def bessel_exp_integral(t: float, p: TestParams) -> complex:
    """∫_0^∞ J_{2it}(x) e^{ix cosh β} dx = −e^{−(π+2iβ)t} / (i sinh β)."""
    return -cmath.exp(-(math.pi + 2j * p.beta) * t) / (1j * p.sinh_beta)


def bessel_exp_integral_quadrature(
    t: float, p: TestParams, strict: bool = False
) -> TruncatedValue:
    """Damped quadrature of ∫_0^∞ J_{2it}(x) e^{−cx} dx."""
    order = 2j * t

    def integrand(x: np.ndarray) -> np.ndarray:
        return bessel_j_many(order, x) * np.exp(-p.c * x)

    integral = oscillatory_integral(
        integrand, 1.0 + p.b, rel_tol=ORACLE_REL_TOL, order=BESSEL_ORDER, levels=BESSEL_LEVELS
    )
    return _result(integral, 1.0, "bessel_exp", strict)


def phi0_quadrature(p: TestParams, strict: bool = False) -> TruncatedValue:
    """(1/2π) ∫_0^∞ J₀(y) φ(y) dy."""

    def integrand(y: np.ndarray) -> np.ndarray:
        return j0(y) * np.asarray(phi(y, p))

    integral = oscillatory_integral(integrand, 1.0 + p.b, rel_tol=ORACLE_REL_TOL)
    return _result(integral, 1.0 / (2.0 * math.pi), "phi0", strict)


def phi_b_double_integral(x: float, p: TestParams, outer_panels: int = 8) -> complex:
    """φ_B(x) = ∫_0^1 ξx J₀(ξx) ∫_0^∞ J₀(ξy) φ(y) dy dξ by nested quadrature."""

    def inner(xi: float) -> complex:
        integral = oscillatory_integral(
            lambda y: j0(xi * y) * np.asarray(phi(y, p)), xi + p.b, rel_tol=ORACLE_REL_TOL
        )
        if not integral.converged:
            raise ConvergenceError(f"inner phi_B integral did not converge at xi={xi}")
        return integral.value

    def outer(xi: np.ndarray) -> np.ndarray:
        values = np.array([inner(float(v)) for v in xi], dtype=np.complex128)
        return xi * x * j0(xi * x) * values

    edges = np.linspace(0.0, 1.0, outer_panels + 1)
    return integrate_edges(outer, edges, order=16)


def psi_transform(
    psi: Psi,
    n: float,
    s: complex,
    frequency: float = 1.0,
    strict: bool = False,
) -> TruncatedValue:
    """Ψ(n, s) = (4π)^{s−1} ∫_0^∞ ψ(x) cos(nx/2) x^{−s} dx.

    Args:
        psi: Vectorized ψ; must decay fast enough for the integral to converge.
        n: Cosine frequency (times 2).
        s: Complex exponent.
        frequency: Intrinsic oscillation of ψ (b for ψ = φ), added to n/2.
        strict: Raise instead of flagging non-convergence.

    Returns:
        The transform with its last-panel size as tail.
    """
    s = complex(s)

    def integrand(x: np.ndarray) -> np.ndarray:
        return np.asarray(psi(x)) * np.cos(0.5 * n * x) * np.exp(-s * np.log(x))

    integral = oscillatory_integral(integrand, 0.5 * n + frequency, rel_tol=ORACLE_REL_TOL)
    return _result(integral, (4.0 * math.pi) ** (s - 1.0), "psi_transform", strict)


def capital_phi_quadrature(n: float, s: complex, p: TestParams) -> TruncatedValue:
    """Φ(n, s) as the ψ = φ case of :func:`psi_transform`."""
    return psi_transform(lambda x: np.asarray(phi(x, p)), n, s, frequency=p.b)
