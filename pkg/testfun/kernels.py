"""Closed forms: φ, φ̂, φ₀, φ_B, Φ(n, s) and the s = 1 specializations."""

import math
from typing import Union

import numpy as np
from scipy.special import gamma, j0

from arith.branches import principal_log
from common.exceptions import InvalidArgumentError
from common.utils.quadrature import gauss_legendre, integrate_edges

from .params import TestParams

ArrayLike = Union[float, complex, np.ndarray]


def _out(value: np.ndarray) -> ArrayLike:
    return complex(value) if np.ndim(value) == 0 else value


def phi(x: ArrayLike, p: TestParams) -> ArrayLike:
    """φ(x) = (sinh²β/2π) x² e^{ix cosh β} = (sinh²β/2π) x² e^{−cx}."""
    x_arr = np.asarray(x, dtype=np.float64)
    if np.any(x_arr < 0):
        raise InvalidArgumentError("phi is defined for x >= 0")
    return _out(p.sinh2 / (2.0 * math.pi) * x_arr**2 * np.exp(-p.c * x_arr))


def _half_coth(p: TestParams) -> complex:
    return 1j * p.cosh_beta / (2.0 * p.sinh_beta)


def phi_hat_closed(t: ArrayLike, p: TestParams) -> ArrayLike:
    """φ̂(t) = t cosh(πt+2iβt)/sinh πt + i sinh(πt+2iβt)/(2 tanh β sinh πt), t > 0.

    Evaluated as E·[t(1+w) + (i/2 tanh β)(1−w)]/(1−v) with E = e^{2iβt},
    w = e^{−2πt−4iβt}, v = e^{−2πt}, which never overflows.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr <= 0):
        raise InvalidArgumentError("phi_hat_closed needs t > 0")
    e = np.exp(2j * p.beta * t_arr)
    w = np.exp(-2.0 * math.pi * t_arr - 4j * p.beta * t_arr)
    v = np.exp(-2.0 * math.pi * t_arr)
    return _out(e * (t_arr * (1.0 + w) + _half_coth(p) * (1.0 - w)) / (1.0 - v))


def phi_hat_main(t: ArrayLike, p: TestParams) -> ArrayLike:
    """(t + i cosh β/(2 sinh β)) X^{it} e^{−t/T}."""
    t_arr = np.asarray(t, dtype=np.float64)
    return _out((t_arr + _half_coth(p)) * np.exp(2j * p.beta * t_arr))


def phi_hat_leading(t: ArrayLike, p: TestParams) -> ArrayLike:
    """t X^{it} e^{−t/T}."""
    t_arr = np.asarray(t, dtype=np.float64)
    return _out(t_arr * np.exp(2j * p.beta * t_arr))


def phi0_closed(p: TestParams) -> complex:
    """φ₀ = (−i/4π²)(2/sinh β + 3/sinh³β)."""
    sh = p.sinh_beta
    return -1j / (4.0 * math.pi**2) * (2.0 / sh + 3.0 / sh**3)


def _phi_b_kernel(xi: np.ndarray, p: TestParams) -> np.ndarray:
    w = p.cosh_beta**2 - xi**2
    # Im w = 2ab > 0, so the principal powers are continuous in ξ.
    return 2.0 * np.exp(-1.5 * np.log(w)) + 3.0 * xi**2 * np.exp(-2.5 * np.log(w))


def phi_b(x: float, p: TestParams) -> complex:
    """φ_B(x) = (−i sinh²β/2π) ∫_0^1 ξx J₀(ξx) [2w^{−3/2} + 3ξ²w^{−5/2}] dξ, w = cosh²β − ξ²."""
    if x <= 0:
        raise InvalidArgumentError("phi_b needs x > 0")
    panels = max(4, int(math.ceil(2.0 * x / math.pi)))
    edges = np.linspace(0.0, 1.0, panels + 1)

    def integrand(xi: np.ndarray) -> np.ndarray:
        return xi * x * j0(xi * x) * _phi_b_kernel(xi, p)

    return -1j * p.sinh2 / (2.0 * math.pi) * integrate_edges(integrand, edges, order=16)


def capital_phi(n: ArrayLike, s: ArrayLike, p: TestParams) -> ArrayLike:
    """Φ(n, s) = (sinh²β/2π)(4π)^{s−1} Γ(3−s) (c² + n²/4)^{−(3−s)/2} cos((3−s) arctan(n/2c)).

    arctan(n/2c) = (i/2)(Log z₊ − Log z₋) with z± = 2ci ± n; Im z± = 2a > 0
    and Im(c² + n²/4) = −2ab < 0, so the principal branches never jump.

    Args:
        n: Frequency (real, ≥ 0), scalar or array.
        s: Complex point(s) with Re s < 3; broadcast against ``n``.
        p: Test-function parameters.

    Returns:
        Φ(n, s) with the broadcast shape of ``n`` and ``s``.
    """
    s_arr = np.asarray(s, dtype=np.complex128)
    if np.any(s_arr.real >= 3.0):
        raise InvalidArgumentError(f"capital_phi needs Re s < 3, got {s}")
    n_arr = np.asarray(n, dtype=np.float64)
    k = 3.0 - s_arr
    z_plus = 2j * p.c + n_arr
    z_minus = 2j * p.c - n_arr
    angle = 0.5j * (principal_log(z_plus) - principal_log(z_minus))
    base = principal_log(p.c**2 + n_arr**2 / 4.0)
    value = (
        p.sinh2
        / (2.0 * math.pi)
        * np.exp((s_arr - 1.0) * math.log(4.0 * math.pi))
        * gamma(k)
        * np.exp(-0.5 * k * base)
        * np.cos(k * angle)
    )
    return _out(value)


def phi1_closed(x: ArrayLike, p: TestParams) -> ArrayLike:
    """Φ(x, 1) = sinh²β/(2πc²) · (1 − u²)/(1 + u²)², u = x/(2c)."""
    u = np.asarray(x, dtype=np.float64) / (2.0 * p.c)
    return _out(p.sinh2 / (2.0 * math.pi * p.c**2) * (1.0 - u**2) / (1.0 + u**2) ** 2)


def phi1_antiderivative(x: ArrayLike, p: TestParams) -> ArrayLike:
    """∫_0^x Φ(y, 1) dy = (sinh²β/πc) · u/(1 + u²), u = x/(2c); tends to 0 as x → ∞."""
    u = np.asarray(x, dtype=np.float64) / (2.0 * p.c)
    return _out(p.sinh2 / (math.pi * p.c) * u / (1.0 + u**2))


def phi1_derivative(x: ArrayLike, p: TestParams) -> ArrayLike:
    """∂Φ(x, 1)/∂x = sinh²β/(4πc³) · 2u(u² − 3)/(1 + u²)³."""
    u = np.asarray(x, dtype=np.float64) / (2.0 * p.c)
    return _out(
        p.sinh2 / (4.0 * math.pi * p.c**3) * 2.0 * u * (u**2 - 3.0) / (1.0 + u**2) ** 3
    )


def phi1_derivative_bound(x: ArrayLike, p: TestParams) -> ArrayLike:
    """Envelope shape of |∂Φ(x, 1)/∂x| up to the factor |sinh²β|/|c|².

    (x/|c|²)·((3/2 − y²)² + 6y²cos²γ)^{1/2} / ((1 − y²)² + 4y²sin²γ)^{3/2}, y = x/2|c|.
    """
    x_arr = np.asarray(x, dtype=np.float64)
    y = x_arr / (2.0 * p.abs_c)
    num = np.sqrt((1.5 - y**2) ** 2 + 6.0 * y**2 * math.cos(p.gamma) ** 2)
    den = ((1.0 - y**2) ** 2 + 4.0 * y**2 * math.sin(p.gamma) ** 2) ** 1.5
    out = x_arr / p.abs_c**2 * num / den
    return float(out) if out.ndim == 0 else out


def capital_phi_integral(
    upper: float, s: ArrayLike, p: TestParams, order: int = 16
) -> ArrayLike:
    """∫_0^{upper} Φ(x, s) dx by Gauss–Legendre panels of width |c|/2, vectorized over s."""
    s_arr = np.asarray(s, dtype=np.complex128)
    if upper <= 0:
        return _out(np.zeros(s_arr.shape, dtype=np.complex128))
    panels = max(4, int(math.ceil(upper / (0.5 * p.abs_c))))
    edges = np.linspace(0.0, upper, panels + 1)
    nodes, weights = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    x = (0.5 * (edges[1:] + edges[:-1])[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    values = np.asarray(capital_phi(x, s_arr[..., None], p))
    return _out(values @ w)


def modulus_identities(n: float, p: TestParams) -> list[tuple[str, float, float]]:
    """(name, direct |·|², closed form) for z± = 2ic ± n, n²/4 + c² and 1 ± n²/4c²."""
    c, r, g = p.c, p.abs_c, p.gamma
    y = n / (2.0 * r)
    z_plus = abs(2j * c + n) ** 2
    z_minus = abs(2j * c - n) ** 2
    shifted = abs(n**2 / 4 + c**2) ** 2
    cos2, sin2 = math.cos(g) ** 2, math.sin(g) ** 2
    return [
        ("z_plus", z_plus, (2 * r * math.cos(g) + n) ** 2 + (2 * r * math.sin(g)) ** 2),
        ("z_plus_scaled", z_plus, 4 * r**2 * ((1 - y) ** 2 + 4 * y * math.cos(g / 2) ** 2)),
        ("z_minus", z_minus, 4 * r**2 * ((1 - y) ** 2 + 4 * y * math.sin(g / 2) ** 2)),
        (
            "n2_plus_c2",
            shifted,
            (n**2 / 4 - r**2 * math.cos(2 * g)) ** 2 + (r**2 * math.sin(2 * g)) ** 2,
        ),
        ("n2_plus_c2_scaled", shifted, r**4 * ((1 - y**2) ** 2 + 4 * y**2 * sin2)),
        ("one_minus", abs(1 - n**2 / (4 * c**2)) ** 2, (1 - y**2) ** 2 + 4 * y**2 * cos2),
        ("one_plus", abs(1 + n**2 / (4 * c**2)) ** 2, (1 - y**2) ** 2 + 4 * y**2 * sin2),
    ]
