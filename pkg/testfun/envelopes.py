"""Explicit envelope functions f_{±1} and g governing |Φ(n, s)| on the ½-line."""

import math
from typing import Union

import numpy as np

from common.exceptions import InvalidArgumentError

from .params import TestParams

ArrayLike = Union[float, np.ndarray]


def _positive(x: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr <= 0):
        raise InvalidArgumentError(f"{name} must be positive")
    return arr


def f_envelope(j: int, x: ArrayLike, p: TestParams) -> ArrayLike:
    """f_j(x) = R(x)^{5j/8} · x^{2θ} / ((1 − x²)² + 4x² sin²γ)^{5/8}.

    R(x) = ((1 − x)² + 4x cos²(γ/2)) / ((1 − x)² + 4x sin²(γ/2)) ≥ 1, hence
    f_{−1} ≤ f_1.
    """
    if j not in (1, -1):
        raise InvalidArgumentError(f"j must be +1 or -1, got {j}")
    x_arr = _positive(x, "x")
    g = p.gamma
    ratio = ((1.0 - x_arr) ** 2 + 4.0 * x_arr * math.cos(g / 2) ** 2) / (
        (1.0 - x_arr) ** 2 + 4.0 * x_arr * math.sin(g / 2) ** 2
    )
    base = (1.0 - x_arr**2) ** 2 + 4.0 * x_arr**2 * math.sin(g) ** 2
    out = ratio ** (5.0 * j / 8.0) * x_arr ** (2.0 * p.theta) / base ** (5.0 / 8.0)
    return float(out) if out.ndim == 0 else out


def g_envelope(y: ArrayLike, p: TestParams) -> ArrayLike:
    """g(y) = ((1 − y²)² + 4y² cos²γ)^{1/2} / ((1 − y²)² + 4y² sin²γ) · y^{2θ}."""
    y_arr = _positive(y, "y")
    g = p.gamma
    num = np.sqrt((1.0 - y_arr**2) ** 2 + 4.0 * y_arr**2 * math.cos(g) ** 2)
    den = (1.0 - y_arr**2) ** 2 + 4.0 * y_arr**2 * math.sin(g) ** 2
    out = num / den * y_arr ** (2.0 * p.theta)
    return float(out) if out.ndim == 0 else out
