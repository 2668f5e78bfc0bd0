"""The weight h: a smooth bump on [N, 2N] with ∫h = N, and its Mellin transform."""

import logging
import math
from functools import lru_cache
from typing import Union

import numpy as np

from common.config import get_tolerances
from common.utils.quadrature import gauss_legendre, integrate_edges

from .params import BumpSpec

logger = logging.getLogger(__name__)

BUMP_PANELS = 64
BUMP_ORDER = 16


def _profile(u: np.ndarray) -> np.ndarray:
    inside = np.abs(u) < 1.0
    out = np.zeros_like(u, dtype=np.float64)
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


@lru_cache(maxsize=1)
def bump_integral() -> float:
    """I₀ = ∫_{−1}^{1} e^{−1/(1−u²)} du by composite Gauss–Legendre."""
    edges = np.linspace(-1.0, 1.0, BUMP_PANELS + 1)
    value = integrate_edges(_profile, edges, order=BUMP_ORDER).real
    stored = get_tolerances().constant("bump_i0")
    if abs(value - stored) > 1e-12:
        logger.warning("bump integral %.16f differs from stored constant %.16f", value, stored)
    return value


def bump_spec(N: float) -> BumpSpec:
    """BumpSpec with C = 2/I₀, so that ∫h = C·I₀·N/2 = N."""
    return BumpSpec(N=float(N), C=2.0 / bump_integral())


def h_bump(x: Union[float, np.ndarray], bump: BumpSpec) -> Union[float, np.ndarray]:
    """h(x) = C·exp(−1/(1−u²)) with u = (x − 3N/2)/(N/2), zero outside (N, 2N)."""
    x_arr = np.asarray(x, dtype=np.float64)
    u = (x_arr - 1.5 * bump.N) / (0.5 * bump.N)
    out = bump.C * _profile(np.atleast_1d(u)).reshape(u.shape)
    return float(out) if out.ndim == 0 else out


def h_mellin(s: Union[complex, np.ndarray], bump: BumpSpec) -> Union[complex, np.ndarray]:
    """h̃(s) = ∫_N^{2N} h(x) x^{s−1} dx, vectorized over s.

    The bump is flat to all orders at both ends, so Gauss–Legendre panels
    converge quickly; the panel count grows with |Im s| to follow x^{it}.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    span = math.log(2.0) * float(np.max(np.abs(s_arr.imag), initial=0.0))
    panels = BUMP_PANELS + int(math.ceil(span))
    lo, hi = bump.support
    edges = np.linspace(lo, hi, panels + 1)
    nodes, weights = gauss_legendre(BUMP_ORDER)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel() * np.asarray(h_bump(x, bump))
    values = np.exp(np.outer(s_arr - 1.0, np.log(x))) @ w
    if np.ndim(s) == 0:
        return complex(values[0])
    return values.reshape(np.shape(s))
