"""Dirichlet L-functions L(s, χ_D) of real primitive characters."""

import logging
import math
from functools import lru_cache

import numpy as np
from scipy.special import digamma

from arith.characters import character_table
from common.exceptions import PoleError

from .zeta import ComplexLike, hurwitz_zeta, hurwitz_zeta_pole_scaled, zeta

logger = logging.getLogger(__name__)

# Entries of the exp(−s·log n) matrix formed per pass.
BLOCK_ELEMENTS = 1 << 21
MAX_MOMENTS = 400
SERIES_TOLERANCE = 1e-17


@lru_cache(maxsize=1024)
def _nonzero_character(D: int) -> tuple[np.ndarray, np.ndarray]:
    """Residues a ∈ [1, |D|] with χ_D(a) ≠ 0 and the values χ_D(a)."""
    chi = character_table(D)
    q = abs(D)
    a = np.arange(1, q + 1, dtype=np.int64)
    values = chi[a % q].astype(np.float64)
    keep = values != 0
    return a[keep], values[keep]


@lru_cache(maxsize=1024)
def _moments(D: int, count: int) -> np.ndarray:
    """M_k = Σ_a χ_D(a)(a/|D| − ½)^k for k = 0, …, count."""
    residues, values = _nonzero_character(D)
    u = residues / abs(D) - 0.5
    out = np.empty(count + 1)
    power = values.copy()
    for k in range(count + 1):
        out[k] = power.sum()
        power *= u
    return out


def _series_length(max_abs_s: float, min_sigma: float, q: int, shift: int) -> int:
    base = 2 * shift + 1
    scale = 4.0 * q ** max(0.0, 1.0 - min_sigma) * (shift + 0.5) ** max(0.0, -min_sigma)
    coeff = 1.0
    for k in range(1, MAX_MOMENTS + 1):
        coeff *= (max_abs_s + k - 1) / k
        if k > max_abs_s and scale * coeff * base ** (-float(k)) < SERIES_TOLERANCE:
            return k
    logger.warning("moment series for q=%d hit the %d-term cap", q, MAX_MOMENTS)
    return MAX_MOMENTS


def _character_power_sum(s: np.ndarray, D: int, upper: int) -> np.ndarray:
    """Σ_{n ≤ upper} χ_D(n) n^{-s} for every s in a 1-d array."""
    residues, values = _nonzero_character(D)
    q = abs(D)
    periods = upper // q
    n = (residues[None, :] + q * np.arange(periods, dtype=np.int64)[:, None]).ravel()
    weights = np.tile(values, periods)
    total = np.zeros(s.shape, dtype=np.complex128)
    block = max(1024, BLOCK_ELEMENTS // max(1, s.size))
    for start in range(0, n.size, block):
        log_n = np.log(n[start : start + block].astype(np.float64))
        total += np.exp(-s[:, None] * log_n[None, :]) @ weights[start : start + block]
    return total


def dirichlet_l_many(s: ComplexLike, D: int) -> np.ndarray:
    """L(s, χ_D) for an array of s.

    The sum over n ≤ K|D| is taken directly; the remainder is expanded around
    the period midpoints K + ½:

        Σ_{n>Kq} χ(n) n^{-s} = q^{-s} Σ_{k≥1} (−1)^k (s)_k/k! · ζ(s+k, K+½) · M_k,

    with M_k the character moments. M_0 = 0 for non-principal χ, so no pole
    appears at s = 1. The product (s)_k ζ(s+k) is formed from the pole-scaled
    Hurwitz value so s = 1 − k stays finite.

    Args:
        s: Complex points (any shape).
        D: Fundamental discriminant, or 1 for ζ.

    Returns:
        Array with the shape of ``s``.

    Raises:
        PoleError: For D = 1 at s = 1.
    """
    s_arr = np.asarray(s, dtype=np.complex128)
    shape = s_arr.shape
    flat = s_arr.ravel()
    if D == 1:
        if np.any(flat == 1):
            raise PoleError("L(s, chi_1)", 1.0)
        return np.asarray(zeta(flat)).reshape(shape)
    if flat.size == 0:
        return np.zeros(shape, dtype=np.complex128)

    q = abs(D)
    max_abs = float(np.max(np.abs(flat)))
    shift = 1 + int(max_abs // 8)
    direct = _character_power_sum(flat, D, shift * q)

    count = _series_length(max_abs, float(np.min(flat.real)), q, shift)
    moments = _moments(D, count)
    k = np.arange(1, count + 1)
    # M_k vanishes for odd k when χ is even and for even k when χ is odd.
    active = k[(k % 2 == 1) == (D < 0)]
    w = flat[:, None] + active[None, :]
    scaled = np.asarray(hurwitz_zeta_pole_scaled(w, shift + 0.5))

    # prefactor_k = (s)_{k-1}/k!
    prefactor = np.empty((flat.size, count), dtype=np.complex128)
    running = np.ones(flat.size, dtype=np.complex128)
    for j in range(count):
        prefactor[:, j] = running
        running = running * (flat + j) / (j + 2)
    signs = np.where(active % 2 == 0, 1.0, -1.0)
    series = (prefactor[:, active - 1] * scaled * (signs * moments[active])[None, :]).sum(axis=1)
    value = direct + np.exp(-flat * math.log(q)) * series
    logger.debug("L(s, chi_%d): %d direct terms, %d moments", D, shift * q, count)
    return value.reshape(shape)


def dirichlet_l(s: complex, D: int) -> complex:
    """L(s, χ_D) at a single point."""
    return complex(dirichlet_l_many(np.array([s]), D)[0])


def dirichlet_l_hurwitz(s: complex, D: int) -> complex:
    """|D|^{-s} Σ_{a=1}^{|D|} χ_D(a) ζ(s, a/|D|), the defining Hurwitz decomposition.

    At s = 1 the poles of ζ(s, a/|D|) cancel for D ≠ 1 and the value is the
    constant term −|D|^{-1} Σ χ_D(a) ψ(a/|D|). For D = 1 it raises PoleError.
    """
    if D == 1:
        return complex(zeta(s))
    residues, values = _nonzero_character(D)
    q = abs(D)
    if complex(s) == 1.0:
        return complex(-(digamma(residues / q) @ values) / q)
    terms = np.asarray(hurwitz_zeta(np.full(residues.shape, complex(s)), residues / q))
    return complex(np.exp(-complex(s) * math.log(q)) * (terms @ values))
