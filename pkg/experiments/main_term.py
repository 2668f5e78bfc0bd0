"""Σ_{n≥3} 𝓛_{n²−4}(1) Φ(n,1) directly and through the approximate functional equation."""

import logging
import math
from typing import Optional

from common.config import TauConvention
from common.exceptions import InvalidArgumentError
from common.schemas import TruncatedValue
from common.utils.parallel import compensated_sum, parallel_map
from identities.exact_formula import l_phi_sum_at_one
from lfunctions.afe import afe_integral, s_v
from testfun.kernels import phi1_antiderivative, phi1_closed
from testfun.params import TestParams

logger = logging.getLogger(__name__)


def main_term(
    p: TestParams,
    N_max: int,
    tail_correction: bool = True,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> TruncatedValue:
    """Σ_{3≤n≤N_max} 𝓛_{n²−4}(1) Φ(n,1).

    With ``tail_correction`` the remainder n > N_max is replaced by
    −phi1_antiderivative(N_max + ½) and reported as the tail; without it the
    plain partial sum is returned with that same size as its tail.
    """
    corrected = l_phi_sum_at_one(p, N_max, start=3, convention=convention)
    if tail_correction:
        return corrected
    correction = -complex(phi1_antiderivative(N_max + 0.5, p))
    return TruncatedValue.of(
        corrected.complex - correction, corrected.tail_bound, corrected.terms_used
    )


def sv_main_split(
    p: TestParams,
    V: float,
    N_max: int,
    t_max: float = 40.0,
    convention: TauConvention = TauConvention.SYMMETRIC,
    threads: int = 1,
    deterministic: bool = False,
) -> tuple[complex, complex]:
    """Σ_{3≤n≤N_max} Φ(n,1) S_V(n²−4) and −Σ Φ(n,1)·(2πi)^{−1}∫_{(−½)} 𝓛_{n²−4}(1+s) V^s Γ(s) ds.

    The two parts add up to the uncorrected :func:`main_term`.
    """
    if V < 1:
        raise InvalidArgumentError(f"V must be at least 1, got {V}")
    if N_max < 3:
        raise InvalidArgumentError(f"N_max must be at least 3, got {N_max}")

    def one(n: int) -> tuple[complex, complex]:
        weight = complex(phi1_closed(float(n), p))
        m = n * n - 4
        return weight * s_v(m, V).complex, -weight * afe_integral(m, V, t_max, convention).complex

    n_values = list(range(3, N_max + 1))
    parts = parallel_map(one, n_values, threads=threads, deterministic=deterministic)
    sv_part = compensated_sum([a for a, _ in parts])
    integral_part = compensated_sum([b for _, b in parts])
    logger.debug("S_V split V=%.3g N_max=%d: %s + %s", V, N_max, sv_part, integral_part)
    return complex(sv_part), complex(integral_part)


def optimal_v(X: float, T: float, theta: float) -> float:
    """V = X^θ(1 + X^{1/2}/T), the smoothing length balancing both parts of the split."""
    return X**theta * (1.0 + math.sqrt(X) / T)


def main_term_via_afe(
    p: TestParams,
    N_max: int,
    V: Optional[float] = None,
    t_max: float = 40.0,
    convention: TauConvention = TauConvention.SYMMETRIC,
    threads: int = 1,
    deterministic: bool = False,
) -> TruncatedValue:
    """:func:`main_term` with every 𝓛_{n²−4}(1) rebuilt from the approximate functional equation.

    Uses the same mean-value tail correction, so the two routes differ only by
    the AFE residuals.
    """
    if V is None:
        V = optimal_v(p.X, p.T, p.theta)
    sv_part, integral_part = sv_main_split(
        p, V, N_max, t_max, convention, threads=threads, deterministic=deterministic
    )
    correction = -complex(phi1_antiderivative(N_max + 0.5, p))
    return TruncatedValue.of(sv_part + integral_part + correction, abs(correction), N_max - 2)
