"""The h-smoothed Kloosterman sum and its Weil-bound envelope."""

import logging
import math

from common.schemas import TruncatedValue
from identities.exact_formula import weighted_kloosterman_sum
from testfun.params import BumpSpec, TestParams

logger = logging.getLogger(__name__)

A1_SCALE = math.pi**2 / 12.0


def a1_sum(
    p: TestParams,
    bump: BumpSpec,
    Q: int,
    a1: bool = False,
    threads: int = 1,
    deterministic: bool = False,
) -> TruncatedValue:
    """(1/N) Σ_n h(n) Σ_{q≤Q} S(n,n;q) q^{−1} φ(4πn/q).

    Args:
        p: Test-function parameters.
        bump: Bump on [N, 2N].
        Q: Largest modulus.
        a1: Return A₁ = (π²/12N) Σ_n h(n) … instead.
        threads: Worker count.
        deterministic: Force in-order single-sequence evaluation.

    Returns:
        Normalized value with the Weil-bound q-tail, scaled alike.
    """
    total = weighted_kloosterman_sum(p, bump, Q, threads=threads, deterministic=deterministic)
    scale = (A1_SCALE if a1 else 1.0) / bump.N
    return TruncatedValue.of(
        scale * total.complex, scale * total.tail_bound, total.terms_used, total.converged
    )


def weil_trivial_envelope(N: float, X: float, T: float) -> float:
    """N^{1/2} X^{1/4} T^{3/2} log(NX), the size allowed by the Weil bound alone."""
    return math.sqrt(N) * X**0.25 * T**1.5 * math.log(N * X)
