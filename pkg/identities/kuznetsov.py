"""Both sides of the Kuznetsov-type identity

    Z_φ(s) = Σ_q q^{−1} Σ_n S(n,n;q) n^{−s} φ(4πn/q)
           = 2ζ(s)/ζ(2s) · Σ*_n 𝓛_{n²−4}(s) Φ(n, s),     3/2 < Re s < 3.
"""

import logging
import math
from typing import Optional

import numpy as np

from arith.kloosterman import diagonal_spectrum
from common.config import TauConvention, get_tolerances
from common.exceptions import InvalidArgumentError
from common.schemas import IdentityReport, TruncatedValue
from common.utils.parallel import chunk_ranges, compensated_sum, parallel_map
from lfunctions.generalized import lambda_mean, script_l_many
from lfunctions.zeta import zeta
from testfun.kernels import capital_phi, capital_phi_integral, phi
from testfun.params import TestParams

logger = logging.getLogger(__name__)

DECAY_THRESHOLD = 1e-12


def _check_strip(s: complex) -> complex:
    s = complex(s)
    if not 1.5 < s.real < 3.0:
        raise InvalidArgumentError(f"need 3/2 < Re s < 3, got {s}")
    return s


def decay_cutoff(p: TestParams, threshold: float = DECAY_THRESHOLD) -> float:
    """Smallest x past the peak of x²e^{−ax} where it drops below threshold·peak."""
    peak_x = 2.0 / p.a
    peak = peak_x**2 * math.exp(-2.0)
    x = peak_x
    while x**2 * math.exp(-p.a * x) > threshold * peak:
        x *= 1.05
    return x


def _modulus_term(q: int, s: complex, p: TestParams, x_cut: float, n_cap: Optional[int]) -> complex:
    """q^{−1} Σ_n S(n,n;q) n^{−s} φ(4πn/q) over n with 4πn/q ≤ x_cut."""
    count = max(1, int(math.ceil(x_cut * q / (4.0 * math.pi))))
    if n_cap is not None:
        count = min(count, n_cap)
    spectrum = diagonal_spectrum(q)
    n = np.arange(1, count + 1, dtype=np.int64)
    weights = np.exp(-s * np.log(n)) * np.asarray(phi(4.0 * math.pi * n / q, p))
    return complex(np.dot(spectrum[n % q], weights)) / q


def z_psi_lhs(
    s: complex,
    p: TestParams,
    Q: int,
    n_max: Optional[int] = None,
    threads: int = 1,
    deterministic: bool = False,
) -> TruncatedValue:
    """Z_φ(s) truncated at q ≤ Q with an extrapolated q-tail.

    Per modulus, n runs until φ(4πn/q) has decayed below 10⁻¹² of its peak
    (optionally capped at ``n_max``). The q-terms decay on average like
    q^{−σ}, so the tail past Q is extrapolated from the block (Q/2, Q] by the
    geometric factor r/(1 − r), r = 2^{1−σ}; the extrapolation is added to the
    value and its modulus is reported as the tail.

    Args:
        s: Exponent in the strip 3/2 < Re s < 3.
        p: Test-function parameters.
        Q: Largest modulus.
        n_max: Optional global cap on n.
        threads: Worker count.
        deterministic: Force in-order single-sequence evaluation.

    Returns:
        Value with the extrapolated tail.
    """
    s = _check_strip(s)
    if Q < 1:
        raise InvalidArgumentError(f"Q must be positive, got {Q}")
    x_cut = decay_cutoff(p)
    if Q == 1:
        # S(n,n;1) = 1; the block (Q/2, Q] would be the whole sum, so no extrapolation
        return TruncatedValue.of(_modulus_term(1, s, p, x_cut, n_max), 0.0, 1)

    def work(bounds: tuple[int, int]) -> list[complex]:
        return [_modulus_term(q, s, p, x_cut, n_max) for q in range(*bounds)]

    terms: list[complex] = []
    chunks = chunk_ranges(1, Q + 1, max(1, threads * 4))
    for part in parallel_map(work, chunks, threads=threads, deterministic=deterministic):
        terms.extend(part)
    values = np.array(terms, dtype=np.complex128)
    head = compensated_sum(values)
    block = compensated_sum(values[Q // 2 :])
    r = 2.0 ** (1.0 - s.real)
    extrapolated = block * r / (1.0 - r)
    logger.debug("Z lhs s=%s Q=%d x_cut=%.1f tail=%.3e", s, Q, x_cut, abs(extrapolated))
    return TruncatedValue.of(head + extrapolated, abs(extrapolated), Q)


def sigma_star_sum(
    s: complex,
    p: TestParams,
    N_max: int,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> TruncatedValue:
    """Σ*_{n≤N_max} 𝓛_{n²−4}(s) Φ(n, s) with the mean-value tail correction.

    Past N_max, 𝓛_{n²−4}(s) is replaced by its mean ζ(2s)/ζ(1+s); since
    ∫_0^∞ Φ(x,s) dx = 0 for Re s < 2, the correction is
    −M(s)·∫_0^{N+½} Φ(x,s) dx. The tail is |correction| + |Φ(N,s)|·N^{1/2}.
    """
    s = complex(s)
    n = np.arange(N_max + 1, dtype=np.float64)
    kernel = np.asarray(capital_phi(n, s, p))
    values = np.array(
        [complex(script_l_many(np.array([s]), k * k - 4, convention)[0]) for k in range(N_max + 1)]
    )
    terms = values * kernel
    terms[0] *= 0.5
    correction = 0.0j
    if s.real < 2.0:
        correction = -complex(lambda_mean(s)) * capital_phi_integral(N_max + 0.5, s, p)
    tail = abs(correction) + abs(kernel[-1]) * math.sqrt(N_max)
    return TruncatedValue.of(compensated_sum(terms) + correction, tail, N_max + 1)


def z_psi_rhs(
    s: complex,
    p: TestParams,
    N_max: int,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> TruncatedValue:
    """2ζ(s)/ζ(2s) · [½𝓛_{−4}(s)Φ(0,s) + Σ_{1≤n≤N_max} 𝓛_{n²−4}(s)Φ(n,s)].

    The n = 2 term uses 𝓛₀(s) = ζ(2s − 1), regular in the strip.
    """
    s = _check_strip(s)
    if N_max < 3:
        raise InvalidArgumentError(f"N_max must be at least 3, got {N_max}")
    inner = sigma_star_sum(s, p, N_max, convention)
    factor = 2.0 * complex(zeta(s)) / complex(zeta(2.0 * s))
    return TruncatedValue.of(
        factor * inner.complex, abs(factor) * inner.tail_bound, inner.terms_used
    )


def kuznetsov_check(
    s: complex,
    p: TestParams,
    Q: int,
    N_max: int,
    n_max: Optional[int] = None,
    threads: int = 1,
    deterministic: bool = False,
) -> IdentityReport:
    """Report pairing :func:`z_psi_lhs` with :func:`z_psi_rhs`."""
    lhs = z_psi_lhs(s, p, Q, n_max, threads=threads, deterministic=deterministic)
    rhs = z_psi_rhs(s, p, N_max)
    tol = get_tolerances().check("kuznetsov")
    s = complex(s)
    return IdentityReport.build(
        "kuznetsov",
        lhs.complex,
        rhs.complex,
        lhs_tail=lhs.tail_bound,
        rhs_tail=rhs.tail_bound,
        tol_abs=tol.abs,
        tol_rel=tol.rel,
        params={"s": [s.real, s.imag], "Q": Q, "N_max": N_max, **p.as_dict()},
    )
