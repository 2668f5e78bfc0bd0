"""The exact formula for the h-weighted Kloosterman sum.

    Σ_n h(n) Σ_q S(n,n;q) q^{−1} φ(4πn/q)
      = (2h̃(1)/ζ(2)) Σ*_{n≠2} 𝓛_{n²−4}(1) Φ(n,1)
      + 2 res_{s=1} h̃(s) ζ(s) ζ(2s−1)/ζ(2s) Φ(2,s)
      + (2π)^{−1} ∫ h̃(½+it) · 2ζ(½+it)/ζ(1+2it) · Σ*_n 𝓛_{n²−4}(½+it) Φ(n,½+it) dt
"""

import logging
import math
from typing import Optional

import numpy as np

from arith.factorization import sieve_tables
from arith.kloosterman import diagonal_spectrum
from common.config import TauConvention, get_tolerances
from common.exceptions import InvalidArgumentError
from common.schemas import IdentityReport, TruncatedValue
from common.utils.parallel import chunk_ranges, compensated_sum, parallel_map
from common.utils.quadrature import integrate_edges, integrate_panels
from lfunctions.generalized import lambda_mean, script_l_many
from lfunctions.zeta import zeta
from testfun.bump import h_bump, h_mellin
from testfun.kernels import capital_phi, capital_phi_integral, phi, phi1_antiderivative
from testfun.params import BumpSpec, TestParams

logger = logging.getLogger(__name__)

WEIL_TAIL_SPAN = 20
DIVISOR_CONSTANT = 4.0
RESIDUE_RADIUS = 0.1
RESIDUE_NODES = 64
HALF_LINE_ORDER = 12
HALF_LINE_REL_TOL = 1e-9
HALF_LINE_MIN_TERMS = 40


def _support_integers(bump: BumpSpec) -> np.ndarray:
    lo, hi = bump.support
    return np.arange(math.floor(lo) + 1, math.ceil(hi), dtype=np.int64)


def weil_q_tail(n: np.ndarray, weights: np.ndarray, p: TestParams, Q: int) -> float:
    """Rigorous bound on Σ_n w(n) Σ_{q>Q} |S(n,n;q)| q^{−1} |φ(4πn/q)|.

    Uses |S(n,n;q)| ≤ τ₀(q)·√n·√q and |φ(x)| ≤ |sinh²β|x²/2π; Σ τ₀(q) q^{−5/2}
    is summed exactly up to 20Q and bounded with τ₀(q) ≤ 4q^{1/3} beyond.
    """
    upper = WEIL_TAIL_SPAN * Q
    tau = sieve_tables(upper).tau0[Q + 1 : upper + 1].astype(np.float64)
    q = np.arange(Q + 1, upper + 1, dtype=np.float64)
    explicit = float(np.sum(tau * q**-2.5))
    beyond = DIVISOR_CONSTANT * upper ** (-7.0 / 6.0) / (7.0 / 6.0)
    phi_size = abs(p.sinh2) / (2.0 * math.pi) * (4.0 * math.pi * n) ** 2
    amplitude = float(np.sum(np.abs(weights) * phi_size * np.sqrt(n)))
    return amplitude * (explicit + beyond)


def weighted_kloosterman_sum(
    p: TestParams,
    bump: BumpSpec,
    Q: int,
    threads: int = 1,
    deterministic: bool = False,
) -> TruncatedValue:
    """Σ_n h(n) Σ_{q≤Q} S(n,n;q) q^{−1} φ(4πn/q) with a Weil-bound q-tail.

    Args:
        p: Test-function parameters.
        bump: Bump; only the integers inside (N, 2N) contribute.
        Q: Largest modulus.
        threads: Worker count.
        deterministic: Force in-order single-sequence evaluation.

    Returns:
        Value and rigorous tail bound.
    """
    if Q < 1:
        raise InvalidArgumentError(f"Q must be positive, got {Q}")
    n = _support_integers(bump)
    weights = np.asarray(h_bump(n.astype(np.float64), bump))

    def work(bounds: tuple[int, int]) -> list[complex]:
        out = []
        for q in range(*bounds):
            kernel = np.asarray(phi(4.0 * math.pi * n / q, p))
            out.append(complex(np.dot(weights * diagonal_spectrum(q)[n % q], kernel)) / q)
        return out

    terms: list[complex] = []
    chunks = chunk_ranges(1, Q + 1, max(1, threads * 4))
    for part in parallel_map(work, chunks, threads=threads, deterministic=deterministic):
        terms.extend(part)
    tail = weil_q_tail(n.astype(np.float64), weights, p, Q)
    logger.debug("weighted sum N=%g Q=%d: %d integers, tail %.3e", bump.N, Q, n.size, tail)
    return TruncatedValue.of(compensated_sum(terms), tail, Q)


def l_phi_sum_at_one(
    p: TestParams,
    N_max: int,
    start: int = 0,
    convention: TauConvention = TauConvention.SYMMETRIC,
) -> TruncatedValue:
    """Σ*_{start≤n≤N_max, n≠2} 𝓛_{n²−4}(1) Φ(n,1) with the mean-value tail.

    The mean of 𝓛_{n²−4}(1) over n is 1, so Σ_{n>N} is replaced by
    ∫_{N+½}^∞ Φ(x,1) dx = −phi1_antiderivative(N+½); the correction is added
    and its modulus reported as the tail. The n = 0 term carries weight ½.
    """
    if N_max < max(start, 3):
        raise InvalidArgumentError(f"N_max must be at least max(start, 3), got {N_max}")
    n_values = [k for k in range(start, N_max + 1) if k != 2]
    kernel = np.asarray(capital_phi(np.array(n_values, dtype=np.float64), 1.0, p))
    values = np.array(
        [complex(script_l_many(np.array([1.0]), k * k - 4, convention)[0]) for k in n_values]
    )
    terms = values * kernel
    if n_values[0] == 0:
        terms[0] *= 0.5
    correction = -complex(phi1_antiderivative(N_max + 0.5, p))
    return TruncatedValue.of(compensated_sum(terms) + correction, abs(correction), len(n_values))


def residue_term(
    p: TestParams, bump: BumpSpec, radius: float = RESIDUE_RADIUS, nodes: int = RESIDUE_NODES
) -> complex:
    """2·res_{s=1} h̃(s) ζ(s) ζ(2s−1)/ζ(2s) Φ(2,s) by the trapezoidal rule on |s−1| = r.

    (2πi)^{−1}∮ f ds = mean over the nodes of f(s_k)·r e^{iθ_k}; the double pole
    needs no Laurent expansion.
    """
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    step = radius * np.exp(1j * theta)
    s = 1.0 + step
    values = (
        np.asarray(h_mellin(s, bump))
        * np.asarray(zeta(s))
        * np.asarray(zeta(2.0 * s - 1.0))
        / np.asarray(zeta(2.0 * s))
        * np.asarray(capital_phi(2.0, s, p))
    )
    return 2.0 * complex(np.mean(values * step))


def _half_line_terms(p: TestParams, N_max: int, n_half: Optional[int]) -> int:
    if n_half is not None:
        return min(N_max, n_half)
    return min(N_max, max(HALF_LINE_MIN_TERMS, int(math.ceil(12.0 * p.abs_c))))


def _half_line_weight(s: np.ndarray, bump: BumpSpec) -> np.ndarray:
    return np.asarray(h_mellin(s, bump)) * 2.0 * np.asarray(zeta(s)) / np.asarray(zeta(2.0 * s))


def _mean_value_correction(s: np.ndarray, p: TestParams, terms: int) -> np.ndarray:
    return -np.asarray(lambda_mean(s)) * np.asarray(capital_phi_integral(terms + 0.5, s, p))


def half_line_integral(
    p: TestParams,
    bump: BumpSpec,
    N_max: int,
    t_max: float = 40.0,
    n_half: Optional[int] = None,
    convention: TauConvention = TauConvention.SYMMETRIC,
    threads: int = 1,
    deterministic: bool = False,
) -> TruncatedValue:
    """(2π)^{−1} ∫_{|t|≤t_max} h̃(½+it) · 2ζ(½+it)/ζ(1+2it) · Σ*_n 𝓛_{n²−4}(½+it) Φ(n,½+it) dt.

    The n-sum stops at n_half (default max(40, 12|c|), at most N_max) and is
    completed by the mean-value correction −ζ(2s)/ζ(1+s)·∫_0^{n+½} Φ(x,s) dx.
    Panels of width 1 are added symmetrically in ±t until three consecutive
    ones contribute less than 10⁻⁹ of the total.

    Returns:
        Value; the tail adds the last panel size and the integrated size of
        the mean-value correction.
    """
    terms = _half_line_terms(p, N_max, n_half)

    def integrand(t: np.ndarray) -> np.ndarray:
        s = 0.5 + 1j * t

        def one(k: int) -> np.ndarray:
            factor = 0.5 if k == 0 else 1.0
            return factor * script_l_many(s, k * k - 4, convention) * capital_phi(float(k), s, p)

        partial = np.sum(
            parallel_map(one, list(range(terms + 1)), threads=threads, deterministic=deterministic),
            axis=0,
        )
        return _half_line_weight(s, bump) * (partial + _mean_value_correction(s, p, terms))

    def symmetric(t: np.ndarray) -> np.ndarray:
        value = integrand(np.concatenate([t, -t]))
        return value[: t.size] + value[t.size :]

    def correction_size(t: np.ndarray) -> np.ndarray:
        s = 0.5 + 1j * t
        return np.abs(_half_line_weight(s, bump) * _mean_value_correction(s, p, terms))

    result = integrate_panels(
        symmetric, 0.0, 1.0, stop=t_max, order=HALF_LINE_ORDER, rel_tol=HALF_LINE_REL_TOL
    )
    edges = np.linspace(-result.end, result.end, 2 * max(1, int(math.ceil(result.end))) + 1)
    correction_tail = integrate_edges(correction_size, edges, order=HALF_LINE_ORDER).real
    value = result.value / (2.0 * math.pi)
    tail = (result.last_panel + correction_tail) / (2.0 * math.pi)
    logger.debug("half-line integral: %d panels to t=%.1f, n<=%d", result.panels, result.end, terms)
    return TruncatedValue.of(value, tail, result.panels * HALF_LINE_ORDER, result.converged)


def exact_formula_check(
    p: TestParams,
    bump: BumpSpec,
    Q: int,
    N_max: int,
    t_max: float = 40.0,
    convention: TauConvention = TauConvention.SYMMETRIC,
    threads: int = 1,
    deterministic: bool = False,
) -> IdentityReport:
    """Compare the weighted Kloosterman sum with the spectral side of the exact formula.

    Args:
        p: Test-function parameters.
        bump: Bump on [N, 2N].
        Q: Largest modulus on the Kloosterman side.
        N_max: n truncation of the s = 1 sum.
        t_max: Half-line truncation.
        convention: τ normalization for 𝓛.
        threads: Worker count.
        deterministic: Force in-order single-sequence evaluation.

    Returns:
        Report named ``exact_formula`` with the three spectral pieces in details.
    """
    lhs = weighted_kloosterman_sum(p, bump, Q, threads=threads, deterministic=deterministic)
    main = l_phi_sum_at_one(p, N_max, start=0, convention=convention)
    scale = 2.0 * complex(h_mellin(1.0, bump)) / complex(zeta(2.0))
    residue = residue_term(p, bump)
    residue_check = residue_term(p, bump, nodes=2 * RESIDUE_NODES)
    integral = half_line_integral(
        p, bump, N_max, t_max, convention=convention, threads=threads, deterministic=deterministic
    )
    rhs = scale * main.complex + residue + integral.complex
    rhs_tail = abs(scale) * main.tail_bound + abs(residue - residue_check) + integral.tail_bound
    tol = get_tolerances().check("exact_formula")
    report = IdentityReport.build(
        "exact_formula",
        lhs.complex,
        rhs,
        lhs_tail=lhs.tail_bound,
        rhs_tail=rhs_tail,
        tol_abs=tol.abs,
        tol_rel=tol.rel,
        params={"N": bump.N, "Q": Q, "N_max": N_max, "t_max": t_max, **p.as_dict()},
        details={
            "main": [(scale * main.complex).real, (scale * main.complex).imag],
            "residue": [residue.real, residue.imag],
            "integral": [integral.value.re, integral.value.im],
            "integral_converged": integral.converged,
        },
    )
    logger.info("exact formula X=%g T=%g N=%g: rel_err %.3e", p.X, p.T, bump.N, report.rel_err)
    return report
