"""Σ_{l≤q} S(l,l;q) cos(2πln/q) = q·ρ_q(n² − 4)."""

import logging

import numpy as np

from arith.kloosterman import diagonal_spectrum
from common.config import get_tolerances
from common.exceptions import InvalidArgumentError
from common.schemas import IdentityReport
from common.utils.parallel import chunk_ranges, parallel_map
from lfunctions.symbols import rho_fast

logger = logging.getLogger(__name__)


def _cosine_side(spectrum: np.ndarray, n_values: np.ndarray) -> np.ndarray:
    q = spectrum.size
    k = np.arange(q)
    phases = 2.0 * np.pi * np.outer(n_values % q, k) / q
    return np.cos(phases) @ spectrum


def _reports_for_q(q: int, n_values: np.ndarray) -> list[IdentityReport]:
    tol = get_tolerances().check("cosine")
    lhs = _cosine_side(diagonal_spectrum(q), n_values)
    return [
        IdentityReport.build(
            "cosine",
            float(value),
            float(q * rho_fast(q, int(n) ** 2 - 4)),
            tol_abs=tol.abs * q,
            tol_rel=tol.rel,
            params={"q": q, "n": int(n)},
        )
        for n, value in zip(n_values, lhs)
    ]


def cosine_kloosterman_check(q: int, n: int) -> IdentityReport:
    """Compare Σ_{l=1}^{q} S(l,l;q) cos(2πln/q) with q·ρ_q(n² − 4).

    Args:
        q: Modulus, q ≥ 1.
        n: Integer frequency.

    Returns:
        Report with slack 10⁻⁶·q.
    """
    if q < 1:
        raise InvalidArgumentError(f"q must be positive, got {q}")
    return _reports_for_q(int(q), np.array([int(n)]))[0]


def cosine_kloosterman_suite(
    q_max: int, n_max: int, threads: int = 1, deterministic: bool = False
) -> list[IdentityReport]:
    """Exhaustive run over 1 ≤ q ≤ q_max and 0 ≤ n ≤ n_max, ordered by (q, n)."""
    if q_max < 1 or n_max < 0:
        raise InvalidArgumentError("need q_max >= 1 and n_max >= 0")
    n_values = np.arange(n_max + 1)

    def work(bounds: tuple[int, int]) -> list[IdentityReport]:
        out: list[IdentityReport] = []
        for q in range(*bounds):
            out.extend(_reports_for_q(q, n_values))
        return out

    reports: list[IdentityReport] = []
    chunks = chunk_ranges(1, q_max + 1, max(1, threads * 4))
    for part in parallel_map(work, chunks, threads=threads, deterministic=deterministic):
        reports.extend(part)
    failed = sum(not r.passed for r in reports)
    logger.info(
        "cosine suite q<=%d, n<=%d: %d checks, %d failed", q_max, n_max, len(reports), failed
    )
    return reports
