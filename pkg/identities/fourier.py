"""Fourier expansion of the symmetrized sum F_ψ(x, s) + F_ψ(1 − x, s)."""

import logging
import math

import numpy as np

from common.config import get_tolerances
from common.exceptions import InvalidArgumentError
from common.schemas import IdentityReport, TruncatedValue
from testfun.kernels import capital_phi, phi
from testfun.params import TestParams

logger = logging.getLogger(__name__)

SERIES_DIGITS = 40.0


def f_psi(x: float, s: complex, p: TestParams) -> TruncatedValue:
    """F_φ(x, s) = Σ_{n≥0} (n+x)^{−s} φ(4π(n+x)).

    Only the φ family fixed by ``p`` is supported: the truncation and the
    geometric tail rely on its e^{−ax} decay. Terms decay like e^{−4πan}; the
    sum stops once they fall e^{−40} below the first one. For another ψ the
    transform Ψ(n, s) is available from :func:`testfun.oracles.psi_transform`.
    """
    if not 0.0 < x <= 1.0:
        raise InvalidArgumentError(f"x must lie in (0, 1], got {x}")
    s = complex(s)
    ratio = math.exp(-4.0 * math.pi * p.a)
    digits = SERIES_DIGITS + 2.0 * math.log1p(1.0 / p.a)
    count = int(math.ceil(digits / (4.0 * math.pi * p.a))) + 2
    y = np.arange(count + 1, dtype=np.float64) + x
    terms = np.exp(-s * np.log(y)) * np.asarray(phi(4.0 * math.pi * y, p))
    tail = 2.0 * abs(terms[-1]) / (1.0 - ratio)
    return TruncatedValue.of(complex(terms[:-1].sum()), tail, count)


def fourier_check(x: float, s: complex, p: TestParams, K: int = 20_000) -> IdentityReport:
    """(F_φ(x,s) + F_φ(1−x,s))/2 against 2Σ*_{n≤K} Φ(n,s) cos(2πnx).

    The cosine side is a Fourier series with eventually monotone coefficients
    of size n^{−(3−σ)}, so its tail is at most 2|Φ(K+1,s)|/|sin πx|.

    Args:
        x: Point in (0, 1).
        s: Exponent with 3/2 < Re s < 3.
        p: Test-function parameters.
        K: Fourier truncation.

    Returns:
        Report named ``fourier``.
    """
    s = complex(s)
    if not 1.5 < s.real < 3.0:
        raise InvalidArgumentError(f"fourier_check needs 3/2 < Re s < 3, got {s}")
    if not 0.0 < x < 1.0:
        raise InvalidArgumentError(f"x must lie in (0, 1), got {x}")
    left, right = f_psi(x, s, p), f_psi(1.0 - x, s, p)
    lhs = 0.5 * (left.complex + right.complex)
    n = np.arange(K + 2, dtype=np.float64)
    coefficients = np.asarray(capital_phi(n, s, p))
    weights = np.cos(2.0 * math.pi * n[: K + 1] * x)
    weights[0] = 0.5
    rhs = 2.0 * complex(np.dot(coefficients[: K + 1], weights))
    rhs_tail = 2.0 * abs(coefficients[K + 1]) / abs(math.sin(math.pi * x))
    tol = get_tolerances().check("fourier")
    report = IdentityReport.build(
        "fourier",
        lhs,
        rhs,
        lhs_tail=0.5 * (left.tail_bound + right.tail_bound),
        rhs_tail=rhs_tail,
        tol_abs=tol.abs,
        tol_rel=tol.rel,
        params={"x": x, "s": [s.real, s.imag], "K": K, **p.as_dict()},
    )
    logger.debug("fourier x=%.3f s=%s K=%d err=%.3e", x, s, K, report.abs_err)
    return report
