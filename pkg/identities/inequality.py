"""The argument inequality behind the exponential factor of Φ(n, ½+it).

    −π|t| − t·arg(n²/4 + c²) ± t(arg z₊(n) − arg z₋(n)) ≤ 0,   z± = 2ci ± n.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from common.config import get_tolerances
from common.exceptions import InvalidArgumentError
from common.schemas import IdentityReport, InequalitySummary
from testfun.params import TestParams, params_new

logger = logging.getLogger(__name__)

DEFAULT_X = (4.0, 10.0, 1e2, 1e4)
DEFAULT_T = (2.0, 10.0, 1e2)
DEFAULT_T_SHIFTS = (0.1, 1.0, 10.0, 1e2)


def _exponents(n: np.ndarray, t: np.ndarray, p: TestParams) -> tuple[np.ndarray, np.ndarray]:
    base = np.angle(n**2 / 4.0 + p.c**2)
    spread = np.angle(2j * p.c + n) - np.angle(2j * p.c - n)
    common = -math.pi * np.abs(t) - t * base
    return common + t * spread, common - t * spread


def arg_inequality_check(n: float, t: float, p: TestParams) -> tuple[bool, float]:
    """Evaluate both sign choices at (n, t).

    Returns:
        (pass, margin) where margin is the larger of the two expressions;
        pass allows the fixture slack (10⁻¹²).
    """
    if n < 0:
        raise InvalidArgumentError(f"n must be non-negative, got {n}")
    plus, minus = _exponents(np.array([float(n)]), np.array([float(t)]), p)
    margin = float(max(plus[0], minus[0]))
    return margin <= get_tolerances().check("inequality").abs, margin


def arctan_addition_check(n: float, p: TestParams) -> IdentityReport:
    """arctan(2ab/(n²/4 − b² + a²)) + arctan(2a/(2b+n)) = arctan(2a/(n−2b)) for n > 2b."""
    a, b = p.a, p.b
    if n <= 2.0 * b:
        raise InvalidArgumentError(f"arctan addition needs n > 2b = {2.0 * b:.6g}, got {n}")
    lhs = math.atan(2.0 * a * b / (n**2 / 4.0 - b**2 + a**2)) + math.atan(2.0 * a / (2.0 * b + n))
    rhs = math.atan(2.0 * a / (n - 2.0 * b))
    tol = get_tolerances().check("arctan_addition")
    return IdentityReport.build(
        "arctan_addition",
        lhs,
        rhs,
        tol_abs=tol.abs,
        tol_rel=tol.rel,
        params={"n": n, **p.as_dict()},
    )


def inequality_grid(
    X_values: Sequence[float] = DEFAULT_X,
    T_values: Sequence[float] = DEFAULT_T,
    n_points: int = 1100,
    t_shifts: Sequence[float] = DEFAULT_T_SHIFTS,
    theta: float = 1.0 / 6.0,
) -> InequalitySummary:
    """Sample the inequality over X × T × n ∈ [0, 8|c|] × ±t_shifts, both signs.

    The n grid crosses both case boundaries n = 2(b² − a²)^{1/2} and n = 2b.
    """
    if n_points < 2 or not X_values or not T_values or not t_shifts:
        raise InvalidArgumentError("inequality grid needs a non-empty sample set")
    slack = get_tolerances().check("inequality").abs
    shifts = np.asarray(t_shifts, dtype=np.float64)
    t = np.concatenate([shifts, -shifts])
    samples = 0
    violations = 0
    worst = -math.inf
    for X in X_values:
        for T in T_values:
            p = params_new(X, T, theta)
            n = np.linspace(0.0, 8.0 * p.abs_c, n_points)
            nn, tt = np.meshgrid(n, t, indexing="ij")
            plus, minus = _exponents(nn.ravel(), tt.ravel(), p)
            margins = np.maximum(plus, minus)
            samples += 2 * margins.size
            violations += int(np.count_nonzero(plus > slack) + np.count_nonzero(minus > slack))
            worst = max(worst, float(margins.max()))
    logger.info(
        "argument inequality: %d samples, %d violations, worst %.3e", samples, violations, worst
    )
    return InequalitySummary(
        name="arg_inequality",
        samples=samples,
        violations=violations,
        worst_margin=worst,
        slack=slack,
    )
