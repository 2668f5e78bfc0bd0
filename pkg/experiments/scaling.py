"""Empirical scaling exponents of the smoothed Kloosterman sum and the main term.

The fits compare measured growth in X and T with the envelope exponents of
the asymptotic bounds. They report consistency only; the bounds carry
unspecified constants and are never asserted.
"""

import logging
import math
from collections.abc import Sequence
from enum import Enum

import numpy as np
from sklearn.linear_model import LinearRegression

from common.config import TauConvention, get_tolerances
from common.exceptions import InvalidArgumentError
from common.schemas import GridPoint, LambdaDrift, ScalingFit
from common.utils.parallel import parallel_map
from lfunctions.symbols import lambda_drift_aggregate
from testfun.bump import bump_spec
from testfun.params import params_new

from .kloosterman_sums import a1_sum
from .main_term import main_term

logger = logging.getLogger(__name__)

MIN_GRID_POINTS = 6


class ScalingQuantity(str, Enum):
    A1 = "a1"
    MAIN_TERM = "main_term"


def predicted_exponents(theta: float) -> dict[str, tuple[float, float]]:
    """(e_X, e_T) of each envelope branch at subconvexity exponent θ.

    Both the smoothed sum and the main term are bounded by
    max(X^{1/4+θ/2}T^{3/2}, X^{θ/2}T²) up to logarithms; the trivial Weil
    envelope grows like X^{1/4}T^{3/2}.
    """
    return {
        "x_dominant": (0.25 + 0.5 * theta, 1.5),
        "t_dominant": (0.5 * theta, 2.0),
        "weil_trivial": (0.25, 1.5),
    }


def optimal_n_scale(X: float, T: float, theta: float) -> float:
    """T^{7/2}X^{1/2} + X^{3/4+θ}T^{3/2}, the N that balances the error terms."""
    return T**3.5 * math.sqrt(X) + X ** (0.75 + theta) * T**1.5


def _check_grid(points: Sequence[GridPoint]) -> None:
    if len(points) < MIN_GRID_POINTS:
        raise InvalidArgumentError(
            f"scaling grid needs at least {MIN_GRID_POINTS} points, got {len(points)}"
        )
    if len({pt.X for pt in points}) < 2 or len({pt.T for pt in points}) < 2:
        raise InvalidArgumentError("scaling grid needs at least two distinct X and two distinct T")
    if any(pt.value <= 0 or not math.isfinite(pt.value) for pt in points):
        raise InvalidArgumentError("scaling grid values must be positive and finite")


def fit_power_law(points: Sequence[GridPoint]) -> tuple[tuple[float, float], float, float]:
    """Least squares log value = e_X log X + e_T log T + const.

    Returns:
        ((e_X, e_T), intercept, RMS residual in log space).

    Raises:
        InvalidArgumentError: If the grid is too small or rank deficient.
    """
    _check_grid(points)
    design = np.log(np.array([[pt.X, pt.T] for pt in points], dtype=np.float64))
    target = np.log(np.array([pt.value for pt in points], dtype=np.float64))
    centered = design - design.mean(axis=0)
    if np.linalg.matrix_rank(centered) < 2:
        raise InvalidArgumentError("log X and log T are collinear on this grid")
    model = LinearRegression().fit(design, target)
    residual = float(np.sqrt(np.mean((model.predict(design) - target) ** 2)))
    e_x, e_t = (float(v) for v in model.coef_)
    return (e_x, e_t), float(model.intercept_), residual


def _evaluate(
    quantity: ScalingQuantity,
    X: float,
    T: float,
    N: float,
    theta: float,
    Q: int,
    convention: TauConvention,
) -> float:
    p = params_new(X, T, theta)
    if quantity is ScalingQuantity.A1:
        return abs(a1_sum(p, bump_spec(N), Q).complex)
    n_max = int(math.ceil(40.0 * math.sqrt(X)))
    return abs(main_term(p, n_max, convention=convention).complex)


def scaling_fit(
    quantity: ScalingQuantity,
    grid: Sequence[tuple[float, float, float]],
    theta: float = 1.0 / 6.0,
    Q: int = 10_000,
    convention: TauConvention = TauConvention.SYMMETRIC,
    threads: int = 1,
    deterministic: bool = False,
) -> ScalingFit:
    """Evaluate ``quantity`` on every (X, T, N) and fit its exponents in X and T.

    Grid points run in parallel; each point runs single-threaded.

    Args:
        quantity: Which sum to measure.
        grid: (X, T, N) triples; N is ignored by the main term.
        theta: Subconvexity exponent for the predicted envelopes.
        Q: Modulus cutoff of the smoothed sum.
        convention: τ normalization for 𝓛.
        threads: Worker count across grid points.
        deterministic: Force in-order evaluation.

    Returns:
        Fit with per-point values and reference exponents.
    """
    quantity = ScalingQuantity(quantity)
    if len(grid) < MIN_GRID_POINTS:
        raise InvalidArgumentError(
            f"scaling grid needs at least {MIN_GRID_POINTS} points, got {len(grid)}"
        )

    def one(point: tuple[float, float, float]) -> GridPoint:
        X, T, N = point
        value = _evaluate(quantity, X, T, N, theta, Q, convention)
        logger.debug("%s at X=%g T=%g N=%g: %.6e", quantity.value, X, T, N, value)
        return GridPoint(X=X, T=T, N=N, value=value)

    points = parallel_map(one, list(grid), threads=threads, deterministic=deterministic)
    exponents, intercept, residual = fit_power_law(points)
    logger.info(
        "%s fit: e_X=%.4f e_T=%.4f residual=%.3e", quantity.value, *exponents, residual
    )
    return ScalingFit(
        quantity=quantity.value,
        grid=points,
        fitted_exponents=exponents,
        intercept=intercept,
        residual=residual,
        predicted_exponents=predicted_exponents(theta),
    )


def envelope_consistent(fit: ScalingFit, theta: float) -> bool:
    """Fitted e_X stays within the calibrated slack of the X-dominant envelope."""
    tolerances = get_tolerances()
    bound = tolerances.constant("a1_exponent_offset") + 0.5 * theta
    return fit.fitted_exponents[0] <= bound + tolerances.constant("exponent_slack")


def lambda_drift_experiment(
    Q_values: Sequence[int],
    z: float = 1e3,
    threads: int = 1,
    deterministic: bool = False,
) -> LambdaDrift:
    """Aggregate drift at each Q and the slope of log|aggregate| against log Q.

    Each aggregate is also reported relative to Q^{3/2} log² Q.
    """
    q_list = sorted({int(q) for q in Q_values})
    if len(q_list) < 2 or q_list[0] < 2:
        raise InvalidArgumentError("lambda drift needs at least two moduli Q >= 2")
    aggregates = parallel_map(
        lambda Q: lambda_drift_aggregate(Q, z), q_list, threads=threads, deterministic=deterministic
    )
    ratios = [abs(a) / (Q**1.5 * math.log(Q) ** 2) for Q, a in zip(q_list, aggregates)]
    usable = [(Q, abs(a)) for Q, a in zip(q_list, aggregates) if a != 0.0]
    slope = 0.0
    if len(usable) >= 2:
        x = np.log(np.array([[Q] for Q, _ in usable], dtype=np.float64))
        y = np.log(np.array([a for _, a in usable], dtype=np.float64))
        slope = float(LinearRegression().fit(x, y).coef_[0])
    logger.info("lambda drift z=%g over Q=%s: slope %.3f", z, q_list, slope)
    return LambdaDrift(
        z=z,
        Q_values=q_list,
        aggregates=[float(a) for a in aggregates],
        envelope_ratios=ratios,
        fitted_slope=slope,
    )
