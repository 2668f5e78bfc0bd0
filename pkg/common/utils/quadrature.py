"""Composite Gauss–Legendre quadrature on panels with early exit."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=32)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [−1, 1] (read-only arrays)."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def integrate_edges(func: Integrand, edges: np.ndarray, order: int = 16) -> complex:
    """∫ over [edges[0], edges[-1]] as a sum of Gauss–Legendre panels, one call to ``func``."""
    edges = np.asarray(edges, dtype=np.float64)
    nodes, weights = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = mid[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(func(x.ravel())).reshape(x.shape)
    return complex(np.sum(values * (half[:, None] * weights[None, :])))


def graded_edges(start: float, stop: float, levels: int = 30, ratio: float = 0.5) -> np.ndarray:
    """Panel edges refined geometrically toward ``start`` for endpoint singularities."""
    width = stop - start
    inner = start + width * ratio ** np.arange(levels, 0, -1, dtype=np.float64)
    return np.concatenate(([start], inner, [stop]))


@dataclass
class PanelIntegral:
    """Result of a marching panel integration."""

    value: complex
    panels: int
    end: float
    last_panel: float
    converged: bool


def integrate_panels(
    func: Integrand,
    start: float,
    width: float,
    stop: Optional[float] = None,
    order: int = 8,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    patience: int = 3,
    max_panels: int = 100_000,
    batch: int = 4,
    initial: complex = 0.0,
) -> PanelIntegral:
    """March over panels [start + k·width, start + (k+1)·width] until contributions die out.

    Integration stops once ``patience`` consecutive panels each contribute less
    than max(abs_tol, rel_tol·|accumulated|), or at ``stop``. ``func`` is
    called once per batch of panels with all their nodes.

    Args:
        func: Vectorized integrand.
        start: Lower limit.
        width: Panel length.
        stop: Optional upper limit (the last panel is clipped to it).
        order: Gauss–Legendre nodes per panel.
        rel_tol: Relative early-exit threshold.
        abs_tol: Absolute early-exit threshold.
        patience: Consecutive small panels required to stop.
        max_panels: Hard cap; reaching it marks the result unconverged.
        batch: Panels evaluated per call.
        initial: Value already accumulated before ``start`` (counts toward rel_tol).

    Returns:
        The accumulated value with the panel bookkeeping.
    """
    nodes, weights = gauss_legendre(order)
    total = complex(initial)
    quiet = 0
    panels = 0
    lo = float(start)
    last = 0.0
    while panels < max_panels:
        edges = lo + width * np.arange(batch + 1, dtype=np.float64)
        if stop is not None:
            edges = np.unique(np.minimum(edges, stop))
            if edges.size < 2:
                return PanelIntegral(complex(total), panels, lo, last, True)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        x = mid[:, None] + half[:, None] * nodes[None, :]
        values = np.asarray(func(x.ravel())).reshape(x.shape)
        contributions = (values * weights[None, :]).sum(axis=1) * half
        for piece in contributions:
            total += piece
            panels += 1
            last = abs(piece)
            quiet = quiet + 1 if last < max(abs_tol, rel_tol * abs(total)) else 0
            if quiet >= patience:
                end = start + panels * width
                if stop is not None:
                    end = min(stop, end)
                return PanelIntegral(complex(total), panels, end, last, True)
        lo = float(edges[-1])
        if stop is not None and lo >= stop:
            return PanelIntegral(complex(total), panels, lo, last, True)
    logger.warning("panel integration stopped at the %d-panel cap", max_panels)
    return PanelIntegral(complex(total), panels, lo, last, False)


def oscillatory_integral(
    func: Integrand,
    frequency: float,
    rel_tol: float = 1e-12,
    abs_tol: float = 0.0,
    order: int = 16,
    levels: int = 40,
    max_panels: int = 100_000,
) -> PanelIntegral:
    """∫_0^∞ of a damped oscillatory integrand.

    The first half-period [0, π/frequency] is split into panels graded toward 0
    (integrable endpoint singularities such as x^{−s}); past it the integration
    marches in half-period panels until the damping takes over.
    """
    width = math.pi / frequency
    head = integrate_edges(func, graded_edges(0.0, width, levels=levels), order=order)
    tail = integrate_panels(
        func,
        width,
        width,
        order=order,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        max_panels=max_panels,
        batch=8,
        initial=head,
    )
    tail.panels += levels + 1
    return tail
