from .logging import configure_logging
from .parallel import chunk_ranges, compensated_sum, parallel_map
from .quadrature import (
    PanelIntegral,
    gauss_legendre,
    graded_edges,
    integrate_edges,
    integrate_panels,
    oscillatory_integral,
)

__all__ = [
    "configure_logging",
    "chunk_ranges",
    "compensated_sum",
    "parallel_map",
    "PanelIntegral",
    "gauss_legendre",
    "graded_edges",
    "integrate_edges",
    "integrate_panels",
    "oscillatory_integral",
]
