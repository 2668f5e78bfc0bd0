"""Spectral exponential sums over an ingested list of Laplace eigenvalue parameters t_j.

File format: one positive decimal per line, optionally followed by a positive
integer multiplicity; ``#`` starts a comment; blank lines are ignored.
"""

import logging
import math
from pathlib import Path
from typing import Union

import numpy as np

from common.exceptions import EigenvalueFormatError, InvalidArgumentError
from common.schemas import EigenvalueList
from testfun.kernels import phi_hat_closed, phi_hat_main
from testfun.params import TestParams

logger = logging.getLogger(__name__)

# e^{πt} overflows past this
MAX_CALIBRATION_T = 200.0


def _parse_line(text: str, line_number: int) -> tuple[float, int]:
    fields = text.split()
    if len(fields) > 2:
        raise EigenvalueFormatError(f"expected 'value [multiplicity]', got {text!r}", line_number)
    try:
        value = float(fields[0])
    except ValueError:
        raise EigenvalueFormatError(f"not a number: {fields[0]!r}", line_number) from None
    if not (value > 0 and math.isfinite(value)):
        raise EigenvalueFormatError(
            f"spectral parameter must be positive, got {value}", line_number
        )
    multiplicity = 1
    if len(fields) == 2:
        try:
            multiplicity = int(fields[1])
        except ValueError:
            raise EigenvalueFormatError(
                f"multiplicity must be an integer, got {fields[1]!r}", line_number
            ) from None
        if multiplicity < 1:
            raise EigenvalueFormatError(
                f"multiplicity must be positive, got {multiplicity}", line_number
            )
    return value, multiplicity


def load_eigenvalues(path: Union[str, Path], sort: bool = False) -> EigenvalueList:
    """Parse and validate an eigenvalue file.

    Args:
        path: Text file in the format above.
        sort: Accept unordered input and sort it; repeated values are merged by
            adding their multiplicities.

    Returns:
        Strictly increasing list with multiplicities.

    Raises:
        EigenvalueFormatError: Malformed line, or out-of-order/repeated value
            without ``sort``; carries the offending line number.
    """
    path = Path(path)
    if not path.is_file():
        raise InvalidArgumentError(f"eigenvalue file not found: {path}")
    entries: list[tuple[float, int]] = []
    with path.open(encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            value, multiplicity = _parse_line(text, line_number)
            if not sort and entries and value <= entries[-1][0]:
                raise EigenvalueFormatError(
                    f"{value} does not exceed the previous value {entries[-1][0]}"
                    " (use a multiplicity column or sort)",
                    line_number,
                )
            entries.append((value, multiplicity))
    if sort:
        merged: dict[float, int] = {}
        for value, multiplicity in entries:
            merged[value] = merged.get(value, 0) + multiplicity
        entries = sorted(merged.items())
    logger.info("loaded %d spectral parameters from %s", len(entries), path)
    return EigenvalueList(
        values=[v for v, _ in entries],
        multiplicities=[m for _, m in entries],
        source=str(path),
    )


def spectral_sum(ev: EigenvalueList, X: float, T: float, weighted: bool = False) -> complex:
    """Σ_{0<t_j≤T} X^{it_j}, or Σ t_j X^{it_j} when ``weighted``; multiplicities count."""
    if X < 1:
        raise InvalidArgumentError(f"X must be at least 1, got {X}")
    if T <= 0:
        raise InvalidArgumentError(f"T must be positive, got {T}")
    t = np.asarray(ev.values, dtype=np.float64)
    mult = np.asarray(ev.multiplicities, dtype=np.float64)
    keep = t <= T
    t, mult = t[keep], mult[keep]
    if t.size == 0:
        return 0j
    weights = mult * t if weighted else mult
    # reduce the phase mod 2π before exponentiating
    phase = np.mod(t * math.log(X), 2.0 * math.pi)
    return complex(np.dot(weights, np.exp(1j * phase)))


def smoothed_spectral_sum(ev: EigenvalueList, p: TestParams) -> complex:
    """Σ_j φ̂(t_j) over the whole list."""
    if not ev.values:
        return 0j
    t = np.asarray(ev.values, dtype=np.float64)
    mult = np.asarray(ev.multiplicities, dtype=np.float64)
    return complex(np.dot(mult, np.asarray(phi_hat_closed(t, p))))


def main_approximation_constant(ev: EigenvalueList, p: TestParams) -> float:
    """Smallest C with |φ̂(t_j) − (t_j + i coshβ/2sinhβ)X^{it_j}e^{−t_j/T}| ≤ C e^{−πt_j} on the list.

    Entries beyond t = 200 are skipped.
    """
    t = np.asarray([v for v in ev.values if v <= MAX_CALIBRATION_T], dtype=np.float64)
    if t.size == 0:
        return 0.0
    gap = np.abs(np.asarray(phi_hat_closed(t, p)) - np.asarray(phi_hat_main(t, p)))
    return float(np.max(gap * np.exp(math.pi * t)))
