"""Serializable result records."""

import math
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class ComplexValue(BaseModel):
    """A finite complex number as a JSON-friendly pair."""

    re: float
    im: float = 0.0

    @field_validator("re", "im")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("complex components must be finite")
        return value

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    @property
    def complex(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(self.complex)


class TruncatedValue(BaseModel):
    """Value of an infinite sum or integral with its truncation bookkeeping."""

    value: ComplexValue
    tail_bound: float = Field(..., ge=0.0)
    terms_used: int = Field(..., ge=1)
    converged: bool = True

    @field_validator("tail_bound")
    @classmethod
    def _finite_tail(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("tail_bound must be finite")
        return value

    @classmethod
    def of(
        cls, value: complex, tail_bound: float, terms_used: int, converged: bool = True
    ) -> "TruncatedValue":
        return cls(
            value=ComplexValue.of(value),
            tail_bound=float(tail_bound),
            terms_used=max(1, int(terms_used)),
            converged=converged,
        )

    @property
    def complex(self) -> complex:
        return self.value.complex


class LMethod(str, Enum):
    DECOMPOSITION = "decomposition"
    DIRICHLET_SERIES = "dirichlet-series"
    AFE = "afe"


class LValue(BaseModel):
    """A value of the generalized L-function 𝓛_m(s) with provenance."""

    s: ComplexValue
    m: int
    value: ComplexValue
    method: LMethod
    tail_bound: float = Field(0.0, ge=0.0)

    @property
    def complex(self) -> complex:
        return self.value.complex


class IdentityReport(BaseModel):
    """Residual record of one identity check."""

    name: str
    lhs: ComplexValue
    rhs: ComplexValue
    abs_err: float = Field(..., ge=0.0)
    rel_err: float = Field(..., ge=0.0)
    lhs_tail: float = Field(0.0, ge=0.0)
    rhs_tail: float = Field(0.0, ge=0.0)
    tol_abs: float = Field(0.0, ge=0.0)
    tol_rel: float = Field(0.0, ge=0.0)
    params: dict[str, Any] = Field(default_factory=dict)
    details: dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(..., serialization_alias="pass")

    @classmethod
    def build(
        cls,
        name: str,
        lhs: complex,
        rhs: complex,
        lhs_tail: float = 0.0,
        rhs_tail: float = 0.0,
        tol_abs: float = 0.0,
        tol_rel: float = 0.0,
        params: Optional[dict[str, Any]] = None,
        details: Optional[dict[str, Any]] = None,
        converged: bool = True,
    ) -> "IdentityReport":
        """Assemble a report; the relative slack is taken against |lhs|.

        Args:
            name: Check identifier.
            lhs: Left-hand side value.
            rhs: Right-hand side value.
            lhs_tail: Truncation bound of the left side.
            rhs_tail: Truncation bound of the right side.
            tol_abs: Absolute slack.
            tol_rel: Relative slack against |lhs|.
            params: Serialized inputs.
            details: Extra diagnostics.
            converged: False when a truncation or cross-check did not settle; the
                report then fails regardless of the error.

        Returns:
            The report with ``passed`` decided as
            abs_err ≤ tol_abs + tol_rel·|lhs| + lhs_tail + rhs_tail
            and ``converged``.
        """
        lhs, rhs = complex(lhs), complex(rhs)
        abs_err = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_err = abs_err / scale if scale > 0 else abs_err
        allowed = tol_abs + tol_rel * abs(lhs) + lhs_tail + rhs_tail
        return cls(
            name=name,
            lhs=ComplexValue.of(lhs),
            rhs=ComplexValue.of(rhs),
            abs_err=abs_err,
            rel_err=rel_err,
            lhs_tail=float(lhs_tail),
            rhs_tail=float(rhs_tail),
            tol_abs=float(tol_abs),
            tol_rel=float(tol_rel),
            params=params or {},
            details=details or {},
            passed=bool(converged and abs_err <= allowed),
        )

    def summary_row(self) -> dict[str, Any]:
        """Flat row for the CSV summary."""
        return {
            "name": self.name,
            "params": ";".join(f"{k}={v}" for k, v in sorted(self.params.items())),
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "pass": self.passed,
        }


class GridPoint(BaseModel):
    """One evaluated point of a scaling grid."""

    X: float = Field(..., gt=0)
    T: float = Field(..., gt=0)
    N: float = Field(..., gt=0)
    value: float = Field(..., ge=0)


class ScalingFit(BaseModel):
    """Least-squares fit of log|value| against log X and log T."""

    quantity: str
    grid: list[GridPoint] = Field(..., min_length=1)
    fitted_exponents: tuple[float, float]
    intercept: float
    residual: float = Field(..., ge=0)
    predicted_exponents: dict[str, tuple[float, float]] = Field(default_factory=dict)
    label: str = "consistency, not verification"


class EigenvalueList(BaseModel):
    """Spectral parameters t_j, ascending, with optional multiplicities."""

    values: list[float] = Field(default_factory=list)
    multiplicities: list[int] = Field(default_factory=list)
    source: str = ""

    @model_validator(mode="after")
    def _check_order(self) -> "EigenvalueList":
        if not self.multiplicities:
            self.multiplicities = [1] * len(self.values)
        if len(self.multiplicities) != len(self.values):
            raise ValueError("one multiplicity per eigenvalue is required")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if any(not (t > 0 and math.isfinite(t)) for t in self.values):
            raise ValueError("spectral parameters must be positive and finite")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("spectral parameters must be strictly increasing")
        return self

    def __len__(self) -> int:
        return len(self.values)


class InequalitySummary(BaseModel):
    """Outcome of a sampled inequality over a parameter grid."""

    name: str
    samples: int = Field(..., ge=0)
    violations: int = Field(..., ge=0)
    worst_margin: float
    slack: float = Field(..., ge=0)

    @property
    def passed(self) -> bool:
        return self.violations == 0


class LambdaDrift(BaseModel):
    """Aggregate λ-drift Σ_{q≤Q} drift(q, z) for a range of Q, with its log-log slope."""

    z: float = Field(..., ge=2)
    Q_values: list[int] = Field(..., min_length=2)
    aggregates: list[float]
    envelope_ratios: list[float] = Field(default_factory=list)
    fitted_slope: float
    label: str = "consistency, not verification"
