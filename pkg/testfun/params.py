"""Parameters of the test-function family and of the bump h."""

import cmath
import math
from dataclasses import asdict, dataclass
from typing import Any

from common.exceptions import InvalidArgumentError


@dataclass(frozen=True)
class TestParams:
    """X, T, θ and the derived quantities β, c = a − ib, γ = arg c + π/2."""

    __test__ = False

    X: float
    T: float
    theta: float
    beta: complex
    c: complex
    a: float
    b: float
    gamma: float

    @property
    def sinh_beta(self) -> complex:
        return cmath.sinh(self.beta)

    @property
    def cosh_beta(self) -> complex:
        return cmath.cosh(self.beta)

    @property
    def sinh2(self) -> complex:
        """sinh²β, the amplitude of φ."""
        return self.sinh_beta**2

    @property
    def abs_c(self) -> float:
        return abs(self.c)

    def as_dict(self) -> dict[str, Any]:
        """Inputs only, for report parameters."""
        return {"X": self.X, "T": self.T, "theta": self.theta}

    def full_dict(self) -> dict[str, Any]:
        out = asdict(self)
        for key in ("beta", "c"):
            out[key] = [out[key].real, out[key].imag]
        return out


def params_new(X: float, T: float, theta: float = 1.0 / 6.0) -> TestParams:
    """Derive β = (log X)/2 + i/(2T) and c = −i cosh β = a − ib.

    Args:
        X: Length parameter, X ≥ 2.
        T: Spectral cutoff, T ≥ 1.
        theta: Subconvexity exponent in [0, 1/4].

    Returns:
        Validated parameters.

    Raises:
        InvalidArgumentError: For X < 2, T < 1 or θ outside [0, 1/4].
    """
    if not (X >= 2.0 and math.isfinite(X)):
        raise InvalidArgumentError(f"X must be at least 2, got {X}")
    if not (T >= 1.0 and math.isfinite(T)):
        raise InvalidArgumentError(f"T must be at least 1, got {T}")
    if not 0.0 <= theta <= 0.25:
        raise InvalidArgumentError(f"theta must lie in [0, 1/4], got {theta}")
    u = 0.5 * math.log(X)
    v = 1.0 / (2.0 * T)
    a = math.sinh(u) * math.sin(v)
    b = math.cosh(u) * math.cos(v)
    c = complex(a, -b)
    return TestParams(
        X=float(X),
        T=float(T),
        theta=float(theta),
        beta=complex(u, v),
        c=c,
        a=a,
        b=b,
        gamma=cmath.phase(c) + math.pi / 2.0,
    )


@dataclass(frozen=True)
class BumpSpec:
    """Bump h supported on [N, 2N] with ∫h = N."""

    N: float
    C: float

    def __post_init__(self) -> None:
        if not self.N > 1.0:
            raise InvalidArgumentError(f"N must exceed 1, got {self.N}")
        if not self.C > 0.0:
            raise InvalidArgumentError("normalization constant must be positive")

    @property
    def support(self) -> tuple[float, float]:
        return self.N, 2.0 * self.N
