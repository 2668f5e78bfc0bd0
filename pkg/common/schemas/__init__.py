from .reports import (
    ComplexValue,
    TruncatedValue,
    LMethod,
    LValue,
    IdentityReport,
    GridPoint,
    ScalingFit,
    EigenvalueList,
    InequalitySummary,
    LambdaDrift,
)

__all__ = [
    "ComplexValue",
    "TruncatedValue",
    "LMethod",
    "LValue",
    "IdentityReport",
    "GridPoint",
    "ScalingFit",
    "EigenvalueList",
    "InequalitySummary",
    "LambdaDrift",
]
