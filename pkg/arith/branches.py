"""Principal-branch complex logarithm and power, arg in (−π, π]."""

from typing import Union

import numpy as np

from common.exceptions import InvalidArgumentError

ComplexLike = Union[complex, float, np.ndarray]


def principal_log(z: ComplexLike) -> ComplexLike:
    """Log z with arg z ∈ (−π, π]; negative reals (either zero sign) map to +iπ."""
    arr = np.asarray(z, dtype=np.complex128)
    if np.any(arr == 0):
        raise InvalidArgumentError("log of zero")
    out = np.log(arr)
    on_cut = (arr.imag == 0) & (arr.real < 0)
    out = np.where(on_cut, np.log(np.abs(arr)) + 1j * np.pi, out)
    if out.ndim == 0:
        return complex(out)
    return out


def principal_pow(z: ComplexLike, w: ComplexLike) -> ComplexLike:
    """exp(w·Log z) on the principal branch."""
    out = np.exp(np.asarray(w, dtype=np.complex128) * principal_log(z))
    if np.ndim(out) == 0:
        return complex(out)
    return out
