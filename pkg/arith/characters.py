"""Fundamental discriminants and real primitive characters χ_D."""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import jacobi_symbol

from common.exceptions import InvalidArgumentError

from .factorization import factorize, squarefree_decomposition

logger = logging.getLogger(__name__)


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(n)).factors)


def is_fundamental_discriminant(D: int) -> bool:
    """True for discriminants of quadratic fields (D = 1 excluded)."""
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _is_squarefree(D)
    if D % 4 == 0:
        k = D // 4
        return k % 4 in (2, 3) and _is_squarefree(k)
    return False


def _check_character(D: int) -> None:
    if D != 1 and not is_fundamental_discriminant(D):
        raise InvalidArgumentError(f"{D} is not a fundamental discriminant")


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for D fundamental or 1.

    Args:
        D: Fundamental discriminant, or 1 for the trivial character.
        n: Any integer.

    Returns:
        χ_D(n) in {-1, 0, 1}.
    """
    _check_character(D)
    if D == 1:
        return 1
    if n == 0:
        return 0
    sign = 1
    if n < 0:
        n = -n
        if D < 0:
            sign = -1
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5) and v % 2 == 1:
            sign = -sign
    if n == 1:
        return sign
    return sign * int(jacobi_symbol(D % n, n))


@dataclass(frozen=True)
class DiscriminantSplit:
    """m = D·l² with D a fundamental discriminant (or 1 when m is a square)."""

    m: int
    D: int
    l: int

    def __post_init__(self) -> None:
        if self.l < 1 or self.D * self.l * self.l != self.m:
            raise InvalidArgumentError(f"{self.m} != {self.D}*{self.l}^2")
        _check_character(self.D)


def split_discriminant(m: int) -> DiscriminantSplit:
    """Split a discriminant m ≡ 0, 1 mod 4 into D·l².

    Raises:
        InvalidArgumentError: If m = 0 or m ≡ 2, 3 mod 4.
    """
    if m == 0 or m % 4 in (2, 3):
        raise InvalidArgumentError(f"{m} is not a nonzero discriminant")
    f0, core = squarefree_decomposition(abs(m))
    d0 = core if m > 0 else -core
    if d0 % 4 == 1:
        return DiscriminantSplit(m=m, D=d0, l=f0)
    return DiscriminantSplit(m=m, D=4 * d0, l=f0 // 2)


def _legendre_table(p: int) -> np.ndarray:
    table = -np.ones(p, dtype=np.int8)
    table[(np.arange(p, dtype=np.int64) ** 2) % p] = 1
    table[0] = 0
    return table


@lru_cache(maxsize=4096)
def character_table(D: int) -> np.ndarray:
    """χ_D(a) for a = 0, …, |D|−1 as an int8 array (read-only).

    Built multiplicatively: χ_D = Π_{p | D odd} (·/p) times the 2-adic
    character attached to D / Π p*.
    """
    _check_character(D)
    if D == 1:
        table = np.ones(1, dtype=np.int8)
        table.setflags(write=False)
        return table
    q = abs(D)
    a = np.arange(q, dtype=np.int64)
    chi = np.ones(q, dtype=np.int8)
    odd_star = 1
    for p, _ in factorize(q).factors:
        if p == 2:
            continue
        chi *= _legendre_table(p)[a % p]
        odd_star *= p if p % 4 == 1 else -p
    two_part = D // odd_star
    if two_part != 1:
        odd = a % 2 == 1
        r8 = a % 8
        if two_part == -4:
            local = np.where(a % 4 == 1, 1, -1)
        elif two_part == 8:
            local = np.where((r8 == 1) | (r8 == 7), 1, -1)
        elif two_part == -8:
            local = np.where((r8 == 1) | (r8 == 3), 1, -1)
        else:
            raise InvalidArgumentError(f"unexpected 2-part {two_part} for D={D}")
        chi *= np.where(odd, local, 0).astype(np.int8)
    chi.setflags(write=False)
    logger.debug("built character table for D=%d", D)
    return chi
