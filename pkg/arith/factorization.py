"""Integer factorization and multiplicative-function kernels."""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import factorint

from common.exceptions import InvalidArgumentError

MAX_INT64 = 2**63 - 1


@dataclass(frozen=True)
class Factorization:
    """Prime factorization n = Π p^e with primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        primes = [p for p, _ in self.factors]
        if any(b <= a for a, b in zip(primes, primes[1:])):
            raise InvalidArgumentError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise InvalidArgumentError("exponents must be positive")
        if math.prod(p**e for p, e in self.factors) != self.n:
            raise InvalidArgumentError(f"factors do not multiply to {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]


def _check_positive(n: int) -> int:
    n = int(n)
    if n < 1 or n > MAX_INT64:
        raise InvalidArgumentError(f"expected 1 <= n <= 2^63-1, got {n}")
    return n


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Factor a positive 64-bit integer.

    Args:
        n: Integer in [1, 2^63 - 1].

    Returns:
        Factorization with primes in increasing order.
    """
    n = _check_positive(n)
    return Factorization(n, tuple(sorted(factorint(n).items())))


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def tau0(n: int) -> int:
    """Number of divisors."""
    return math.prod(e + 1 for _, e in factorize(n).factors)


def euler_phi(n: int) -> int:
    return math.prod((p - 1) * p ** (e - 1) for p, e in factorize(n).factors)


def divisors(n: int) -> list[int]:
    """All positive divisors in increasing order."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_decomposition(q: int) -> tuple[int, int]:
    """Write q = a²·b with b squarefree; returns (a, b)."""
    a, b = 1, 1
    for p, e in factorize(q).factors:
        a *= p ** (e // 2)
        b *= p ** (e % 2)
    return a, b


@dataclass
class SieveTables:
    """Smallest prime factor, μ, τ₀, φ, ω and τ₀(n²) for every n ≤ limit."""

    limit: int
    spf: np.ndarray
    mobius: np.ndarray
    tau0: np.ndarray
    phi: np.ndarray
    omega: np.ndarray
    tau0_square: np.ndarray

    @classmethod
    def build(cls, limit: int) -> "SieveTables":
        """Sieve all tables up to ``limit`` (index 0 is a placeholder)."""
        limit = max(int(limit), 1)
        spf = np.zeros(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        idx = np.arange(limit + 1, dtype=np.int64)
        unset = spf == 0
        spf[unset] = idx[unset]
        spf[:2] = 1

        rest = idx.copy()
        rest[0] = 1
        mu = np.ones(limit + 1, dtype=np.int64)
        tau = np.ones(limit + 1, dtype=np.int64)
        phi = idx.copy()
        omega = np.zeros(limit + 1, dtype=np.int64)
        tau_sq = np.ones(limit + 1, dtype=np.int64)
        while True:
            active = np.nonzero(rest > 1)[0]
            if active.size == 0:
                break
            r = rest[active]
            p = spf[r]
            e = np.zeros(active.size, dtype=np.int64)
            while True:
                divisible = r % p == 0
                if not divisible.any():
                    break
                r = np.where(divisible, r // p, r)
                e += divisible
            rest[active] = r
            mu[active] = np.where(e > 1, 0, -mu[active])
            tau[active] *= e + 1
            phi[active] = phi[active] // p * (p - 1)
            omega[active] += 1
            tau_sq[active] *= 2 * e + 1
        mu[0] = 0
        tau[0] = 0
        tau_sq[0] = 0
        return cls(
            limit=limit,
            spf=spf,
            mobius=mu,
            tau0=tau,
            phi=phi,
            omega=omega,
            tau0_square=tau_sq,
        )

    def factorize(self, n: int) -> Factorization:
        """Factor n ≤ limit by repeated smallest-prime-factor lookup."""
        n = _check_positive(n)
        if n > self.limit:
            return factorize(n)
        factors: list[tuple[int, int]] = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        return Factorization(math.prod(p**e for p, e in factors), tuple(factors))


@lru_cache(maxsize=8)
def sieve_tables(limit: int) -> SieveTables:
    return SieveTables.build(limit)


def dirichlet_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(n) = Σ_{d | n} f(d) g(n/d) for n ≤ limit, index 0 unused.

    Args:
        f: Values f(0..limit); f(0) is ignored.
        g: Values g(0..limit), same length as ``f``.

    Returns:
        Array of the convolution, same length and a common dtype.
    """
    if f.shape != g.shape:
        raise InvalidArgumentError("convolution operands must have equal length")
    limit = f.size - 1
    out = np.zeros(f.size, dtype=np.result_type(f, g))
    for d in range(1, limit + 1):
        if f[d] == 0:
            continue
        count = limit // d
        out[d::d] += f[d] * g[1 : count + 1]
    return out
