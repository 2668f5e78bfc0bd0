"""Square-root counts ρ_q(n), their Möbius convolution λ_q(n), and partial sums over n² − 4."""

import logging
import math
from functools import lru_cache
from typing import Optional

import numpy as np
from sympy import legendre_symbol

from arith.factorization import (
    Factorization,
    dirichlet_convolve,
    divisors,
    factorize,
    mobius,
    sieve_tables,
    squarefree_decomposition,
)
from common.exceptions import InvalidArgumentError
from common.utils.parallel import compensated_sum

logger = logging.getLogger(__name__)


def _check_q(q: int) -> int:
    q = int(q)
    if q < 1:
        raise InvalidArgumentError(f"q must be positive, got {q}")
    return q


def rho_direct(q: int, n: int) -> int:
    """ρ_q(n) = #{x mod 2q : x² ≡ n mod 4q} by enumeration."""
    q = _check_q(q)
    x = np.arange(2 * q, dtype=np.int64)
    return int(np.count_nonzero((x * x - n) % (4 * q) == 0))


@lru_cache(maxsize=256)
def _square_counts(modulus: int, roots: int) -> np.ndarray:
    """#{x mod roots : x² ≡ r mod modulus} for every residue r mod modulus."""
    x = np.arange(roots, dtype=np.int64)
    counts = np.bincount(x * x % modulus, minlength=modulus)
    counts.setflags(write=False)
    return counts


def _two_adic_count(k: int, n: int) -> int:
    """#{x mod 2^{k+1} : x² ≡ n mod 2^{k+2}}, the 2-part of ρ for v_2(q) = k."""
    modulus = 2 ** (k + 2)
    return int(_square_counts(modulus, modulus // 2)[n % modulus])


def _odd_local_count(p: int, e: int, n: int) -> int:
    """#{y mod p^e : y² ≡ n mod p^e} for an odd prime p."""
    r = n % p**e
    if r == 0:
        return p ** (e // 2)
    v = 0
    while r % p == 0:
        r //= p
        v += 1
    if v % 2:
        return 0
    return (1 + int(legendre_symbol(r % p, p))) * p ** (v // 2)


def rho_fast(q: int, n: int, factorization: Optional[Factorization] = None) -> int:
    """ρ_q(n) as a product of local square-root counts over the prime powers of q.

    Odd prime powers use the closed count; the 2-part is read from an
    enumerated table of x² mod 2^{k+2}.
    """
    q = _check_q(q)
    fac = factorization if factorization is not None else factorize(q)
    count = 1
    k = 0
    for p, e in fac.factors:
        if p == 2:
            k = e
            continue
        count *= _odd_local_count(p, e, n)
        if count == 0:
            return 0
    return count * _two_adic_count(k, n)


def rho_many(q: int, n_values: np.ndarray) -> np.ndarray:
    """ρ_q(n) for an integer array of n, from enumerated local tables."""
    q = _check_q(q)
    n_values = np.asarray(n_values, dtype=np.int64)
    counts = np.ones(n_values.shape, dtype=np.int64)
    k = 0
    for p, e in factorize(q).factors:
        if p == 2:
            k = e
            continue
        pe = p**e
        counts *= _square_counts(pe, pe)[n_values % pe]
    modulus = 2 ** (k + 2)
    counts *= _square_counts(modulus, modulus // 2)[n_values % modulus]
    return counts


def rho_table(m: int, Q: int) -> np.ndarray:
    """ρ_q(m) for q = 0, …, Q (entry 0 is 0), assembled multiplicatively over q."""
    Q = _check_q(Q)
    tables = sieve_tables(Q)
    idx = np.arange(Q + 1, dtype=np.int64)
    rho = np.ones(Q + 1, dtype=np.int64)
    rho[0] = 0
    rho[1::2] *= _two_adic_count(0, m)
    primes = idx[2:][tables.spf[2:] == idx[2:]]
    for p in primes.tolist():
        pe, e = p, 1
        while pe <= Q:
            local = _two_adic_count(e, m) if p == 2 else _odd_local_count(p, e, m)
            if local != 1:
                multiples = idx[pe::pe]
                rho[multiples[(multiples // pe) % p != 0]] *= local
            pe *= p
            e += 1
    return rho


def lambda_q(q: int, n: int) -> int:
    """λ_q(n) = Σ_{q₁²q₂q₃ = q} μ(q₂) ρ_{q₃}(n)."""
    q = _check_q(q)
    total = 0
    for q1 in divisors(q):
        if q % (q1 * q1):
            continue
        rest = q // (q1 * q1)
        for q2 in divisors(rest):
            mu = mobius(q2)
            if mu:
                total += mu * rho_fast(rest // q2, n)
    return total


def lambda_many(q: int, n_values: np.ndarray) -> np.ndarray:
    """λ_q(n) for an integer array of n."""
    q = _check_q(q)
    n_values = np.asarray(n_values, dtype=np.int64)
    total = np.zeros(n_values.shape, dtype=np.int64)
    for q1 in divisors(q):
        if q % (q1 * q1):
            continue
        rest = q // (q1 * q1)
        for q2 in divisors(rest):
            mu = mobius(q2)
            if mu:
                total += mu * rho_many(rest // q2, n_values)
    return total


def lambda_table(m: int, Q: int) -> np.ndarray:
    """λ_q(m) for q = 0, …, Q as (1_□ * μ * ρ)(q)."""
    Q = _check_q(Q)
    rho = rho_table(m, Q)
    inner = dirichlet_convolve(sieve_tables(Q).mobius[: Q + 1], rho)
    lam = np.zeros_like(inner)
    d = 1
    while d * d <= Q:
        square = d * d
        lam[square::square] += inner[1 : Q // square + 1]
        d += 1
    return lam


def lambda_partial_sum(q: int, z: float) -> tuple[int, float]:
    """Σ_{2<n≤z} λ_q(n² − 4) and its drift from the mean z·μ(b)/b, q = a²b.

    λ_q(n² − 4) depends on n mod 2q only, so one period is evaluated and
    weighted by the number of n ≤ z in each residue class.

    Args:
        q: Positive modulus.
        z: Upper end, z ≥ 2.

    Returns:
        Pair (sum, drift).
    """
    q = _check_q(q)
    if z < 2:
        raise InvalidArgumentError(f"z must be at least 2, got {z}")
    top = int(math.floor(z))
    period = 2 * q
    total = 0
    if top >= 3:
        r = np.arange(period, dtype=np.int64)
        values = lambda_many(q, r * r - 4)
        counts = (top - r) // period - (2 - r) // period
        total = int(np.dot(values, counts))
    _, b = squarefree_decomposition(q)
    return total, total - z * mobius(b) / b


def lambda_drift_aggregate(Q: int, z: float) -> float:
    """Σ_{q≤Q} drift(q, z), to be compared with Q^{3/2} log² Q."""
    Q = _check_q(Q)
    drifts = [lambda_partial_sum(q, z)[1] for q in range(1, Q + 1)]
    return float(compensated_sum(drifts))


def rho_majorant(m: int) -> float:
    """B(m) with ρ_q(m) ≤ B(m)·2^{ω(q)} for every q (m ≠ 0).

    Primes p ∤ 2m contribute at most 2 each; for p | 2m the local count is
    maximized over the exponents before it stabilizes.
    """
    if m == 0:
        raise InvalidArgumentError("ρ_q(0) grows like √q; no constant majorant")
    bound = 1.0
    for p, _ in factorize(abs(2 * m)).factors:
        v = 0
        r = abs(m)
        while r % p == 0:
            r //= p
            v += 1
        if p == 2:
            local = max(_two_adic_count(e, m) for e in range(1, v + 4))
        else:
            local = max(_odd_local_count(p, e, m) for e in range(1, v + 3))
        bound *= max(1.0, local / 2.0)
    return bound
