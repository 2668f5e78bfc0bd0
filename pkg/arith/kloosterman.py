"""Classical Kloosterman sums S(m,n;c), batch rows and the Weil bound."""

import logging
import math
from collections.abc import Callable
from functools import lru_cache
from typing import Optional

import numpy as np
from sympy import legendre_symbol
from sympy.ntheory import sqrt_mod

from common.exceptions import InvalidArgumentError, NumericsError
from common.utils.parallel import chunk_ranges, compensated_sum, parallel_map

from .factorization import (
    Factorization,
    divisors,
    euler_phi,
    factorize,
    mobius,
    sieve_tables,
    tau0,
)

logger = logging.getLogger(__name__)

# Moduli above this use error-free summation of the cosine terms.
COMPENSATED_THRESHOLD = 100_000
# int64 products a·m mod c stay exact below this modulus.
MAX_VECTOR_MODULUS = 3_000_000_000
IMAG_RESIDUAL_FACTOR = 1e-9


def _check_modulus(c: int) -> int:
    c = int(c)
    if c < 1:
        raise InvalidArgumentError(f"modulus must be positive, got {c}")
    if c > MAX_VECTOR_MODULUS:
        raise InvalidArgumentError(f"modulus {c} exceeds the vectorized range")
    return c


def _modpow(base: np.ndarray, exponent: int, modulus: int) -> np.ndarray:
    result = np.ones_like(base)
    base = base % modulus
    while exponent:
        if exponent & 1:
            result = result * base % modulus
        base = base * base % modulus
        exponent >>= 1
    return result


def modular_inverses(c: int, phi: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Reduced residues a mod c and their inverses a* (a·a* ≡ 1 mod c).

    Args:
        c: Positive modulus.
        phi: φ(c) if already known.

    Returns:
        Pair of int64 arrays (residues, inverses); for c = 1 both are [0].
    """
    c = _check_modulus(c)
    if c == 1:
        zero = np.zeros(1, dtype=np.int64)
        return zero, zero
    a = np.arange(1, c, dtype=np.int64)
    a = a[np.gcd(a, c) == 1]
    if phi is None:
        phi = euler_phi(c)
    return a, _modpow(a, phi - 1, c)


def _sum_cos(phase: np.ndarray, c: int) -> float:
    theta = (2.0 * math.pi / c) * phase
    re = np.cos(theta)
    im = np.sin(theta)
    if c > COMPENSATED_THRESHOLD:
        real, imag = compensated_sum(re), compensated_sum(im)
    else:
        real, imag = float(re.sum()), float(im.sum())
    if abs(imag) > IMAG_RESIDUAL_FACTOR * c:
        raise NumericsError(f"imaginary residual {imag:.3e} exceeds bound for c={c}")
    return float(real)


def kloosterman_direct(m: int, n: int, c: int) -> float:
    """S(m,n;c) = Σ_{a mod c, (a,c)=1} e((am + a*n)/c) by direct summation.

    Args:
        m: First frequency.
        n: Second frequency.
        c: Positive modulus.

    Returns:
        The (real) Kloosterman sum.
    """
    c = _check_modulus(c)
    a, inv = modular_inverses(c)
    phase = (a * (m % c) % c + inv * (n % c) % c) % c
    return _sum_cos(phase, c)


def ramanujan_sum(n: int, q: int) -> int:
    """c_q(n) = Σ_{d | (n,q)} μ(q/d)·d, the value of S(0,n;q)."""
    return sum(d * mobius(q // d) for d in divisors(math.gcd(n, q)))


def _prime_power_direct(m: int, n: int, q: int) -> float:
    return kloosterman_direct(m, n, q)


def _prime_power_ramanujan(m: int, n: int, q: int) -> Optional[float]:
    if m % q == 0:
        return float(ramanujan_sum(n, q))
    if n % q == 0:
        return float(ramanujan_sum(m, q))
    return None


def salie_sum(m: int, n: int, q: int) -> Optional[float]:
    """S(m,n;p^k) for odd p and k ≥ 2 from the square roots of mn mod p^k.

    Zero when exactly one of m, n is divisible by p or when mn is not a square
    mod p. Otherwise, with y² ≡ mn (mod p^k),

        S = 2√q·cos(4πy/q)              k even,
        S = 2√q·(y/p)·cos(4πy/q)        k odd, p ≡ 1 (mod 4),
        S = −2√q·(y/p)·sin(4πy/q)       k odd, p ≡ 3 (mod 4).

    Returns None when q is not such a prime power or p divides both m and n.
    """
    factors = factorize(q).factors
    if len(factors) != 1:
        return None
    p, k = factors[0]
    if p == 2 or k < 2:
        return None
    m_divisible, n_divisible = m % p == 0, n % p == 0
    if m_divisible and n_divisible:
        return None
    if m_divisible or n_divisible:
        return 0.0
    root = sqrt_mod(m * n % q, q)
    if root is None:
        return 0.0
    y = int(root)
    amplitude = 2.0 * math.sqrt(q)
    angle = 4.0 * math.pi * y / q
    if k % 2 == 0:
        return amplitude * math.cos(angle)
    sign = int(legendre_symbol(y % p, p))
    if p % 4 == 1:
        return sign * amplitude * math.cos(angle)
    return -sign * amplitude * math.sin(angle)


# Closed-form rules for a prime-power modulus; each returns None when it does not apply.
_FAST_RULES: dict[str, Callable[[int, int, int], Optional[float]]] = {
    "ramanujan": _prime_power_ramanujan,
    "salie": salie_sum,
}


@lru_cache(maxsize=1)
def enabled_fast_rules() -> tuple[str, ...]:
    """Validate every closed-form rule against direct summation; keep only those that pass."""
    enabled = []
    for name, rule in _FAST_RULES.items():
        ok = True
        for q in (2, 3, 4, 5, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125):
            for m in range(0, 13):
                for n in range(0, 13):
                    value = rule(m, n, q)
                    if value is not None and abs(value - kloosterman_direct(m, n, q)) > 1e-8 * q:
                        ok = False
        if ok:
            enabled.append(name)
        else:
            logger.warning("fast Kloosterman rule %r disagrees with direct sums; disabled", name)
    return tuple(enabled)


def _prime_power_sum(m: int, n: int, q: int) -> float:
    for name in enabled_fast_rules():
        value = _FAST_RULES[name](m, n, q)
        if value is not None:
            return value
    return _prime_power_direct(m, n, q)


def kloosterman_fast(
    m: int, n: int, c: int, factorization: Optional[Factorization] = None
) -> float:
    """S(m,n;c) through twisted multiplicativity over the prime powers of c.

    For c = Π q_i with u_i ≡ (c/q_i)^{-1} mod q_i,
    S(m,n;c) = Π S(u_i·m, u_i·n; q_i).

    Args:
        m: First frequency.
        n: Second frequency.
        c: Positive modulus.
        factorization: Factorization of c if already known.

    Returns:
        The Kloosterman sum, equal to ``kloosterman_direct`` up to rounding.
    """
    c = _check_modulus(c)
    fac = factorization if factorization is not None else factorize(c)
    powers = fac.prime_powers()
    if len(powers) <= 1:
        return _prime_power_sum(m, n, c) if c > 1 else 1.0
    value = 1.0
    for q in powers:
        u = pow((c // q) % q, -1, q)
        value *= _prime_power_sum(u * m % q, u * n % q, q)
        if value == 0.0:
            break
    return value


def kloosterman_row(
    n: int, Q: int, threads: int = 1, deterministic: bool = False
) -> list[tuple[int, float]]:
    """(q, S(n,n;q)) for q = 1, …, Q in increasing q.

    Args:
        n: Frequency.
        Q: Largest modulus.
        threads: Worker count.
        deterministic: Force single-sequence evaluation.

    Returns:
        List of (q, S(n,n;q)).
    """
    Q = int(Q)
    if Q < 1:
        raise InvalidArgumentError("Q must be positive")
    tables = sieve_tables(Q)

    def work(bounds: tuple[int, int]) -> list[tuple[int, float]]:
        lo, hi = bounds
        return [(q, kloosterman_fast(n, n, q, tables.factorize(q))) for q in range(lo, hi)]

    chunks = chunk_ranges(1, Q + 1, max(1, threads * 4))
    rows: list[tuple[int, float]] = []
    for part in parallel_map(work, chunks, threads=threads, deterministic=deterministic):
        rows.extend(part)
    return rows


def diagonal_spectrum(q: int, phi: Optional[int] = None) -> np.ndarray:
    """S(k,k;q) for every k mod q at once.

    The histogram of a + a* mod q is Fourier transformed; its real part at
    frequency k is Σ_a cos(2πk(a + a*)/q) = S(k,k;q).
    """
    q = _check_modulus(q)
    if q == 1:
        return np.ones(1)
    a, inv = modular_inverses(q, phi)
    counts = np.bincount((a + inv) % q, minlength=q).astype(np.float64)
    return np.fft.fft(counts).real


def weil_bound(m: int, n: int, c: int) -> float:
    """τ₀(c)·√gcd(m,n,c)·√c."""
    c = _check_modulus(c)
    g = math.gcd(math.gcd(m, n), c)
    return tau0(c) * math.sqrt(g) * math.sqrt(c)
