"""Kronecker characters, L(2, χ_D) and the Dedekind zeta value ζ_K(2) of imaginary quadratic fields."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ..errors import DomainError, ZetaMismatchError
from ..logging_config import get_logger
from .divisors import primes_up_to
from .rings import Discriminant

logger = get_logger(__name__)

ZETA_2 = math.pi**2 / 6
SERIES_TAIL_TARGET = 1e-12
DEFAULT_EULER_CUTOFF = 50_000_000
DEFAULT_TOLERANCE = 1e-9
_CHUNK = 1 << 21


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise DomainError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1, the quadratic character of discriminant D.

    Args:
        D: Discriminant
        n: Positive integer

    Returns:
        -1, 0 or 1
    """
    if n < 1:
        raise DomainError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    return result * jacobi_symbol(D, n) if n > 1 else result


@lru_cache(maxsize=64)
def _character_period(D: int) -> np.ndarray:
    period = abs(D)
    return np.array([0] + [kronecker_symbol(D, n) for n in range(1, period)], dtype=np.float64)


def character_values(D: int, ns: np.ndarray) -> np.ndarray:
    """χ_D evaluated on an integer array, using the period |D|."""
    return _character_period(D)[ns % abs(D)]


def dirichlet_l2_series(disc: Discriminant, tail_target: float = SERIES_TAIL_TARGET) -> tuple[float, float]:
    """L(2, χ_D) from the Dirichlet series Σ χ(n)/n².

    Partial sums of χ are bounded by |D|/2, so by summation by parts the tail after n terms is
    at most |D|/n²; the cutoff is chosen to push that below ``tail_target``.

    Args:
        disc: Imaginary quadratic discriminant
        tail_target: Required tail bound

    Returns:
        (value, proven tail bound)
    """
    if disc.is_rational:
        raise DomainError("no character for the integers")
    cutoff = math.ceil(math.sqrt(disc.abs_d / tail_target))
    partials = []
    for lo in range(1, cutoff + 1, _CHUNK):
        ns = np.arange(lo, min(lo + _CHUNK, cutoff + 1), dtype=np.int64)
        nf = ns.astype(np.float64)
        partials.append(float(np.sum(character_values(disc.D, ns) / (nf * nf))))
    tail = disc.abs_d / cutoff**2
    logger.debug(f"L(2, chi_{disc.D}) series: {cutoff} terms, tail <= {tail:.2e}")
    return math.fsum(partials), tail


def dirichlet_l2_euler(disc: Discriminant, cutoff: int = DEFAULT_EULER_CUTOFF) -> float:
    """L(2, χ_D) as the Euler product ∏_{p <= cutoff} (1 − χ(p)p⁻²)⁻¹."""
    if disc.is_rational:
        raise DomainError("no character for the integers")
    primes = primes_up_to(cutoff)
    pf = primes.astype(np.float64)
    log_factors = -np.log1p(-character_values(disc.D, primes) / (pf * pf))
    return math.exp(math.fsum(log_factors.tolist()))


@lru_cache(maxsize=32)
def zeta_K_2(
    disc: Discriminant,
    euler_cutoff: int = DEFAULT_EULER_CUTOFF,
    tolerance: float = DEFAULT_TOLERANCE,
) -> float:
    """Dedekind zeta value ζ_K(2) = ζ(2)·L(2, χ_D), cross-checked two ways.

    Args:
        disc: Imaginary quadratic discriminant
        euler_cutoff: Largest prime in the Euler product
        tolerance: Largest accepted disagreement between the two evaluations

    Returns:
        ζ_K(2) from the series evaluation

    Raises:
        ZetaMismatchError: The series and the Euler product disagree
    """
    series, _ = dirichlet_l2_series(disc)
    euler = dirichlet_l2_euler(disc, euler_cutoff)
    if abs(series - euler) > tolerance:
        raise ZetaMismatchError(f"L(2, chi_{disc.D}): series {series!r} vs Euler product {euler!r}")
    logger.debug(f"zeta_K(2) for {disc}: L(2) = {series!r}, |series - euler| = {abs(series - euler):.2e}")
    return ZETA_2 * series
