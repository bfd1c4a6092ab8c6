"""Exact ring arithmetic, matrices, divisor sieves and zeta values."""

from .divisors import (
    LatticeLayout,
    SieveTableK,
    SieveTableZ,
    divisor_sum_quadratic,
    divisor_sum_rational,
    dK_direct,
    divisors_of,
    element_divisors,
    ideal_divisor_sum,
    primes_up_to,
    sieve_d,
    sieve_dK,
    square_plus_divisor_counts,
)
from .matrices import Mat2, ProjPoint, mobius_apply, psl_canonicalize
from .rings import (
    EISENSTEIN,
    GAUSSIAN,
    Discriminant,
    QuadInt,
    Quaternion,
    canonical_associate,
    elements_of_norm_at_most,
    qnorm,
    units,
)
from .zeta import kronecker_symbol, zeta_K_2

__all__ = [
    "Discriminant",
    "EISENSTEIN",
    "GAUSSIAN",
    "LatticeLayout",
    "Mat2",
    "ProjPoint",
    "QuadInt",
    "Quaternion",
    "SieveTableK",
    "SieveTableZ",
    "canonical_associate",
    "dK_direct",
    "divisors_of",
    "divisor_sum_quadratic",
    "divisor_sum_rational",
    "element_divisors",
    "elements_of_norm_at_most",
    "ideal_divisor_sum",
    "kronecker_symbol",
    "mobius_apply",
    "primes_up_to",
    "psl_canonicalize",
    "qnorm",
    "sieve_d",
    "sieve_dK",
    "square_plus_divisor_counts",
    "units",
    "zeta_K_2",
]
