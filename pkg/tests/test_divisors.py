"""Tests for the divisor sieves and divisor sums."""

import math

import numpy as np
import pytest

from perp_counter.arith.divisors import (
    dK_direct,
    divisor_sum_quadratic,
    divisor_sum_rational,
    divisor_sums_rational,
    divisors_of,
    element_divisors,
    ideal_divisor_sum,
    primes_up_to,
    sieve_d,
    sieve_dK,
    square_plus_divisor_counts,
)
from perp_counter.arith.rings import GAUSSIAN, Discriminant, QuadInt, elements_of_norm_at_most, units
from perp_counter.errors import DomainError, SieveMemoryError

DISCRIMINANTS = [-3, -4, -7, -8, -11]


def _trial_d(k: int) -> int:
    return sum(2 if j * j != k else 1 for j in range(1, math.isqrt(k) + 1) if k % j == 0)


def test_sieve_d_examples() -> None:
    table = sieve_d(100)
    assert table[1] == 1
    assert table[6] == 4
    assert table[97] == 2
    assert table[64] == 7
    with pytest.raises(IndexError):
        table[101]


def test_sieve_d_matches_trial_division() -> None:
    table = sieve_d(10_000)
    assert all(table[k] == _trial_d(k) for k in range(1, 10_001))


def test_sieve_d_rejects_zero() -> None:
    with pytest.raises(DomainError):
        sieve_d(0)


def test_primes_up_to() -> None:
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_divisors_of() -> None:
    assert divisors_of(12) == [1, 2, 3, 4, 6, 12]
    assert divisors_of(1) == [1]
    with pytest.raises(DomainError):
        divisors_of(0)


def test_divisor_sum_rational_small() -> None:
    assert divisor_sum_rational(1) == 2
    assert divisor_sum_rational(2) == 6


def test_divisor_sum_rational_matches_oracle() -> None:
    d = [0] + [_trial_d(k) for k in range(1, 1002)]
    assert divisor_sum_rational(1000) == sum(d[k] * d[k + 1] for k in range(1, 1001))


def test_divisor_sums_rational_prefix_is_nondecreasing() -> None:
    bounds = [1, 2, 10, 100, 500]
    sums = divisor_sums_rational(bounds)
    assert sums == [divisor_sum_rational(b) for b in bounds]
    assert sums == sorted(sums)


@pytest.mark.parametrize("c", [1, 4])
def test_square_plus_divisor_counts(c: int) -> None:
    counts = square_plus_divisor_counts(300, c)
    assert counts.tolist() == [_trial_d(r * r + c) for r in range(301)]


def test_dK_direct_gaussian_examples() -> None:
    assert dK_direct(QuadInt.gaussian(1, 0)) == 4
    assert dK_direct(QuadInt.gaussian(1, 1)) == 8
    assert dK_direct(QuadInt.gaussian(2, 0)) == 12
    with pytest.raises(DomainError):
        dK_direct(QuadInt.gaussian(0, 0))


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_sieve_dK_matches_direct_count(value: int) -> None:
    disc = Discriminant(value)
    table = sieve_dK(disc, 10)
    for x in elements_of_norm_at_most(disc, 100):
        if x:
            assert table[x] == dK_direct(x), x


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_sieve_dK_unit_values_and_multiples(value: int) -> None:
    disc = Discriminant(value)
    table = sieve_dK(disc, 12)
    for u in units(disc):
        assert table[u] == disc.units_count
    counts = table.counts()
    assert np.all(counts % disc.units_count == 0)


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_dK_invariant_under_units_and_conjugation(rng: np.random.Generator, value: int) -> None:
    disc = Discriminant(value)
    table = sieve_dK(disc, 15)
    points = [x for x in elements_of_norm_at_most(disc, 225) if x]
    for idx in rng.choice(len(points), size=200, replace=False):
        x = points[int(idx)]
        assert all(table[x * u] == table[x] for u in units(disc))
        assert table[x.conj()] == table[x]


@pytest.mark.parametrize("value", [-3, -4, -7])
def test_element_divisors_match_direct_count(value: int) -> None:
    disc = Discriminant(value)
    for x in elements_of_norm_at_most(disc, 60):
        if x:
            divisors = element_divisors(x)
            assert len(divisors) == len(set(divisors)) == dK_direct(x)
            assert all(d.divides(x) for d in divisors)


def test_sieve_dK_memory_bound() -> None:
    with pytest.raises(SieveMemoryError) as info:
        sieve_dK(GAUSSIAN, 200, band_bytes=10_000)
    assert info.value.needed_bytes > 10_000
    assert info.value.band_rows >= 1


def _direct_quadratic_sum(disc: Discriminant, N: int, shift: int) -> int:
    total = 0
    for k in elements_of_norm_at_most(disc, N * N):
        neighbour = k + shift
        if k and neighbour:
            total += dK_direct(k) * dK_direct(neighbour)
    return total


@pytest.mark.parametrize("value", [-4, -3])
def test_divisor_sum_quadratic_matches_direct_enumeration(value: int) -> None:
    disc = Discriminant(value)
    assert divisor_sum_quadratic(disc, 6) == _direct_quadratic_sum(disc, 6, -1)


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_divisor_sum_quadratic_shifts_agree(value: int) -> None:
    disc = Discriminant(value)
    for N in (2, 5, 12):
        assert divisor_sum_quadratic(disc, N, shift=-1) == divisor_sum_quadratic(disc, N, shift=1)


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_divisor_sum_quadratic_divisibility(value: int) -> None:
    disc = Discriminant(value)
    total = divisor_sum_quadratic(disc, 20)
    assert total % disc.units_count**2 == 0
    assert ideal_divisor_sum(disc, 20) == total // disc.units_count**2


def test_divisor_sum_quadratic_is_nondecreasing() -> None:
    sums = [divisor_sum_quadratic(GAUSSIAN, N) for N in range(2, 15)]
    assert sums == sorted(sums)


def test_divisor_sum_quadratic_independent_of_bands_and_threads() -> None:
    reference = divisor_sum_quadratic(GAUSSIAN, 40)
    assert divisor_sum_quadratic(GAUSSIAN, 40, band_bytes=2_000) == reference
    assert divisor_sum_quadratic(GAUSSIAN, 40, band_bytes=2_000, threads=3) == reference


def test_divisor_sum_quadratic_rejects_bad_input() -> None:
    with pytest.raises(DomainError):
        divisor_sum_quadratic(GAUSSIAN, 1)
    with pytest.raises(DomainError):
        divisor_sum_quadratic(GAUSSIAN, 5, shift=2)
