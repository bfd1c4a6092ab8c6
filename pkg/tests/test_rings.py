"""Tests for ring, quaternion and matrix arithmetic."""

import numpy as np
import pytest

from conftest import random_sl2z
from perp_counter.arith.matrices import Mat2, ProjPoint, mobius_apply, psl_canonicalize
from perp_counter.arith.rings import (
    EISENSTEIN,
    GAUSSIAN,
    Discriminant,
    QuadInt,
    Quaternion,
    canonical_associate,
    elements_of_norm_at_most,
    is_fundamental_discriminant,
    qnorm,
    units,
)
from perp_counter.errors import DomainError, InvalidDiscriminantError

DISCRIMINANTS = [-3, -4, -7, -8, -11]


def _random_element(rng: np.random.Generator, disc: Discriminant, radius: int = 50) -> QuadInt:
    x, y = rng.integers(-radius, radius + 1, size=2)
    return QuadInt(int(x), int(y), disc)


@pytest.mark.parametrize("value", [-3, -4, -7, -8, -11, -15, -20, -163])
def test_fundamental_discriminants_accepted(value: int) -> None:
    assert is_fundamental_discriminant(value)
    assert Discriminant(value).D == value


@pytest.mark.parametrize("value", [0, 5, -1, -5, -12, -16, -9])
def test_invalid_discriminants_rejected(value: int) -> None:
    with pytest.raises(InvalidDiscriminantError):
        Discriminant(value)


def test_rational_discriminant() -> None:
    assert Discriminant.RATIONAL.is_rational
    assert str(Discriminant.RATIONAL) == "Q"


@pytest.mark.parametrize(("value", "count"), [(-4, 4), (-3, 6), (-7, 2), (-8, 2)])
def test_units_cardinality(value: int, count: int) -> None:
    disc = Discriminant(value)
    found = units(disc)
    assert len(found) == count == disc.units_count
    assert all(u.norm() == 1 for u in found)


def test_gaussian_units_are_powers_of_i() -> None:
    i = QuadInt.gaussian(0, 1)
    expected = {QuadInt.gaussian(1, 0), i, i * i, i * i * i}
    assert set(units(GAUSSIAN)) == expected


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_units_closed_under_products(value: int) -> None:
    found = set(units(Discriminant(value)))
    assert {u * v for u in found for v in found} == found


def test_qnorm_examples() -> None:
    assert qnorm(QuadInt.gaussian(0, 0)) == 0
    assert qnorm(QuadInt.gaussian(1, 1)) == 2
    q = QuadInt(3, 2, EISENSTEIN)
    assert qnorm(q) == round(abs(q.to_complex()) ** 2)
    assert abs(qnorm(q) - abs(q.to_complex()) ** 2) < 1e-9


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_norm_is_multiplicative(rng: np.random.Generator, value: int) -> None:
    disc = Discriminant(value)
    for _ in range(1000):
        x, y = _random_element(rng, disc), _random_element(rng, disc)
        assert (x * y).norm() == x.norm() * y.norm()
        assert (x * y) == (y * x)
        assert x.norm() >= 0
        assert (x.norm() == 0) == (not x)


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_embedding_is_a_ring_homomorphism(rng: np.random.Generator, value: int) -> None:
    disc = Discriminant(value)
    for _ in range(200):
        x, y = _random_element(rng, disc), _random_element(rng, disc)
        assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-6
        assert abs((x + y).to_complex() - (x.to_complex() + y.to_complex())) < 1e-9
        assert abs(x.conj().to_complex() - x.to_complex().conjugate()) < 1e-9


def test_gaussian_embedding() -> None:
    assert QuadInt.gaussian(3, -2).to_complex() == complex(3, -2)


def test_exact_division() -> None:
    a, b = QuadInt.gaussian(1, 1), QuadInt.gaussian(2, 3)
    assert (a * b).exact_div(a) == b
    assert QuadInt.gaussian(1, 0).exact_div(a) is None
    assert a.divides(QuadInt.gaussian(2, 0))
    assert not QuadInt.gaussian(2, 0).divides(a)
    with pytest.raises(DomainError):
        a.exact_div(0)


def test_integer_coercion() -> None:
    x = QuadInt.gaussian(2, 5)
    assert x + 1 == QuadInt.gaussian(3, 5)
    assert 1 + x == x + 1
    assert 3 * x == x + x + x
    assert 1 - x == -(x - 1)


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_elements_of_norm_at_most_matches_brute_force(value: int) -> None:
    disc = Discriminant(value)
    bound = 30
    found = {(q.x, q.y) for q in elements_of_norm_at_most(disc, bound)}
    brute = {
        (x, y) for x in range(-40, 41) for y in range(-40, 41) if QuadInt(x, y, disc).norm() <= bound
    }
    assert found == brute


@pytest.mark.parametrize("value", DISCRIMINANTS)
def test_canonical_associate_is_unit_invariant(rng: np.random.Generator, value: int) -> None:
    disc = Discriminant(value)
    for _ in range(100):
        q = _random_element(rng, disc, 10)
        if not q:
            continue
        reps = {canonical_associate(q * u) for u in units(disc)}
        assert len(reps) == 1


def test_quaternion_conjugation_reverses_products(rng: np.random.Generator) -> None:
    for _ in range(200):
        p = Quaternion(*rng.normal(size=4).tolist())
        q = Quaternion(*rng.normal(size=4).tolist())
        lhs = (p * q).conjugate().as_tuple()
        rhs = (q.conjugate() * p.conjugate()).as_tuple()
        assert np.allclose(lhs, rhs, atol=1e-12)
        assert abs(abs(p * q) - abs(p) * abs(q)) < 1e-9


def test_quaternion_parts_and_inverse() -> None:
    q = Quaternion(1.0, 2.0, -3.0, 0.5)
    assert q.re == 1.0
    assert q.im.as_tuple() == (0.0, 2.0, -3.0, 0.5)
    assert np.allclose((q * q.inverse()).as_tuple(), (1.0, 0.0, 0.0, 0.0))
    with pytest.raises(DomainError):
        Quaternion(0.0).inverse()


def test_mobius_examples() -> None:
    z = ProjPoint(3, 7)
    assert mobius_apply(Mat2.identity(), z) == z
    assert mobius_apply(Mat2(2, 1, 3, 2), ProjPoint.infinity()) == ProjPoint(2, 3)
    assert mobius_apply(Mat2(0, -1, 1, 0), ProjPoint(0, 1)).is_infinity()
    with pytest.raises(DomainError):
        mobius_apply(Mat2(0, 0, 0, 0), z)


def test_projective_points_compare_up_to_scaling() -> None:
    assert ProjPoint(2, 4) == ProjPoint(-1, -2)
    assert ProjPoint(1, 0) == ProjPoint(-5, 0)
    with pytest.raises(DomainError):
        ProjPoint(0, 0)


def test_mobius_action_is_a_homomorphism(rng: np.random.Generator) -> None:
    for _ in range(1000):
        m1, m2 = random_sl2z(rng), random_sl2z(rng)
        z = ProjPoint(int(rng.integers(-20, 21)), int(rng.integers(1, 20)))
        assert mobius_apply(m1 @ m2, z) == mobius_apply(m1, mobius_apply(m2, z))


def test_gaussian_mobius_action() -> None:
    i = QuadInt.gaussian(0, 1)
    one = QuadInt.gaussian(1, 0)
    zero = QuadInt.gaussian(0, 0)
    m = Mat2(one, i, zero, one)
    image = mobius_apply(m, ProjPoint(one, one))
    assert image.to_complex() == complex(1, 1)


def test_psl_canonicalize_examples() -> None:
    assert psl_canonicalize(Mat2(-1, 0, 0, -1)) == Mat2(1, 0, 0, 1)
    assert psl_canonicalize(Mat2(0, -1, 1, 0)) == Mat2(0, 1, -1, 0)
    assert psl_canonicalize(Mat2(-2, -1, -3, -2)) == Mat2(2, 1, 3, 2)
    with pytest.raises(DomainError):
        psl_canonicalize(Mat2(2, 0, 0, 1))


def test_psl_canonicalize_ignores_sign(rng: np.random.Generator) -> None:
    for _ in range(500):
        m = random_sl2z(rng)
        canon = psl_canonicalize(m)
        assert canon == psl_canonicalize(-m)
        assert psl_canonicalize(canon) == canon


def test_psl_canonicalize_over_gaussian_integers() -> None:
    i = QuadInt.gaussian(0, 1)
    zero = QuadInt.gaussian(0, 0)
    m = Mat2(i, zero, zero, -i)
    assert psl_canonicalize(m) == psl_canonicalize(-m)
    assert psl_canonicalize(m).a == i


def test_matrix_power_and_inverse(rng: np.random.Generator) -> None:
    for _ in range(100):
        m = random_sl2z(rng)
        assert m @ m.inverse() == Mat2.identity()
        assert m.power(3) == m @ m @ m
        assert m.power(-2) == m.inverse() @ m.inverse()
        assert m.power(0) == Mat2.identity()
