"""Tests for the numeric helpers and exact length thresholds."""

import math
from fractions import Fraction

import pytest

from perp_counter.errors import DomainError
from perp_counter.utils.numeric import (
    Threshold,
    acosh_stable,
    ball_volume,
    decay_slope,
    gamma_half,
    sphere_volume,
    sqrt_fraction,
)


@pytest.mark.parametrize("x", [1.0 + 1e-10, 1.0 + 1e-6, 1.5, 3.0, 1e10])
def test_acosh_stable_matches_math(x: float) -> None:
    assert math.isclose(acosh_stable(x), math.acosh(x), rel_tol=1e-9)


def test_acosh_stable_edges() -> None:
    assert acosh_stable(1.0) == 0.0
    assert acosh_stable(1.0 - 1e-14) == 0.0
    assert math.isfinite(acosh_stable(1e300))
    with pytest.raises(DomainError):
        acosh_stable(0.5)


def test_sqrt_fraction() -> None:
    assert sqrt_fraction(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_fraction(Fraction(2)) is None


def test_threshold_parse_forms() -> None:
    plain = Threshold.parse("10")
    assert plain.s == 10.0 and plain.cosh_sq is None
    exact = Threshold.parse("acosh:3")
    assert exact.cosh_sq == 9 and exact.cosh_exact == 3
    assert math.isclose(exact.s, math.acosh(3.0))
    root = Threshold.parse("acosh: sqrt(2)")
    assert root.cosh_sq == 2 and root.cosh_exact is None
    assert str(exact) == "acosh:3"
    assert str(root) == "acosh:sqrt(2)"


@pytest.mark.parametrize("text", ["", "abc", "acosh:1", "acosh:1/0", "-3", "acosh:sqrt(1/2)"])
def test_threshold_parse_rejects(text: str) -> None:
    with pytest.raises(DomainError):
        Threshold.parse(text)


def test_threshold_boundary_is_inclusive() -> None:
    s = Threshold.from_acosh(3)
    assert s.admits_cosh(3)
    assert not s.admits_cosh(Fraction(3000001, 1000000))
    assert s.floor_cosh() == 3
    assert s.floor_cosh_sq() == 9
    assert s.floor_scaled_cosh(2) == 6
    assert s.floor_scaled_cosh_sq(4) == 36


def test_threshold_half_is_exact() -> None:
    s = Threshold.from_acosh(3)
    half = s.half()
    assert half.cosh_sq == 2
    assert math.isclose(half.s, s.s / 2)
    assert math.isclose(math.cosh(half.s) ** 2, 2.0)
    quarter = s.quarter()
    assert quarter.cosh_sq is None
    assert math.isclose(quarter.s, s.s / 4)


def test_threshold_from_real_floors() -> None:
    s = Threshold.from_real(2.0)
    assert s.floor_cosh() == math.floor(math.cosh(2.0))
    assert s.half().cosh_sq is None


def test_gamma_half() -> None:
    assert gamma_half(2) == 1.0
    assert math.isclose(gamma_half(1), math.sqrt(math.pi))
    for k in range(1, 30):
        assert math.isclose(gamma_half(k), math.gamma(k / 2), rel_tol=1e-12)


def test_sphere_and_ball_volumes() -> None:
    assert math.isclose(sphere_volume(1), 2 * math.pi)
    assert math.isclose(sphere_volume(2), 4 * math.pi)
    assert math.isclose(ball_volume(2), math.pi)
    assert math.isclose(ball_volume(3), 4 * math.pi / 3)


def test_decay_slope() -> None:
    xs = [1.0, 2.0, 3.0, 4.0]
    assert math.isclose(decay_slope(xs, [math.exp(-2 * x) for x in xs]), -2.0)
    with pytest.raises(DomainError):
        decay_slope([1.0], [1.0])
