"""Tests for the numerical verification suite at small sizes."""

import pytest

from perp_counter.arith.divisors import divisor_sum_rational
from perp_counter.arith.rings import EISENSTEIN, Discriminant
from perp_counter.errors import DomainError
from perp_counter.models.base import KField
from perp_counter.services.checks import (
    CHECKS,
    complex_length_identity,
    constants_cross_check,
    cygan_invariance,
    divisor_bridge,
    heis_ray_expansion,
    horosphere_scaling,
    ray_expansion,
    reflection_identity,
    xi_check,
)


def test_divisor_bridge_with_naive_search():
    result = divisor_bridge(20)
    assert result["paths_equal"]
    assert result["naive"] == result["divisor_sum"] == divisor_sum_rational(20)


def test_divisor_bridge_without_naive_search():
    result = divisor_bridge(100, threads=2)
    assert result["enumeration"] == result["divisor_sum"]
    assert "naive" not in result


def test_complex_length_identity():
    result = complex_length_identity(samples=100)
    assert result["samples"] > 0
    assert result["disc"] == -4
    assert result["max_identity_error"] <= 1e-9
    assert result["max_oracle_error"] <= 1e-9


def test_complex_length_identity_over_eisenstein_integers():
    result = complex_length_identity(samples=30, disc=EISENSTEIN)
    assert result["disc"] == -3
    assert result["max_oracle_error"] <= 1e-9
    with pytest.raises(DomainError):
        complex_length_identity(samples=1, disc=Discriminant(1))


def test_ray_expansion_slopes():
    slopes = ray_expansion()["slopes"]
    assert set(slopes) == {"0.5", "1.0", "3.0"}
    assert all(slope == pytest.approx(-2.0, abs=0.05) for slope in slopes.values())


@pytest.mark.parametrize("kfield", [KField.C, KField.H])
def test_heis_ray_expansion(kfield):
    result = heis_ray_expansion(kfield, 2)
    assert len(result["slopes"]) == 5


def test_heis_ray_expansion_rejects_real_space():
    with pytest.raises(DomainError):
        heis_ray_expansion(KField.R, 2)


def test_cygan_and_horosphere_checks():
    assert cygan_invariance(KField.H, 2, samples=20)["max_error"] <= 1e-9
    assert horosphere_scaling(KField.C, 3, samples=20)["passed"]


def test_xi_check_small_sample():
    result = xi_check(KField.C, 2, samples=50_000)
    assert result["closed_form"] == pytest.approx(result["sphere_form"])
    assert 45_000 <= result["samples"] <= 50_000


def test_constants_cross_check():
    result = constants_cross_check()
    assert result["checked"] == len(result["rows"])
    assert all(row["error"] <= 1e-12 for row in result["rows"])


def test_reflection_identity():
    result = reflection_identity(4)
    assert result["checked"] > 0


def test_check_registry():
    assert set(CHECKS) == {"divisor-bridge", "complex-length", "ray", "heis-ray", "xi", "constants", "reflections"}


@pytest.mark.slow
def test_divisor_bridge_up_to_1000():
    result = divisor_bridge(1000, threads=2)
    assert result["paths_equal"]
    assert result["enumeration"] == divisor_sum_rational(1000)


@pytest.mark.slow
@pytest.mark.parametrize(("kfield", "n"), [(KField.C, 2), (KField.C, 3), (KField.H, 2)])
def test_xi_monte_carlo_within_one_percent(kfield, n):
    result = xi_check(kfield, n, samples=10_000_000, threads=2)
    assert abs(result["monte_carlo"] - result["closed_form"]) <= 0.01 * result["closed_form"]
