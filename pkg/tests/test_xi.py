"""Tests for the Ξ constants and their Monte Carlo estimates."""

import math

import pytest

from perp_counter.errors import DomainError
from perp_counter.geometry.xi import (
    region_lebesgue_volume,
    region_volume_monte_carlo,
    xi_constant,
    xi_constant_spheres,
    xi_monte_carlo,
    xi_real,
    xi_real_gamma,
)
from perp_counter.models.base import KField


def test_xi_real_values() -> None:
    assert xi_real(2) == 4.0
    assert math.isclose(xi_real(3), 4 * math.pi)
    for n in range(2, 12):
        assert math.isclose(xi_real(n), xi_real_gamma(n), rel_tol=1e-12)
    with pytest.raises(DomainError):
        xi_real(1)


def test_xi_closed_forms() -> None:
    assert math.isclose(xi_constant(KField.C, 2), 2 * math.pi)
    assert math.isclose(xi_constant(KField.H, 2), 4 * math.pi**3)


@pytest.mark.parametrize(("kfield", "n"), [(KField.C, n) for n in range(2, 8)] + [(KField.H, n) for n in range(2, 5)])
def test_xi_gamma_form_matches_spheres(kfield: KField, n: int) -> None:
    assert math.isclose(xi_constant(kfield, n), xi_constant_spheres(kfield, n), rel_tol=1e-12)


def test_xi_rejects_real_field_and_small_dimension() -> None:
    with pytest.raises(DomainError):
        xi_constant(KField.R, 2)
    with pytest.raises(DomainError):
        xi_constant(KField.C, 1)


@pytest.mark.parametrize(("kfield", "n"), [(KField.C, 2), (KField.C, 3), (KField.H, 2)])
def test_xi_monte_carlo_agrees(kfield: KField, n: int) -> None:
    result = xi_monte_carlo(kfield, n, samples=400_000, seed=7)
    exact = xi_constant(kfield, n)
    assert result.samples == 400_000
    assert abs(result.estimate - exact) <= max(0.02 * exact, 5 * result.std_error)


def test_xi_monte_carlo_ignores_thread_count() -> None:
    serial = xi_monte_carlo(KField.C, 2, samples=50_000, seed=11, threads=1)
    parallel = xi_monte_carlo(KField.C, 2, samples=50_000, seed=11, threads=4)
    assert serial == parallel


def test_lebesgue_volume_differs_from_xi() -> None:
    assert math.isclose(region_lebesgue_volume(KField.C, 2), 8 * math.pi / 3)
    assert not math.isclose(region_lebesgue_volume(KField.C, 2), xi_constant(KField.C, 2))


@pytest.mark.parametrize(("kfield", "n"), [(KField.C, 2), (KField.H, 2)])
def test_lebesgue_volume_monte_carlo(kfield: KField, n: int) -> None:
    result = region_volume_monte_carlo(kfield, n, samples=400_000, seed=3)
    exact = region_lebesgue_volume(kfield, n)
    assert abs(result.estimate - exact) <= max(0.02 * exact, 5 * result.std_error)
