"""Tests for distances and common perpendiculars in the real hyperbolic plane and 3-space."""

import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_sl2z
from perp_counter.arith.matrices import Mat2
from perp_counter.arith.rings import EISENSTEIN, GAUSSIAN
from perp_counter.errors import DomainError, GeometryError
from perp_counter.geometry.real import (
    GeodesicBP,
    PointH2,
    PointH3,
    angle_of_parallelism,
    complex_length_from_endpoints,
    complex_length_h3,
    complex_length_residual,
    dist_h2,
    dist_h3,
    dist_point_to_vertical_axis,
    dist_to_vertical_ray,
    hamenstadt_bound_check,
    hamenstadt_dist_real,
    hamenstadt_limit,
    mobius_h2,
    mobius_h3,
    perp_between_geodesics,
    perp_cosh_exact,
    perp_geometric_h3,
    perp_geometric_h3_matrix,
    perp_vertical_to_nested,
    ray_distance,
    ray_distance_residual,
)
from perp_counter.services.checks import random_bianchi_sl2
from perp_counter.services.perp_count import bianchi_quadruples
from perp_counter.utils.numeric import decay_slope


def test_points_need_positive_height() -> None:
    with pytest.raises(DomainError):
        PointH2(0.0, 0.0)
    with pytest.raises(DomainError):
        PointH3(1j, -1.0)


def test_distances() -> None:
    assert math.isclose(dist_h2(PointH2(0, 1), PointH2(0, 2)), math.log(2))
    assert math.isclose(dist_h3(PointH3(0j, 1), PointH3(0j, math.e)), 1.0)
    assert math.isclose(dist_point_to_vertical_axis(PointH2(1, 1)), math.acosh(math.sqrt(2)))
    assert dist_point_to_vertical_axis(PointH3(0j, 5.0)) == 0.0


def test_angle_of_parallelism() -> None:
    assert math.isclose(angle_of_parallelism(0.0), math.pi / 2)
    u = 1.3
    assert math.isclose(math.cosh(u) * math.sin(angle_of_parallelism(u)), 1.0)
    with pytest.raises(DomainError):
        angle_of_parallelism(-1.0)


def test_geodesic_endpoints_must_differ() -> None:
    with pytest.raises(DomainError):
        GeodesicBP.between(Fraction(1, 2), Fraction(2, 4))


def test_perp_to_nested_geodesic_is_exact() -> None:
    perp = perp_vertical_to_nested(1, 3)
    assert perp.cosh_exact == 2
    assert math.isclose(perp.length, math.acosh(2))
    axis_foot, foot = perp.feet
    assert math.isclose(dist_h2(axis_foot, foot), perp.length)
    with pytest.raises(GeometryError):
        perp_vertical_to_nested(3, 1)


def test_perp_cosh_exact() -> None:
    axis = GeodesicBP.vertical_axis()
    assert perp_cosh_exact(axis, GeodesicBP.between(1, 3)) == 2
    assert perp_cosh_exact(axis, GeodesicBP.between(-3, -1)) == 2
    # ]γ·0, γ·∞[ = ]b/d, a/c[ gives cosh = 1 + 2bc for γ in SL₂(ℤ) with positive entries
    gamma = Mat2(3, 1, 2, 1)
    assert perp_cosh_exact(axis, axis.image(gamma)) == 1 + 2 * 1 * 2


@pytest.mark.parametrize(
    ("g1", "g2"),
    [
        ((0, None), (-1, 1)),  # crossing
        ((0, None), (0, 1)),  # shared endpoint
        ((0, 1), (1, 2)),
    ],
)
def test_no_perpendicular(g1: tuple, g2: tuple) -> None:
    with pytest.raises(GeometryError):
        perp_between_geodesics(GeodesicBP.between(*g1), GeodesicBP.between(*g2))


def test_perp_feet_realize_length() -> None:
    perp = perp_between_geodesics(GeodesicBP.between(0, 1), GeodesicBP.between(2, 5))
    assert perp.cosh_exact is not None
    a, b = perp.feet
    assert math.isclose(dist_h2(a, b), perp.length, rel_tol=1e-12)
    # each foot lies on its geodesic
    assert math.isclose(abs(a.z - 0.5), 0.5, rel_tol=1e-12)
    assert math.isclose(abs(b.z - 3.5), 1.5, rel_tol=1e-12)


def test_perp_invariant_under_sl2z(rng: np.random.Generator) -> None:
    g1, g2 = GeodesicBP.between(0, None), GeodesicBP.between(2, 7)
    reference = perp_cosh_exact(g1, g2)
    for _ in range(50):
        m = random_sl2z(rng)
        assert perp_cosh_exact(g1.image(m), g2.image(m)) == reference


def test_complex_length_real_case() -> None:
    length, angle = complex_length_h3(GeodesicBP.vertical_axis().image(Mat2(2, 1, 1, 1)))
    assert math.isclose(length, math.acosh(3))
    assert angle == 0.0
    _, reversed_angle = complex_length_from_endpoints(2, 1)
    assert math.isclose(reversed_angle, math.pi)


def test_complex_length_rejects_axis_endpoints() -> None:
    with pytest.raises(GeometryError):
        complex_length_from_endpoints(0j, 1 + 1j)
    with pytest.raises(GeometryError):
        complex_length_h3(GeodesicBP.vertical_axis())


@pytest.mark.parametrize(("p", "q"), [(1 + 1j, -2 + 3j), (0.5 - 2j, 4 + 0.1j), (1.0, 2.0), (-1 + 0.2j, 1 + 0.2j)])
def test_geometric_oracle_agrees_with_endpoint_formula(p: complex, q: complex) -> None:
    length, angle = complex_length_from_endpoints(p, q)
    oracle = perp_geometric_h3(p, q)
    assert math.isclose(oracle.length, length, abs_tol=1e-7)
    assert math.isclose(oracle.angle, angle, abs_tol=1e-6)
    axis_foot, foot = oracle.feet
    assert math.isclose(dist_h3(axis_foot, foot), length, abs_tol=1e-7)


def test_complex_length_identity_for_gaussian_matrices(rng: np.random.Generator) -> None:
    for _ in range(30):
        gamma = random_bianchi_sl2(rng)
        a, b, c, d = gamma.to_complex()
        length, angle = complex_length_from_endpoints(b / d, a / c)
        target = 2 * abs(a * d)
        assert math.isclose(math.cosh(length) + math.cos(angle), target, rel_tol=1e-9)


@pytest.mark.parametrize("disc", [GAUSSIAN, EISENSTEIN])
def test_complex_length_identity_from_geometric_search(rng: np.random.Generator, disc) -> None:
    for _ in range(50):
        gamma = random_bianchi_sl2(rng, disc, letters=4, radius=2)
        target = 2 * abs((gamma.a * gamma.d).to_complex())
        oracle = perp_geometric_h3_matrix(gamma)
        assert abs(math.cosh(oracle.length) + math.cos(oracle.angle) - target) <= 1e-9


@pytest.mark.parametrize("disc", [GAUSSIAN, EISENSTEIN])
def test_complex_length_identity_on_quadruples(disc) -> None:
    checked = 0
    for gamma in bianchi_quadruples(disc, 6):
        target = 2 * abs((gamma.a * gamma.d).to_complex())
        oracle = perp_geometric_h3_matrix(gamma)
        assert abs(math.cosh(oracle.length) + math.cos(oracle.angle) - target) <= 1e-9
        checked += 1
    assert checked > 100


def test_geometric_search_keeps_precision_for_close_endpoints() -> None:
    # ](n − 1)/n, n/(n + 1)[ has cosh λ = 2n² − 1
    n = 10**6
    oracle = perp_geometric_h3_matrix(Mat2(n, n - 1, n + 1, n))
    assert math.isclose(math.cosh(oracle.length), 2 * n * n - 1, rel_tol=1e-12)
    assert math.isclose(oracle.angle, 0.0, abs_tol=1e-6)
    with pytest.raises(GeometryError):
        perp_geometric_h3_matrix(Mat2(1, 1, 0, 1))
    with pytest.raises(DomainError):
        perp_geometric_h3_matrix(Mat2(2, 1, 1, 2))


def test_complex_length_residual_decays() -> None:
    for length in (5.0, 10.0, 15.0):
        assert abs(complex_length_residual(length, 0.7)) <= 3 * math.exp(-length)


def test_mobius_h3_is_an_action_by_isometries(rng: np.random.Generator) -> None:
    p, q = PointH3(0.3 + 0.2j, 0.7), PointH3(-1 + 1j, 2.0)
    for _ in range(20):
        a, b = random_bianchi_sl2(rng, letters=3), random_bianchi_sl2(rng, letters=3)
        composed = mobius_h3(a @ b, p)
        stepwise = mobius_h3(a, mobius_h3(b, p))
        assert abs(composed.z - stepwise.z) < 1e-8 * max(1.0, abs(composed.z))
        assert math.isclose(composed.t, stepwise.t, rel_tol=1e-8)
        assert math.isclose(dist_h3(mobius_h3(a, p), mobius_h3(a, q)), dist_h3(p, q), rel_tol=1e-8)


def test_mobius_h2_is_an_isometry(rng: np.random.Generator) -> None:
    p, q = PointH2(0.1, 0.5), PointH2(2.0, 3.0)
    for _ in range(20):
        m = random_sl2z(rng)
        assert math.isclose(dist_h2(mobius_h2(m, p), mobius_h2(m, q)), dist_h2(p, q), rel_tol=1e-9)
    with pytest.raises(DomainError):
        mobius_h2(Mat2(0, 1, 1, 0), p)


def test_hamenstadt_distance() -> None:
    assert hamenstadt_dist_real([0.0, 0.0], [3.0, 4.0]) == 5.0
    with pytest.raises(DomainError):
        hamenstadt_dist_real([0.0], [1.0, 2.0])
    assert math.isclose(hamenstadt_limit(0.7, 20.0), 0.7, rel_tol=1e-9)


def test_hamenstadt_bound(rng: np.random.Generator) -> None:
    for _ in range(100):
        x, y = rng.normal(size=2) * 5, rng.normal(size=2) * 5
        assert hamenstadt_bound_check(x, y)


def test_ray_residual_matches_direct_distance() -> None:
    for a in (0.5, 1.0, 3.0):
        for t in (0.0, 0.5, 2.0):
            direct = ray_distance(a, t) - (t + math.log(a) + math.log(2))
            assert math.isclose(ray_distance_residual(a, t), direct, abs_tol=1e-12)


def test_ray_residual_decay_rate() -> None:
    ts = [2.0, 4.0, 6.0, 8.0]
    for a in (0.5, 1.0, 3.0):
        residuals = [ray_distance_residual(a, t) for t in ts]
        assert abs(decay_slope(ts, residuals) + 2.0) < 0.05
        assert math.isclose(residuals[-1], math.exp(-16.0) / (4 * a * a), rel_tol=1e-3)


def test_ray_residual_rejects_bad_input() -> None:
    with pytest.raises(DomainError):
        ray_distance_residual(0.0, 1.0)
    with pytest.raises(DomainError):
        ray_distance_residual(1.0, -1.0)


def test_axis_distance_against_numeric_minimization(rng):
    from scipy.optimize import minimize_scalar

    for _ in range(20):
        p = PointH3(complex(*rng.uniform(-3.0, 3.0, 2)), float(rng.uniform(0.1, 3.0)))
        best = minimize_scalar(lambda u: dist_h3(p, PointH3(0j, math.exp(u))), bounds=(-8.0, 8.0), method="bounded")
        assert dist_point_to_vertical_axis(p) == pytest.approx(best.fun, abs=1e-6)


@pytest.mark.parametrize(("x", "y"), [(1, 3), (Fraction(1, 2), 5), (2, 7)])
def test_nested_perpendicular_against_numeric_minimization(x, y):
    from scipy.optimize import minimize

    center, radius = (float(x) + float(y)) / 2.0, (float(y) - float(x)) / 2.0

    def gap(v: np.ndarray) -> float:
        u, phi = v
        on_circle = PointH2(center + radius * math.cos(phi), radius * abs(math.sin(phi)))
        return dist_h2(PointH2(0.0, math.exp(u)), on_circle)

    start = np.array([0.5 * math.log(float(x) * float(y)), math.pi / 2.0])
    best = minimize(gap, start, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
    assert perp_vertical_to_nested(x, y).length == pytest.approx(best.fun, abs=1e-6)


@pytest.mark.parametrize("offset", [0.0, 0.3, 1.0, 7.5])
def test_distance_to_vertical_ray_by_search(offset: float) -> None:
    assert math.isclose(dist_to_vertical_ray(offset), math.acosh(math.sqrt(offset * offset + 1.0)), abs_tol=1e-9)
