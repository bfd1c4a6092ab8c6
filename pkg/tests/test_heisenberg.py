"""Tests for horospherical coordinates, Cygan distances and Heisenberg translations."""

import math

import numpy as np
import pytest

from perp_counter.errors import DomainError
from perp_counter.geometry.heisenberg import (
    HeisElement,
    HsPoint,
    ball_to_siegel,
    cygan_dist,
    cygan_mod_dist,
    dist_from_base_point,
    dist_to_vertical_axis_K,
    hamenstadt_limit_K,
    heis_dilate,
    heis_dist,
    heis_inverse,
    heis_mul,
    heis_ray_distance,
    heis_ray_residual,
    heis_translate,
    horosphere_dist,
    horosphere_scaling_check,
    horospherical_to_siegel,
    qinv,
    qmul,
    siegel_to_ball,
    siegel_to_horospherical,
    sphere_residual,
)
from perp_counter.models.base import KField
from perp_counter.services.checks import random_heis_element
from perp_counter.utils.numeric import decay_slope

SPACES = [(KField.C, 2), (KField.C, 4), (KField.H, 2), (KField.H, 3)]


def _close(g1: HeisElement, g2: HeisElement, tol: float = 1e-12) -> bool:
    return np.allclose(g1.zeta, g2.zeta, atol=tol) and np.allclose(g1.u, g2.u, atol=tol)


def test_quaternion_units() -> None:
    i, j, k = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]
    assert np.allclose(qmul(i, j), k)
    assert np.allclose(qmul(j, i), -k)
    q = np.array([1.0, 2.0, -1.0, 0.5])
    assert np.allclose(qmul(q, qinv(q)), [1.0, 0.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        qinv(np.zeros(4))


def test_field_checks() -> None:
    with pytest.raises(DomainError):
        HeisElement.of(KField.R, [1.0])
    with pytest.raises(DomainError):
        HeisElement.of(KField.C, [(0.0, 0.0, 1.0, 0.0)])
    with pytest.raises(DomainError):
        HeisElement.of(KField.C, [1j], u=1 + 1j)
    with pytest.raises(DomainError):
        HsPoint.of(KField.C, [1j], 0j, -1.0)


def test_complex_multiplication_rule() -> None:
    g1 = HeisElement.of(KField.C, [1.0], 0j)
    g2 = HeisElement.of(KField.C, [1j], 0j)
    product = heis_mul(g1, g2)
    # u = 2 Im(conj(1)·i) = 2i
    assert np.allclose(product.u, [0.0, 2.0, 0.0, 0.0])
    assert np.allclose(heis_mul(g2, g1).u, [0.0, -2.0, 0.0, 0.0])


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_group_laws(rng: np.random.Generator, kfield: KField, n: int) -> None:
    ident = HeisElement.identity(kfield, n)
    for _ in range(20):
        a, b, c = (random_heis_element(rng, kfield, n, min_norm=0.0) for _ in range(3))
        assert _close(heis_mul(heis_mul(a, b), c), heis_mul(a, heis_mul(b, c)), 1e-10)
        assert _close(heis_mul(a, heis_inverse(a)), ident)
        assert _close(heis_mul(ident, a), a)


def test_mixed_spaces_rejected() -> None:
    with pytest.raises(DomainError):
        heis_mul(HeisElement.identity(KField.C, 2), HeisElement.identity(KField.C, 3))


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_cygan_is_invariant_and_homogeneous(rng: np.random.Generator, kfield: KField, n: int) -> None:
    for _ in range(50):
        g, h, k = (random_heis_element(rng, kfield, n, min_norm=0.0) for _ in range(3))
        base = cygan_dist(g, h)
        assert math.isclose(cygan_dist(heis_mul(k, g), heis_mul(k, h)), base, rel_tol=1e-9, abs_tol=1e-12)
        assert math.isclose(cygan_dist(h, g), base, rel_tol=1e-9)
        lam = float(rng.uniform(0.2, 5.0))
        pg = heis_dilate(lam, HsPoint(kfield, g.zeta, g.u, 1.0))
        ph = heis_dilate(lam, HsPoint(kfield, h.zeta, h.u, 1.0))
        assert math.isclose(cygan_dist(pg.element, ph.element), lam * base, rel_tol=1e-9)


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_cygan_triangle_inequality(rng: np.random.Generator, kfield: KField, n: int) -> None:
    for _ in range(200):
        g, h, k = (random_heis_element(rng, kfield, n, min_norm=0.0) for _ in range(3))
        assert cygan_dist(g, k) <= cygan_dist(g, h) + cygan_dist(h, k) + 1e-12


def test_modified_cygan_is_comparable(rng: np.random.Generator) -> None:
    ident = HeisElement.identity(KField.C, 3)
    for _ in range(100):
        g = random_heis_element(rng, KField.C, 3, min_norm=0.0)
        plain, modified = cygan_dist(g, ident), cygan_mod_dist(g, ident)
        assert plain - 1e-12 <= modified <= math.sqrt(2) * plain + 1e-12


def test_dilation_rejects_nonpositive_factor() -> None:
    with pytest.raises(DomainError):
        heis_dilate(0.0, HsPoint.of(KField.C, [0j], 0j, 1.0))


def test_distance_to_axis() -> None:
    on_axis = HsPoint.of(KField.C, [0j], 0j, 3.0)
    distance, projection = dist_to_vertical_axis_K(on_axis)
    assert distance == 0.0
    assert projection.t == 3.0
    off_axis = HsPoint.of(KField.C, [1.0], 0j, 1.0)
    distance, projection = dist_to_vertical_axis_K(off_axis)
    assert math.isclose(distance, 0.5 * math.acosh(3.0))
    assert projection.t == 2.0
    with pytest.raises(DomainError):
        dist_to_vertical_axis_K(HsPoint.of(KField.C, [1.0], 0j, 0.0))


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_translations_preserve_distance_to_translated_axis(rng: np.random.Generator, kfield: KField, n: int) -> None:
    for _ in range(20):
        g = random_heis_element(rng, kfield, n, min_norm=0.0)
        foot = random_heis_element(rng, kfield, n, min_norm=0.0)
        p = HsPoint(kfield, foot.zeta, foot.u, float(rng.uniform(0.1, 2.0)))
        moved = heis_translate(g, p)
        assert moved.t == p.t
        rho = dist_from_base_point(p)
        center = HsPoint(kfield, np.zeros_like(p.zeta), np.zeros(4), 1.0)
        shifted_center = heis_translate(g, center)
        scale = 4.0 * p.t * math.cosh(rho) ** 2
        assert abs(sphere_residual(shifted_center, rho, moved)) <= 1e-9 * scale


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_ball_model_distance_solves_sphere_equation(rng: np.random.Generator, kfield: KField, n: int) -> None:
    center = HsPoint(kfield, np.zeros((n - 1, 4)), np.zeros(4), 1.0)
    for _ in range(50):
        g = random_heis_element(rng, kfield, n, min_norm=0.0)
        p = HsPoint(kfield, g.zeta, g.u, float(rng.uniform(0.05, 4.0)))
        rho = dist_from_base_point(p)
        scale = 4.0 * p.t * math.cosh(rho) ** 2
        assert abs(sphere_residual(center, rho, p)) <= 1e-9 * scale


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_sphere_distance_matches_ball_model(rng: np.random.Generator, kfield: KField, n: int) -> None:
    center = HsPoint(kfield, np.zeros((n - 1, 4)), np.zeros(4), 1.0)
    for _ in range(20):
        g = random_heis_element(rng, kfield, n, min_norm=0.0)
        p = HsPoint(kfield, g.zeta, g.u, float(rng.uniform(0.05, 4.0)))
        assert math.isclose(heis_dist(center, p), dist_from_base_point(p), rel_tol=1e-9, abs_tol=1e-9)
        h = random_heis_element(rng, kfield, n, min_norm=0.0)
        moved = heis_dist(heis_translate(h, center), heis_translate(h, p))
        assert math.isclose(moved, heis_dist(center, p), rel_tol=1e-9, abs_tol=1e-9)


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_hamenstadt_limit_matches_dilated_cygan_distance(rng: np.random.Generator, kfield: KField, n: int) -> None:
    for _ in range(20):
        g1 = random_heis_element(rng, kfield, n, min_norm=0.0)
        g2 = random_heis_element(rng, kfield, n, min_norm=0.0)
        t = float(rng.uniform(0.1, 10.0))
        assert math.isclose(hamenstadt_limit_K(t, g1, g2), horosphere_dist(t, g1, g2), rel_tol=1e-10)
    with pytest.raises(DomainError):
        hamenstadt_limit_K(0.0, g1, g2)


def test_axis_points_have_logarithmic_distance() -> None:
    p = HsPoint.of(KField.H, [(0, 0, 0, 0)], (0.0, 0.0, 0.0), math.exp(-4.0))
    assert math.isclose(dist_from_base_point(p), 2.0, rel_tol=1e-9)


def test_siegel_coordinates_roundtrip(rng: np.random.Generator) -> None:
    g = random_heis_element(rng, KField.H, 3, min_norm=0.0)
    p = HsPoint(KField.H, g.zeta, g.u, 0.7)
    back = siegel_to_horospherical(KField.H, *horospherical_to_siegel(p))
    assert np.allclose(back.zeta, p.zeta)
    assert np.allclose(back.u, p.u)
    assert math.isclose(back.t, p.t)


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_ray_residual_matches_direct_distance(rng: np.random.Generator, kfield: KField, n: int) -> None:
    ident = HeisElement.identity(kfield, n)
    for _ in range(10):
        g = random_heis_element(rng, kfield, n)
        d_prime = cygan_mod_dist(g, ident) / math.sqrt(2)
        for s in (0.0, 0.5, 1.5):
            direct = heis_ray_distance(s, g) - (s + math.log(d_prime) + math.log(2))
            assert math.isclose(heis_ray_residual(s, g), direct, abs_tol=1e-10)


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_ray_residual_decays_like_exp_minus_2s(rng: np.random.Generator, kfield: KField, n: int) -> None:
    ss = [2.0, 4.0, 6.0, 8.0]
    for _ in range(5):
        g = random_heis_element(rng, kfield, n, min_zeta_sq=0.5)
        residuals = [heis_ray_residual(s, g) for s in ss]
        assert all(r > 0 for r in residuals)
        assert abs(decay_slope(ss, residuals) + 2.0) < 0.05


def test_ray_residual_needs_far_foot() -> None:
    with pytest.raises(DomainError):
        heis_ray_residual(1.0, HeisElement.of(KField.C, [0.1], 0j))
    with pytest.raises(DomainError):
        heis_ray_residual(-1.0, HeisElement.of(KField.C, [2.0], 0j))


@pytest.mark.parametrize(("kfield", "n"), SPACES)
def test_horosphere_scaling(rng: np.random.Generator, kfield: KField, n: int) -> None:
    for _ in range(20):
        g1 = random_heis_element(rng, kfield, n, min_norm=0.0)
        g2 = random_heis_element(rng, kfield, n, min_norm=0.0)
        t1 = float(rng.uniform(0.1, 1.0))
        t2 = t1 * float(rng.uniform(1.0, 10.0))
        assert horosphere_scaling_check(t1, t2, g1, g2, tol=1e-10)
    assert math.isclose(horosphere_dist(1.0, g1, g2), cygan_dist(g1, g2))
    with pytest.raises(DomainError):
        horosphere_scaling_check(2.0, 1.0, g1, g2)


@pytest.mark.parametrize("n", [2, 3])
def test_cayley_transform_roundtrip(rng: np.random.Generator, n: int) -> None:
    for _ in range(20):
        z = rng.uniform(-1.0, 1.0, (n, 4))
        z *= rng.uniform(0.05, 0.95) / np.linalg.norm(z)
        w0, w = ball_to_siegel(z)
        assert np.allclose(siegel_to_ball(w0, w), z, atol=1e-12)
