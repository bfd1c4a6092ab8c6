"""Named consistency checks run by ``perpc verify`` and ``perpc heisenberg``.

Every check compares two independent computations and raises :class:`InvariantViolation` when
they disagree beyond the stated tolerance. On success it returns a plain dict for the report.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from ..arith.divisors import divisor_sum_rational
from ..arith.matrices import Mat2
from ..arith.rings import GAUSSIAN, Discriminant, QuadInt, elements_of_norm_at_most
from ..errors import DomainError, GeometryError, InvariantViolation
from ..geometry.heisenberg import (
    HeisElement,
    HsPoint,
    cygan_dist,
    cygan_mod_dist,
    heis_dilate,
    heis_mul,
    heis_ray_residual,
    horosphere_scaling_check,
)
from ..geometry.real import (
    GeodesicBP,
    complex_length_h3,
    complex_length_residual,
    perp_geometric_h3_matrix,
    ray_distance_residual,
)
from ..geometry.xi import xi_constant, xi_constant_spheres, xi_monte_carlo
from ..logging_config import get_logger
from ..models.base import KField, PairKind
from ..models.orbifold import OrbifoldData
from ..utils.numeric import Threshold, decay_slope
from .ambiguous import w_conjugation_test
from .constants import (
    ambiguous_coeffs,
    bianchi_data,
    bianchi_quadruple_coeff,
    c_K,
    convex_geodesic_coeff,
    geodesic_pair_coeff,
    ideal_divisor_coeff,
    modular_coefficient,
    nonreal_coeffs,
    quadratic_divisor_coeff,
    single_geodesic_pipeline,
    two_geodesics_pipeline,
)
from .perp_count import enumerate_delta_translates, naive_perp_count

logger = get_logger(__name__)

IDENTITY_TOL = 1e-9
CONSTANTS_TOL = 1e-12
SLOPE_TOL = 0.05
NAIVE_BRIDGE_LIMIT = 30

# Bianchi discriminants used by the constants cross-check
CHECK_DISCRIMINANTS = (-3, -4, -7, -8, -11)


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise InvariantViolation(message)


def divisor_bridge(max_bc: int, threads: int = 1) -> dict[str, Any]:
    """Translates of Δ with bc <= max_bc against Σ_{k<=max_bc} d(k)d(k+1).

    Small bounds are also checked against the naive search over bounded matrices.
    """
    enumerated = len(enumerate_delta_translates(max_bc, threads))
    divisor_sum = divisor_sum_rational(max_bc)
    _require(enumerated == divisor_sum, f"enumeration {enumerated} != divisor sum {divisor_sum}")
    result: dict[str, Any] = {
        "max_bc": max_bc,
        "enumeration": enumerated,
        "divisor_sum": divisor_sum,
        "paths_equal": True,
    }
    if max_bc <= NAIVE_BRIDGE_LIMIT:
        naive = naive_perp_count(PairKind.DD, Threshold.from_acosh(2 * max_bc + 1))
        _require(naive == divisor_sum, f"naive search {naive} != divisor sum {divisor_sum}")
        result["naive"] = naive
    return result


def random_bianchi_sl2(
    rng: np.random.Generator, disc: Discriminant = GAUSSIAN, letters: int = 6, radius: int = 3
) -> Mat2:
    """Random element of SL₂(O_K) with abcd ≠ 0, a product of S and translations of modulus at most ``radius``."""
    if disc.is_rational:
        raise DomainError("need an imaginary quadratic discriminant")
    steps = list(elements_of_norm_at_most(disc, radius * radius))
    one, zero = QuadInt(1, 0, disc), QuadInt(0, 0, disc)
    s = Mat2(zero, -one, one, zero)
    while True:
        m = Mat2.identity(one)
        for _ in range(letters):
            m = m @ Mat2(one, steps[int(rng.integers(len(steps)))], zero, one) @ s
        if all(m.entries()):
            return m


def complex_length_identity(
    samples: int = 100, seed: int = 20240607, disc: Discriminant = GAUSSIAN, letters: int = 4, radius: int = 2
) -> dict[str, Any]:
    """cosh λ + cos θ = 2|ad| for the perpendicular from ]0, ∞[ to ]γ·0, γ·∞[ in ℍ³.

    (λ, θ) come from the endpoint formula and, independently, from a geometric search over the
    semicircle built from exact entries. The search is held to an absolute error, so the samples
    are kept moderate in size.
    """
    rng = np.random.default_rng(seed)
    worst_identity = worst_oracle = worst_asymptotic = largest = 0.0
    checked = 0
    for _ in range(samples):
        gamma = random_bianchi_sl2(rng, disc, letters, radius)
        target = 2.0 * abs((gamma.a * gamma.d).to_complex())
        try:
            length, angle = complex_length_h3(GeodesicBP.vertical_axis().image(gamma))
        except GeometryError:
            continue
        oracle = perp_geometric_h3_matrix(gamma)
        worst_identity = max(worst_identity, abs(math.cosh(length) + math.cos(angle) - target) / max(1.0, target))
        worst_oracle = max(worst_oracle, abs(math.cosh(oracle.length) + math.cos(oracle.angle) - target))
        worst_asymptotic = max(worst_asymptotic, abs(complex_length_residual(length, angle)) * math.exp(length))
        largest = max(largest, target)
        checked += 1
    _require(checked > 0, "no sampled element had a common perpendicular with the axis")
    _require(worst_identity <= IDENTITY_TOL, f"identity error {worst_identity!r}")
    _require(worst_oracle <= IDENTITY_TOL, f"geometric oracle error {worst_oracle!r}")
    return {
        "disc": disc.D,
        "samples": checked,
        "max_target": largest,
        "max_identity_error": worst_identity,
        "max_oracle_error": worst_oracle,
        "max_scaled_residual": worst_asymptotic,
    }


def ray_expansion(a_values: tuple[float, ...] = (0.5, 1.0, 3.0), ts: tuple[float, ...] = (2.0, 4.0, 6.0, 8.0)) -> dict[str, Any]:
    """The residual of d(ℓ′(t), ℓ) ≈ t + ln a + ln 2 decays like e^{−2t}."""
    slopes = {}
    for a in a_values:
        residuals = [ray_distance_residual(a, t) for t in ts]
        slope = decay_slope(ts, residuals)
        _require(abs(slope + 2.0) <= SLOPE_TOL, f"decay slope {slope!r} at a={a}")
        slopes[str(a)] = slope
    return {"slopes": slopes}


def random_heis_element(
    rng: np.random.Generator, kfield: KField, n: int, min_norm: float = 1.0, min_zeta_sq: float = 0.0
) -> HeisElement:
    """Random Heisenberg element with Cygan norm at least ``min_norm`` and |ζ|² at least ``min_zeta_sq``."""
    d = kfield.dim
    ident = HeisElement.identity(kfield, n)
    while True:
        zeta = np.zeros((n - 1, 4))
        zeta[:, :d] = rng.uniform(-2.0, 2.0, (n - 1, d))
        u = np.zeros(4)
        u[1:d] = rng.uniform(-3.0, 3.0, d - 1)
        g = HeisElement(kfield, zeta, u)
        if cygan_dist(g, ident) >= min_norm and g.zeta_norm_sq() >= min_zeta_sq:
            return g


def heis_ray_expansion(
    kfield: KField = KField.C, n: int = 2, seed: int = 20240607, ss: tuple[float, ...] = (2.0, 4.0, 6.0, 8.0)
) -> dict[str, Any]:
    """Horospherical analogue of :func:`ray_expansion` for random feet."""
    if kfield == KField.R:
        raise DomainError("the Heisenberg check needs a complex or quaternionic space")
    rng = np.random.default_rng(seed)
    slopes = []
    for _ in range(5):
        g = random_heis_element(rng, kfield, n, min_zeta_sq=0.5)
        slope = decay_slope(ss, [heis_ray_residual(s, g) for s in ss])
        _require(abs(slope + 2.0) <= SLOPE_TOL, f"decay slope {slope!r}")
        slopes.append(slope)
    return {"kfield": kfield.value, "n": n, "slopes": slopes}


def cygan_invariance(kfield: KField = KField.C, n: int = 2, seed: int = 20240607, samples: int = 100) -> dict[str, Any]:
    """Left invariance and dilation homogeneity of both Cygan distances."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        g1, g2, h = (random_heis_element(rng, kfield, n, 0.0) for _ in range(3))
        lam = float(rng.uniform(0.5, 2.0))
        for dist in (cygan_dist, cygan_mod_dist):
            base = dist(g1, g2)
            worst = max(worst, abs(dist(heis_mul(h, g1), heis_mul(h, g2)) - base))
            p1 = heis_dilate(lam, HsPoint(kfield, g1.zeta, g1.u, 1.0)).element
            p2 = heis_dilate(lam, HsPoint(kfield, g2.zeta, g2.u, 1.0)).element
            worst = max(worst, abs(dist(p1, p2) - lam * base))
    _require(worst <= IDENTITY_TOL, f"Cygan invariance error {worst!r}")
    return {"kfield": kfield.value, "n": n, "samples": samples, "max_error": worst}


def horosphere_scaling(kfield: KField = KField.C, n: int = 2, seed: int = 20240607, samples: int = 100) -> dict[str, Any]:
    """d_{H_t1} = √(t2/t1)·d_{H_t2} on random pairs and heights."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        g1, g2 = random_heis_element(rng, kfield, n, 0.0), random_heis_element(rng, kfield, n, 0.0)
        t1, t2 = sorted(float(t) for t in rng.uniform(0.1, 10.0, 2))
        _require(horosphere_scaling_check(t1, t2, g1, g2), f"scaling fails at t1={t1!r}, t2={t2!r}")
    return {"kfield": kfield.value, "n": n, "samples": samples, "passed": True}


def xi_check(
    kfield: KField = KField.C, n: int = 2, samples: int = 10_000_000, seed: int = 20240607, threads: int = 1
) -> dict[str, Any]:
    """Both closed forms of Ξ and the Monte Carlo estimate of the region's mass."""
    closed = xi_constant(kfield, n)
    spheres = xi_constant_spheres(kfield, n)
    _require(abs(closed - spheres) <= CONSTANTS_TOL * closed, f"closed forms differ: {closed!r} vs {spheres!r}")
    mc = xi_monte_carlo(kfield, n, samples=samples, seed=seed, threads=threads)
    tolerance = max(0.01 * closed, 5.0 * mc.std_error)
    _require(abs(mc.estimate - closed) <= tolerance, f"Monte Carlo {mc.estimate!r} vs {closed!r}")
    return {
        "kfield": kfield.value,
        "n": n,
        "closed_form": closed,
        "sphere_form": spheres,
        "monte_carlo": mc.estimate,
        "std_error": mc.std_error,
        "samples": mc.samples,
    }


def _close(name: str, lhs: float, rhs: float, rows: list[dict[str, Any]]) -> None:
    error = abs(lhs - rhs) / max(1.0, abs(rhs))
    rows.append({"name": name, "statement": lhs, "pipeline": rhs, "error": error})
    _require(error <= CONSTANTS_TOL, f"{name}: {lhs!r} vs {rhs!r}")


def constants_cross_check() -> dict[str, Any]:
    """Statement coefficients against their pipeline forms and the modular and Bianchi values."""
    rows: list[dict[str, Any]] = []
    for kfield, dims in ((KField.R, range(2, 7)), (KField.C, range(2, 5)), (KField.H, range(2, 4))):
        for n in dims:
            data = OrbifoldData(kfield=kfield, n=n, volume=1.0)
            if kfield == KField.R:
                first, second = convex_geodesic_coeff(data), geodesic_pair_coeff(data)
            else:
                first, second = nonreal_coeffs(data)
            _close(f"{kfield.value}{n} geodesic-convex", first, single_geodesic_pipeline(data), rows)
            _close(f"{kfield.value}{n} geodesic-pair", second, two_geodesics_pipeline(data), rows)
    pi2 = math.pi**2
    _close("modular dd", modular_coefficient(PairKind.DD)[0], 3.0 / (2.0 * pi2), rows)
    _close("modular di", modular_coefficient(PairKind.DI)[0], 3.0 / (2.0 * math.pi), rows)
    amb, rec = ambiguous_coeffs()
    _close("ambiguous", amb, 3.0 / (4.0 * pi2), rows)
    _close("ambiguous reciprocal", rec, 3.0 / (8.0 * math.pi), rows)
    for value in CHECK_DISCRIMINANTS:
        disc = Discriminant(value)
        units = disc.units_count
        ck = c_K(disc)
        _close(f"D={value} c_K", geodesic_pair_coeff(bianchi_data(disc)), ck, rows)
        _close(f"D={value} quadruple", bianchi_quadruple_coeff(disc), 32.0 * ck, rows)
        _close(f"D={value} quadratic divisor", quadratic_divisor_coeff(disc), 8.0 * units * units * ck, rows)
        _close(f"D={value} ideal divisor", ideal_divisor_coeff(disc), 8.0 * ck, rows)
    return {"checked": len(rows), "rows": rows}


def reflection_identity(bound: int = 6) -> dict[str, Any]:
    """wγw = γ⁻¹ agrees with a = d, and w₁γw₁ = γ⁻¹ with a + b = d, on all γ with entries <= bound."""
    checked = 0
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                for d in range(-bound, bound + 1):
                    if a * d - b * c != 1:
                        continue
                    first, second = w_conjugation_test(Mat2(a, b, c, d))
                    _require(first == (a == d), f"first-kind test disagrees at {(a, b, c, d)}")
                    _require(second == (a + b == d), f"second-kind test disagrees at {(a, b, c, d)}")
                    checked += 1
    return {"bound": bound, "checked": checked}


CHECKS = {
    "divisor-bridge": divisor_bridge,
    "complex-length": complex_length_identity,
    "ray": ray_expansion,
    "heis-ray": heis_ray_expansion,
    "xi": xi_check,
    "constants": constants_cross_check,
    "reflections": reflection_identity,
}
