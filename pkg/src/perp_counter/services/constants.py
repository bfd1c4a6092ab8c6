"""Asymptotic coefficients of common perpendicular counts.

Each statement-level coefficient has a second, pipeline-level form built from the critical
exponent δ, the Ξ constant and the Bowen-Margulis mass. Both are exposed so that they can be
checked against each other.
"""

from __future__ import annotations

import math
from typing import Any

from ..arith.rings import Discriminant
from ..arith.zeta import zeta_K_2
from ..errors import DomainError
from ..geometry.xi import xi_constant, xi_real
from ..logging_config import get_logger
from ..models.base import KField, PairKind
from ..models.orbifold import OrbifoldData
from ..utils.numeric import gamma_half, sphere_volume

logger = get_logger(__name__)

MODULAR_VOLUME = math.pi / 3
# ‖σ⁺‖ of the orbit of i: half the length of the unit circle
MODULAR_POINT_SIGMA = math.pi
MODULAR_POINT_STABILIZER = 2


def critical_exponent(kfield: KField, n: int) -> int:
    """δ = d_𝕂(n + 1) − 2."""
    if n < 2:
        raise DomainError("n must be at least 2")
    return kfield.dim * (n + 1) - 2


def bm_mass(kfield: KField, n: int, volume: float) -> float:
    """Total Bowen-Margulis mass of a finite volume orbifold.

    Args:
        kfield: ℝ, ℂ or ℍ
        n: Dimension over 𝕂
        volume: Riemannian volume of the orbifold

    Returns:
        2^{n−1}·Vol(S^{n−1})·Vol(M) over ℝ, Vol(S^{nd−1})·Vol(M)/2^{d(n−1)} otherwise
    """
    if volume <= 0:
        raise DomainError("volume must be positive")
    if n < 2:
        raise DomainError("n must be at least 2")
    if kfield == KField.R:
        return 2.0 ** (n - 1) * sphere_volume(n - 1) * volume
    d = kfield.dim
    return sphere_volume(n * d - 1) * volume / 2.0 ** (d * (n - 1))


def bm_mass_gamma(kfield: KField, n: int, volume: float) -> float:
    """π^{nd/2}·Vol(M)/(2^{d(n−1)−1}·(nd/2 − 1)!) for 𝕂 ∈ {ℂ, ℍ}."""
    if kfield == KField.R:
        raise DomainError("the factorial form applies to complex and quaternionic spaces")
    d = kfield.dim
    return math.pi ** (n * d / 2) * volume / (2.0 ** (d * (n - 1) - 1) * math.factorial(n * d // 2 - 1))


def xi_for(kfield: KField, n: int) -> float:
    """Ξ of the universal cover, real or not."""
    return xi_real(n) if kfield == KField.R else xi_constant(kfield, n)


def _require_real(data: OrbifoldData) -> None:
    if data.kfield != KField.R:
        raise DomainError(f"real hyperbolic data expected, got {data.kfield.value}")


def convex_geodesic_coeff(data: OrbifoldData) -> float:
    """Coefficient of s·e^{(n−1)s} for a convex set against a divergent geodesic.

    Γ(n/2)·ι⁺·‖σ‖ / (2ⁿ·√π·Γ((n+1)/2)·m⁺·Vol M).
    """
    _require_real(data)
    n = data.n
    num = gamma_half(n) * data.iota_plus * data.sigma_mass
    den = 2.0**n * math.sqrt(math.pi) * gamma_half(n + 1) * data.m_plus * data.volume
    return num / den


def geodesic_pair_coeff(data: OrbifoldData) -> float:
    """Coefficient of s²·e^{(n−1)s} for two divergent geodesics.

    (n−1)·π^{n/2−1}·Γ(n/2)·ι⁻ι⁺ / (2^{n+1}·Γ((n+1)/2)²·m⁻m⁺·Vol M).
    """
    _require_real(data)
    n = data.n
    num = (n - 1) * math.pi ** (n / 2 - 1) * gamma_half(n) * data.iota_minus * data.iota_plus
    den = 2.0 ** (n + 1) * gamma_half(n + 1) ** 2 * data.m_minus * data.m_plus * data.volume
    return num / den


def single_geodesic_pipeline(data: OrbifoldData) -> float:
    """ι⁺‖σ‖Ξ/(2^δ·m⁺·‖m_BM‖), valid over ℝ, ℂ and ℍ."""
    delta = critical_exponent(data.kfield, data.n)
    xi = xi_for(data.kfield, data.n)
    mass = bm_mass(data.kfield, data.n, data.volume)
    return data.iota_plus * data.sigma_mass * xi / (2.0**delta * data.m_plus * mass)


def two_geodesics_pipeline(data: OrbifoldData) -> float:
    """δ·ι⁻ι⁺·Ξ²/(2^{2δ+1}·m⁻m⁺·‖m_BM‖), valid over ℝ, ℂ and ℍ."""
    delta = critical_exponent(data.kfield, data.n)
    xi = xi_for(data.kfield, data.n)
    mass = bm_mass(data.kfield, data.n, data.volume)
    num = delta * data.iota_minus * data.iota_plus * xi * xi
    return num / (2.0 ** (2 * delta + 1) * data.m_minus * data.m_plus * mass)


def _falling_product(kfield: KField, n: int) -> int:
    # ∏_{i=1}^{d/2} (nd/2 − i) = (nd/2 − 1)!/(d(n−1)/2 − 1)!
    d = kfield.dim
    return math.prod(n * d // 2 - i for i in range(1, d // 2 + 1))


def nonreal_coeffs(data: OrbifoldData) -> tuple[float, float]:
    """Coefficients of s·e^{δs} and s²·e^{δs} in complex and quaternionic orbifolds.

    Args:
        data: Orbifold data with ``kfield`` ℂ or ℍ

    Returns:
        The pair (convex set against a divergent geodesic, two divergent geodesics)
    """
    if data.kfield == KField.R:
        raise DomainError("complex or quaternionic data expected")
    n, d = data.n, data.kfield.dim
    delta = critical_exponent(data.kfield, n)
    prod = _falling_product(data.kfield, n)
    g = gamma_half(d - 1)
    first = prod * data.iota_plus * data.sigma_mass / (4.0 ** (d - 1) * math.sqrt(math.pi) * g * data.m_plus * data.volume)
    num = delta * math.pi ** (n * d / 2 - 1) * prod * data.iota_minus * data.iota_plus
    den = 2.0 ** (d * (n + 3) - 4) * g * g * math.factorial(d * (n - 1) // 2 - 1) * data.m_minus * data.m_plus * data.volume
    return first, num / den


def humbert_volume(disc: Discriminant, euler_cutoff: int | None = None) -> float:
    """Volume |D|^{3/2}·ζ_K(2)/(4π²) of the Bianchi orbifold PSL₂(O_K)\\ℍ³."""
    if disc.is_rational:
        raise DomainError("an imaginary quadratic discriminant is required")
    zeta = zeta_K_2(disc) if euler_cutoff is None else zeta_K_2(disc, euler_cutoff)
    return disc.abs_d**1.5 * zeta / (4.0 * math.pi**2)


def bianchi_data(disc: Discriminant, euler_cutoff: int | None = None) -> OrbifoldData:
    """Data of the vertical geodesic pair in the Bianchi orbifold of ``disc``."""
    half_units = disc.units_count / 2
    return OrbifoldData(
        kfield=KField.R,
        n=3,
        volume=humbert_volume(disc, euler_cutoff),
        m_minus=half_units,
        m_plus=half_units,
    )


def c_K(disc: Discriminant) -> float:
    """π³/(|O_K^×|²·|D|^{3/2}·ζ_K(2)), the s²e^{2s} coefficient for the vertical geodesic."""
    u = disc.units_count
    return math.pi**3 / (u * u * disc.abs_d**1.5 * zeta_K_2(disc))


def bianchi_quadruple_coeff(disc: Discriminant) -> float:
    """Coefficient of N²(ln N)² for the naive divisor-pair sum over |k| <= N, 32·c_K."""
    return 32.0 * c_K(disc)


def quadratic_divisor_coeff(disc: Discriminant) -> float:
    """Coefficient of X(ln X)² in Σ_{|x|² <= X} d_K(x)d_K(x+1), 8π³/(|D|^{3/2}ζ_K(2))."""
    return 8.0 * math.pi**3 / (disc.abs_d**1.5 * zeta_K_2(disc))


def ideal_divisor_coeff(disc: Discriminant) -> float:
    """Coefficient of X(ln X)² once divisors are counted up to units, quadratic_divisor_coeff/|O_K^×|²."""
    u = disc.units_count
    return quadratic_divisor_coeff(disc) / (u * u)


def modular_data(pair: PairKind) -> OrbifoldData:
    """Data of the modular orbifold for one of the counted pairs.

    The geodesics Δ and Δ₁ are reciprocal with trivial pointwise stabilizer. For pairs ending at
    the orbit of i, D⁻ is the point orbit and D⁺ the geodesic.
    """
    if pair in (PairKind.DI, PairKind.D1I):
        return OrbifoldData(kfield=KField.R, n=2, volume=MODULAR_VOLUME, sigma_mass=MODULAR_POINT_SIGMA)
    return OrbifoldData(kfield=KField.R, n=2, volume=MODULAR_VOLUME)


def modular_coefficient(pair: PairKind) -> tuple[float, int]:
    """Leading coefficient c and power k with Card Perp'(s) ~ c·s^k·e^s in the modular orbifold."""
    data = modular_data(pair)
    if pair in (PairKind.DI, PairKind.D1I):
        return convex_geodesic_coeff(data), 1
    return geodesic_pair_coeff(data), 2


def modular_main_term(pair: PairKind, s: float) -> float:
    """Predicted c·s^k·e^s for a modular pair."""
    coeff, power = modular_coefficient(pair)
    return coeff * s**power * math.exp(s)


def ambiguous_coeffs() -> tuple[float, float]:
    """Leading coefficients of ambiguous (s²e^{s/2}) and ambiguous reciprocal (s·e^{s/4}) counts.

    The geodesic-pair counts enter at s/2 with weights ½, ½ and 1; the point-orbit counts enter
    at s/4 with weights ½ and ½.
    """
    c_dd, _ = modular_coefficient(PairKind.DD)
    c_dd1, _ = modular_coefficient(PairKind.DD1)
    c_d1d1, _ = modular_coefficient(PairKind.D1D1)
    c_di, _ = modular_coefficient(PairKind.DI)
    c_d1i, _ = modular_coefficient(PairKind.D1I)
    ambiguous = (0.5 * c_dd + 0.5 * c_d1d1 + c_dd1) / 4.0
    reciprocal = (0.5 * c_di + 0.5 * c_d1i) / 4.0
    return ambiguous, reciprocal


def constants_table(kfield: KField, n: int, disc: Discriminant | None = None, volume: float = 1.0) -> dict[str, Any]:
    """Collect every coefficient available for (𝕂, n) and an optional discriminant.

    Args:
        kfield: ℝ, ℂ or ℍ
        n: Dimension over 𝕂
        disc: Imaginary quadratic discriminant for the Bianchi entries
        volume: Orbifold volume used in the generic entries

    Returns:
        Mapping from coefficient names to values
    """
    data = OrbifoldData(kfield=kfield, n=n, volume=volume)
    table: dict[str, Any] = {
        "kfield": kfield.value,
        "n": n,
        "delta": critical_exponent(kfield, n),
        "xi": xi_for(kfield, n),
        "bm_mass": bm_mass(kfield, n, volume),
        "volume": volume,
        "single_geodesic_pipeline": single_geodesic_pipeline(data),
        "two_geodesics_pipeline": two_geodesics_pipeline(data),
    }
    if kfield == KField.R:
        table["convex_geodesic"] = convex_geodesic_coeff(data)
        table["geodesic_pair"] = geodesic_pair_coeff(data)
    else:
        table["nonreal"] = list(nonreal_coeffs(data))
    if disc is not None and not disc.is_rational:
        table.update(
            {
                "disc": disc.D,
                "humbert_volume": humbert_volume(disc),
                "c_K": c_K(disc),
                "bianchi_quadruple": bianchi_quadruple_coeff(disc),
                "quadratic_divisor": quadratic_divisor_coeff(disc),
                "ideal_divisor": ideal_divisor_coeff(disc),
            }
        )
    logger.debug(f"constants table for {kfield.value} n={n}: {len(table)} entries")
    return table
