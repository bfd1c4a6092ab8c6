"""The Ξ constants of real, complex and quaternionic hyperbolic spaces, with Monte Carlo checks.

For 𝕂 ∈ {ℂ, ℍ} with a = d_𝕂(n−1) and b = d_𝕂 − 1, Ξ is the mass of the region
{(ζ, u) : |ζ|² + √(|ζ|⁴ + |u|²) <= 2} ⊂ ℝ^a × ℝ^b under the polar measure
|ζ|^{2−a}|u|^{2−b} dζ du. Its Lebesgue volume is a different number and is exposed separately.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..logging_config import get_logger
from ..models.base import KField
from ..utils.numeric import ball_volume, gamma_half, sphere_volume

logger = get_logger(__name__)

DEFAULT_SHARD_SIZE = 1_000_000


def _dims(kfield: KField, n: int) -> tuple[int, int]:
    if kfield == KField.R:
        raise DomainError("use xi_real for the real case")
    if n < 2:
        raise DomainError("n must be at least 2")
    d = kfield.dim
    return d * (n - 1), d - 1


def xi_constant(kfield: KField, n: int) -> float:
    """Ξ = 2π^{(nd−1)/2}/(Γ((d−1)/2)·(d(n−1)/2 − 1)!).

    Args:
        kfield: ℂ or ℍ
        n: Dimension, at least 2

    Returns:
        The Gamma form of Ξ
    """
    a, b = _dims(kfield, n)
    d = kfield.dim
    return 2.0 * math.pi ** ((n * d - 1) / 2) / (gamma_half(b) * math.factorial(a // 2 - 1))


def xi_constant_spheres(kfield: KField, n: int) -> float:
    """Ξ = ½·Vol(S^{d−2})·Vol(S^{d(n−1)−1})."""
    a, b = _dims(kfield, n)
    return 0.5 * sphere_volume(b - 1) * sphere_volume(a - 1)


def xi_real(n: int) -> float:
    """Ξ for real hyperbolic n-space, 2^{n−1}·Vol(𝔹_{n−1})."""
    if n < 2:
        raise DomainError("n must be at least 2")
    return 2.0 ** (n - 1) * ball_volume(n - 1)


def xi_real_gamma(n: int) -> float:
    """Ξ for real hyperbolic n-space, 2^{n−1}π^{(n−1)/2}/Γ((n+1)/2)."""
    if n < 2:
        raise DomainError("n must be at least 2")
    return 2.0 ** (n - 1) * math.pi ** ((n - 1) / 2) / gamma_half(n + 1)


def region_lebesgue_volume(kfield: KField, n: int) -> float:
    """Lebesgue volume of {|ζ|² + √(|ζ|⁴ + |u|²) <= 2}.

    The u-slice over |ζ| = r is a ball of radius 2√(1 − r²), which leaves a Beta integral.
    """
    a, b = _dims(kfield, n)
    beta = gamma_half(a) * gamma_half(b + 2) / gamma_half(a + b + 2)
    return sphere_volume(a - 1) * ball_volume(b) * 2.0**b * 0.5 * beta


@dataclass(frozen=True)
class MonteCarloResult:
    """Monte Carlo estimate with its standard error."""

    estimate: float
    std_error: float
    samples: int


def _unit_vectors(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    v = rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _polar_shard(a: int, b: int, seed: np.random.SeedSequence, count: int, stratum: tuple[float, float]) -> int:
    """Hits inside the region for one shard, radii drawn with density ∝ r on the ζ stratum."""
    rng = np.random.Generator(np.random.PCG64(seed))
    lo, hi = stratum
    # r² uniform on [lo, hi] and ρ² uniform on [0, 4]: density ∝ r dr · ρ dρ
    r = np.sqrt(rng.uniform(lo, hi, count))
    rho = 2.0 * np.sqrt(rng.uniform(0.0, 1.0, count))
    zeta = _unit_vectors(rng, count, a) * r[:, None]
    u = _unit_vectors(rng, count, b) * rho[:, None]
    z2 = np.einsum("ij,ij->i", zeta, zeta)
    un2 = np.einsum("ij,ij->i", u, u)
    return int(np.count_nonzero(z2 + np.sqrt(z2 * z2 + un2) <= 2.0))


def xi_monte_carlo(
    kfield: KField,
    n: int,
    samples: int = 10_000_000,
    seed: int = 20240607,
    strata: int = 10,
    threads: int = 1,
) -> MonteCarloResult:
    """Polar-measure mass of the Ξ region, stratified in |ζ|².

    Each stratum of |ζ|² gets an equal share of samples and derived seeds; strata are reduced
    in order, so the estimate does not depend on ``threads``.

    Args:
        kfield: ℂ or ℍ
        n: Dimension
        samples: Total sample count
        seed: Root seed
        strata: Number of |ζ|² strata on [0, 1]
        threads: Concurrent shards

    Returns:
        Estimate of Ξ with a standard error
    """
    a, b = _dims(kfield, n)
    per_stratum = max(1, samples // strata)
    jobs = []
    root = np.random.SeedSequence(seed)
    stratum_seeds = root.spawn(strata)
    for k, st_seed in enumerate(stratum_seeds):
        bounds = (k / strata, (k + 1) / strata)
        shard_count = max(1, math.ceil(per_stratum / DEFAULT_SHARD_SIZE))
        for i, shard_seed in enumerate(st_seed.spawn(shard_count)):
            size = min(DEFAULT_SHARD_SIZE, per_stratum - i * DEFAULT_SHARD_SIZE)
            jobs.append((k, shard_seed, size, bounds))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = list(pool.map(lambda job: _polar_shard(a, b, job[1], job[2], job[3]), jobs))
    else:
        hits = [_polar_shard(a, b, job[1], job[2], job[3]) for job in jobs]
    per_hits = [0] * strata
    per_count = [0] * strata
    for job, h in zip(jobs, hits, strict=True):
        per_hits[job[0]] += h
        per_count[job[0]] += job[2]
    # measure of one stratum box in (r², ρ²) coordinates, r dr ρ dρ = d(r²) d(ρ²)/4
    box = (1.0 / strata) * 4.0 / 4.0
    scale = sphere_volume(a - 1) * sphere_volume(b - 1) * box
    estimate = 0.0
    variance = 0.0
    for h, c in zip(per_hits, per_count, strict=True):
        frac = h / c
        estimate += scale * frac
        variance += scale * scale * frac * (1.0 - frac) / c
    logger.debug(f"xi_monte_carlo {kfield.value} n={n}: {sum(per_count)} samples, estimate {estimate!r}")
    return MonteCarloResult(estimate, math.sqrt(variance), sum(per_count))


def _lebesgue_shard(a: int, b: int, seed: np.random.SeedSequence, count: int) -> int:
    rng = np.random.Generator(np.random.PCG64(seed))
    zeta = rng.uniform(-1.0, 1.0, (count, a))
    u = rng.uniform(-2.0, 2.0, (count, b))
    z2 = np.einsum("ij,ij->i", zeta, zeta)
    un2 = np.einsum("ij,ij->i", u, u)
    return int(np.count_nonzero(z2 + np.sqrt(z2 * z2 + un2) <= 2.0))


def region_volume_monte_carlo(kfield: KField, n: int, samples: int = 1_000_000, seed: int = 20240607) -> MonteCarloResult:
    """Lebesgue volume of the Ξ region by uniform sampling of [−1, 1]^a × [−2, 2]^b."""
    a, b = _dims(kfield, n)
    shards = max(1, math.ceil(samples / DEFAULT_SHARD_SIZE))
    hits = 0
    total = 0
    for i, shard_seed in enumerate(np.random.SeedSequence(seed).spawn(shards)):
        size = min(DEFAULT_SHARD_SIZE, samples - i * DEFAULT_SHARD_SIZE)
        hits += _lebesgue_shard(a, b, shard_seed, size)
        total += size
    box = 2.0**a * 4.0**b
    frac = hits / total
    return MonteCarloResult(box * frac, box * math.sqrt(frac * (1.0 - frac) / total), total)
