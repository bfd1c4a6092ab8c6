"""Counting common perpendiculars in the modular orbifold and in Bianchi orbifolds.

The base sets of the modular orbifold are the geodesic Δ = ]0, ∞[, the geodesic Δ₁ = ]0, 2[ and
the orbit of i. Every modular count has two independent paths: a closed divisor sum evaluated on a
sieve, and an enumeration building each group element from divisor pairs. Small thresholds can also
be checked against a naive search over all matrices with bounded entries.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..arith.divisors import (
    DEFAULT_BAND_BYTES,
    divisor_sum_quadratic,
    divisor_sum_rational,
    divisors_from_spf,
    divisors_of,
    element_divisors,
    ideal_divisor_sum,
    sieve_d,
    smallest_prime_factors,
    square_plus_divisor_counts,
)
from ..arith.matrices import Mat2, ProjPoint, mobius_apply
from ..arith.rings import GAUSSIAN, Discriminant, QuadInt, elements_of_norm_at_most, units
from ..errors import DomainError, GeometryError, InvariantViolation
from ..geometry.real import GeodesicBP, perp_cosh_exact
from ..logging_config import get_logger
from ..models.base import PairKind
from ..models.report import CountReport
from ..utils.numeric import Threshold, acosh_stable, sqrt_fraction
from .constants import bianchi_quadruple_coeff, c_K, modular_coefficient, modular_main_term

logger = get_logger(__name__)

DELTA = GeodesicBP.vertical_axis()
DELTA1 = GeodesicBP.between(0, 2)
# Reflections in Δ and Δ₁ (determinant −1)
W = Mat2(-1, 0, 0, 1)
W1 = Mat2(1, 0, 1, -1)
# Half-turns generating the stabilizers of Δ and Δ₁
IOTA = Mat2(0, -1, 1, 0)
SIGMA = Mat2(-1, 2, -1, 1)

# Second-order coefficient of Σ_{k<=n} d(k)d(k+1) in n·ln n
A1_RATIONAL = 1.574
# Second-order coefficient of the Gaussian ideal divisor sum in N²·ln N
A1_GAUSSIAN = 8.37

# Largest outer index for which the enumeration path runs by default
ENUMERATION_LIMIT = 5_000
POINT_ENUMERATION_LIMIT = 2_000


def _as_threshold(s: Threshold | float) -> Threshold:
    return s if isinstance(s, Threshold) else Threshold.from_real(s)


@dataclass(frozen=True)
class PerpRecord:
    """One common perpendicular, given by the group element that carries the second set.

    For pairs ending at the orbit of i the element is the half-turn about the orbit point.
    """

    gamma: Mat2
    cosh_sq: Fraction
    length: float
    foot_height: float
    angle: float = 0.0

    def __post_init__(self) -> None:
        if not self.length > 0.0:
            raise DomainError(f"perpendicular of {self.gamma!r} has no positive length")

    @property
    def cosh_exact(self) -> Fraction | None:
        """cosh λ when it is rational."""
        return sqrt_fraction(self.cosh_sq)

    @classmethod
    def from_cosh_sq(cls, gamma: Mat2, cosh_sq: Fraction | int, foot_height: float) -> PerpRecord:
        """Record with a rational cosh² λ."""
        value = Fraction(cosh_sq)
        return cls(gamma, value, acosh_stable(math.sqrt(value)), foot_height)


# --- sharding ------------------------------------------------------------------------------------


def _shards(lo: int, hi: int, threads: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into contiguous ranges."""
    if hi < lo:
        return []
    count = max(1, min(4 * threads, hi - lo + 1))
    step = -(-(hi - lo + 1) // count)
    return [(start, min(start + step - 1, hi)) for start in range(lo, hi + 1, step)]


def _run_sharded(worker: Callable[[int, int], list[PerpRecord]], lo: int, hi: int, threads: int) -> list[PerpRecord]:
    shards = _shards(lo, hi, threads)
    if threads > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda shard: worker(*shard), shards))
    else:
        parts = [worker(a, b) for a, b in shards]
    # merge in shard order
    return [record for part in parts for record in part]


# --- Δ → Δ ---------------------------------------------------------------------------------------


def enumerate_delta_translates(max_bc: int, threads: int = 1) -> list[PerpRecord]:
    """Translates γΔ in the right half-plane with cosh λ = 1 + 2bc, one per positive quadruple.

    The quadruples (a, b, c, d) with ad − bc = 1 and bc = k come from the divisor pairs
    b·c = k and a·d = k + 1.

    Args:
        max_bc: Largest k = bc
        threads: Concurrent shards over k

    Returns:
        One record per quadruple, ordered by k
    """
    if max_bc < 1:
        raise DomainError("max_bc must be at least 1")
    return _delta_delta_records(max_bc, threads)


def _delta_delta_records(bound: int, threads: int) -> list[PerpRecord]:
    if bound < 1:
        return []
    spf = smallest_prime_factors(bound + 1)

    def worker(lo: int, hi: int) -> list[PerpRecord]:
        out: list[PerpRecord] = []
        for k in range(lo, hi + 1):
            cosh = 1 + 2 * k
            cosh_sq = Fraction(cosh * cosh)
            length = acosh_stable(float(cosh))
            right = divisors_from_spf(k + 1, spf)
            for b in divisors_from_spf(k, spf):
                c = k // b
                for a in right:
                    d = (k + 1) // a
                    out.append(PerpRecord(Mat2(a, b, c, d), cosh_sq, length, math.sqrt(a * b / (c * d))))
        return out

    return _run_sharded(worker, 1, bound, threads)


def _delta_delta_sum(bound: int) -> int:
    return divisor_sum_rational(bound) if bound >= 1 else 0


# --- Δ → Δ₁ --------------------------------------------------------------------------------------


def _odd_divisor_counts(counts: np.ndarray) -> np.ndarray:
    """Number of odd divisors, d(n)/(v₂(n) + 1), from a divisor table."""
    n = np.arange(counts.size, dtype=np.int64)
    n[0] = 1
    v2 = np.rint(np.log2(n & -n)).astype(np.int64)
    return counts.astype(np.int64) // (v2 + 1)


def _delta_delta1_sum(bound: int) -> int:
    """Σ_{n<=bound odd} d(n)d(n+2) + 2·Σ_{n<=bound even} d_odd(n)d_odd(n+2)."""
    if bound < 1:
        return 0
    counts = sieve_d(bound + 2).counts.astype(np.int64)
    odd = _odd_divisor_counts(counts)
    both = counts[1 : bound + 1] * counts[3 : bound + 3]
    odd_only = odd[1 : bound + 1] * odd[3 : bound + 3]
    return int(both[0::2].sum()) + 2 * int(odd_only[1::2].sum())


def enumerate_delta_delta1(bound: int, threads: int = 1) -> list[PerpRecord]:
    """Translates γΔ₁ in the right half-plane with cosh λ = 1 + n for 1 <= n <= bound.

    With w = 2c + d, the translate ]b/d, (2a + b)/w[ has cosh λ = 1 + bw. Each translate has one
    representative with b, d, w > 0; it satisfies w ≡ d (mod 2) and d | 2 + bw.

    Args:
        bound: Largest n = bw
        threads: Concurrent shards over n

    Returns:
        One record per translate
    """
    if bound < 1:
        return []
    spf = smallest_prime_factors(bound + 2)

    def worker(lo: int, hi: int) -> list[PerpRecord]:
        out: list[PerpRecord] = []
        for n in range(lo, hi + 1):
            length = acosh_stable(float(1 + n))
            cosh_sq = Fraction((1 + n) ** 2)
            shifted = divisors_from_spf(n + 2, spf)
            for b in divisors_from_spf(n, spf):
                w = n // b
                for d in shifted:
                    if (w - d) % 2:
                        continue
                    c = (w - d) // 2
                    num = 1 + b * c
                    if num % d:
                        continue
                    a = num // d
                    foot = math.sqrt(b / d * (2 * a + b) / w)
                    out.append(PerpRecord(Mat2(a, b, c, d), cosh_sq, length, foot))
        return out

    return _run_sharded(worker, 1, bound, threads)


# --- Δ₁ → Δ₁ -------------------------------------------------------------------------------------


def _delta1_delta1_sum(bound: int) -> int:
    """Closed divisor sum over the conjugated quadruples with βκ = m <= bound.

    Odd m contribute d(m)d(m+4). Even m force m = 4m′ with m′ ≡ 3 (mod 4), contributing
    d(m′)d((m′+1)/4), or m′ ≡ 0 (mod 4), contributing d(m′+1)d(m′/4).
    """
    if bound < 1:
        return 0
    counts = sieve_d(bound + 4).counts.astype(np.int64)
    total = int((counts[1 : bound + 1 : 2] * counts[5 : bound + 5 : 2]).sum())
    quarter = bound // 4
    threes = np.arange(3, quarter + 1, 4, dtype=np.int64)
    fours = np.arange(4, quarter + 1, 4, dtype=np.int64)
    total += int((counts[threes] * counts[(threes + 1) // 4]).sum())
    total += int((counts[fours + 1] * counts[fours // 4]).sum())
    return total


def enumerate_delta1_delta1(bound: int, threads: int = 1) -> list[PerpRecord]:
    """Translates γΔ₁ disjoint from Δ₁, one per class modulo the half-turn σ = (−1 2; −1 1).

    Conjugating by h = (2 0; 1 1), which sends Δ to Δ₁, turns γ into the determinant-4 matrix
    (α β; κ δ′) = (2a+b, b; 4c+2d−2a−b, 2d−b) with cosh λ = 1 + βκ/2. The records are the positive
    quadruples with βκ = m, αδ′ = m + 4 that come back to integer matrices.

    Args:
        bound: Largest m = βκ
        threads: Concurrent shards over m

    Returns:
        One record per class
    """
    if bound < 1:
        return []
    spf = smallest_prime_factors(bound + 4)

    def worker(lo: int, hi: int) -> list[PerpRecord]:
        out: list[PerpRecord] = []
        for m in range(lo, hi + 1):
            cosh = Fraction(m + 2, 2)
            length = acosh_stable(float(cosh))
            shifted = divisors_from_spf(m + 4, spf)
            for beta in divisors_from_spf(m, spf):
                kappa = m // beta
                for alpha in shifted:
                    delta = (m + 4) // alpha
                    if (alpha - beta) % 2 or (delta - beta) % 2 or (kappa + alpha - delta - beta) % 4:
                        continue
                    gamma = Mat2((alpha - beta) // 2, beta, (kappa + alpha - delta - beta) // 4, (delta + beta) // 2)
                    height = math.sqrt(beta / delta * alpha / kappa)
                    out.append(PerpRecord(gamma, cosh * cosh, length, 2.0 * height / (height * height + 1.0)))
        return out

    return _run_sharded(worker, 1, bound, threads)


# --- Δ → Γ·i -------------------------------------------------------------------------------------


def _half_turn(r: int, q: int) -> Mat2:
    """Half-turn (r, −(r²+1)/q; q, −r) about the orbit point (r + i)/q."""
    return Mat2(r, -(r * r + 1) // q, q, -r)


def _delta_iorbit_sum(bound: int) -> int:
    """Σ_{1<=r<=bound} d(r² + 1)."""
    if bound < 1:
        return 0
    return int(square_plus_divisor_counts(bound, 1)[1:].sum())


def enumerate_delta_iorbit(bound: int, threads: int = 1) -> list[PerpRecord]:
    """Orbit points z = (r + i)/q with q | r² + 1 and 1 <= r <= bound.

    The distance from z to Δ satisfies cosh² = r² + 1; ι: z ↦ −1/z flips the sign of r.

    Args:
        bound: Largest r
        threads: Concurrent shards over r

    Returns:
        One record per point, carrying the half-turn about it
    """
    if bound < 1:
        return []

    def worker(lo: int, hi: int) -> list[PerpRecord]:
        out: list[PerpRecord] = []
        for r in range(lo, hi + 1):
            value = r * r + 1
            for q in divisors_of(value):
                out.append(PerpRecord.from_cosh_sq(_half_turn(r, q), value, math.sqrt(value) / q))
        return out

    return _run_sharded(worker, 1, bound, threads)


# --- Δ₁ → Γ·i ------------------------------------------------------------------------------------


def _delta1_iorbit_sum(bound: int) -> int:
    """Σ_{R<=bound odd} d(R² + 4) + Σ_{u<=bound/2 even} d(u² + 1).

    Points with even R = q′ − 2r exist only when 4 | R, and then q′ ranges over the odd divisors
    of (R/2)² + 1.
    """
    if bound < 1:
        return 0
    total = int(square_plus_divisor_counts(bound, 4)[1::2].sum())
    half = bound // 2
    if half >= 2:
        total += int(square_plus_divisor_counts(half, 1)[2::2].sum())
    return total


def enumerate_delta1_iorbit(bound: int, threads: int = 1) -> list[PerpRecord]:
    """Orbit points outside the half-circle Δ₁, one per class modulo σ.

    For z = (r + i)/q with q·q′ = r² + 1, sinh of the distance to Δ₁ is |q′ − 2r|/2. The points
    with R = q′ − 2r come from the divisors t = q′ of R² + 4 with t ≡ R (mod 2) and t | r² + 1,
    where r = (t − R)/2.

    Args:
        bound: Largest R
        threads: Concurrent shards over R

    Returns:
        One record per point, carrying the half-turn about it
    """
    if bound < 1:
        return []

    def worker(lo: int, hi: int) -> list[PerpRecord]:
        out: list[PerpRecord] = []
        for big_r in range(lo, hi + 1):
            cosh_sq = Fraction(big_r * big_r + 4, 4)
            for t in divisors_of(big_r * big_r + 4):
                if (t - big_r) % 2:
                    continue
                r = (t - big_r) // 2
                value = r * r + 1
                if value % t:
                    continue
                q = value // t
                out.append(PerpRecord.from_cosh_sq(_half_turn(r, q), cosh_sq, 1.0 / math.sqrt((r - q) ** 2 + 1)))
        return out

    return _run_sharded(worker, 1, bound, threads)


# --- shared driver -------------------------------------------------------------------------------


def doubled_element(pair: PairKind, gamma: Mat2) -> Mat2:
    """Hyperbolic element translating along the perpendicular by twice its length.

    For geodesic pairs this is the product of the reflections in the two geodesics; for pairs
    ending at the orbit of i it is the square of the half-turn composed with the reflection.
    """
    match pair:
        case PairKind.DD:
            return gamma @ W @ gamma.inverse() @ W
        case PairKind.DD1:
            return gamma @ W1 @ gamma.inverse() @ W
        case PairKind.D1D1:
            return gamma @ W1 @ gamma.inverse() @ W1
        case PairKind.DI:
            return (gamma @ W).power(2)
        case PairKind.D1I:
            return (gamma @ W1).power(2)
    raise DomainError(f"unknown pair {pair!r}")


def _count_pair(
    pair: PairKind,
    threshold: Threshold,
    bound: int,
    closed_form: Callable[[int], int],
    enumerate_fn: Callable[[int, int], list[PerpRecord]],
    limit: int,
    primitive: bool,
    threads: int,
    check: bool,
) -> CountReport:
    from .ambiguous import is_proper_power

    count = closed_form(bound)
    extra: dict[str, object] = {"bound": bound, "threshold": str(threshold), "paths_checked": False}
    if primitive or (check and bound <= limit):
        if bound > limit:
            logger.warning(f"{pair.value}: enumerating up to {bound} for the primitive filter")
        records = enumerate_fn(bound, threads)
        if check:
            if len(records) != count:
                raise InvariantViolation(f"{pair.value}: divisor sum gives {count}, enumeration gives {len(records)}")
            extra["paths_checked"] = True
        if primitive:
            kept = sum(1 for rec in records if not is_proper_power(doubled_element(pair, rec.gamma)))
            extra["non_primitive"] = len(records) - kept
            count = kept
    elif check:
        logger.debug(f"{pair.value}: bound {bound} above {limit}, enumeration check skipped")
    extra["primitive"] = primitive
    s = threshold.s
    second_order = None
    if pair == PairKind.DD:
        coeff, _ = modular_coefficient(pair)
        second_order = (coeff * s * s + delta_delta_b1() * s) * math.exp(s)
    logger.debug(f"{pair.value}: s={s!r} bound={bound} count={count}")
    return CountReport.build(pair.value, s, count, modular_main_term(pair, s), second_order=second_order, extra=extra)


def delta_delta_b1() -> float:
    """Coefficient of s·e^s in the Δ → Δ count, A1/4 − 6·ln 2/π²."""
    return A1_RATIONAL / 4.0 - 6.0 * math.log(2.0) / math.pi**2


def count_perp_delta_delta(
    s: Threshold | float, primitive: bool = False, threads: int = 1, check: bool = True
) -> CountReport:
    """Common perpendiculars from Δ to its translates with length at most s.

    Args:
        s: Length bound
        primitive: Drop perpendiculars whose doubled element is a proper power
        threads: Concurrent shards for the enumeration path
        check: Compare the divisor sum with the enumeration when the bound is small

    Returns:
        The count against 3/(2π²)·s²eˢ, with the s·eˢ correction as second order
    """
    threshold = _as_threshold(s)
    bound = (threshold.floor_cosh() - 1) // 2
    return _count_pair(
        PairKind.DD, threshold, bound, _delta_delta_sum, _delta_delta_records, ENUMERATION_LIMIT, primitive, threads, check
    )


def count_perp_delta_delta1(
    s: Threshold | float, primitive: bool = False, threads: int = 1, check: bool = True
) -> CountReport:
    """Common perpendiculars from Δ to the translates of Δ₁ with length at most s."""
    threshold = _as_threshold(s)
    bound = threshold.floor_cosh() - 1
    return _count_pair(
        PairKind.DD1, threshold, bound, _delta_delta1_sum, enumerate_delta_delta1, ENUMERATION_LIMIT, primitive, threads, check
    )


def count_perp_delta1_delta1(
    s: Threshold | float, primitive: bool = False, threads: int = 1, check: bool = True
) -> CountReport:
    """Common perpendiculars from Δ₁ to its translates with length at most s."""
    threshold = _as_threshold(s)
    bound = threshold.floor_scaled_cosh(2) - 2
    return _count_pair(
        PairKind.D1D1,
        threshold,
        bound,
        _delta1_delta1_sum,
        enumerate_delta1_delta1,
        ENUMERATION_LIMIT,
        primitive,
        threads,
        check,
    )


def count_perp_delta_iorbit(
    s: Threshold | float, primitive: bool = False, threads: int = 1, check: bool = True
) -> CountReport:
    """Orbit points of i at distance in (0, s] from Δ, modulo ι.

    Returns:
        The count against 3/(2π)·s·eˢ
    """
    threshold = _as_threshold(s)
    bound = math.isqrt(threshold.floor_cosh_sq() - 1)
    return _count_pair(
        PairKind.DI, threshold, bound, _delta_iorbit_sum, enumerate_delta_iorbit, POINT_ENUMERATION_LIMIT, primitive, threads, check
    )


def count_perp_delta1_iorbit(
    s: Threshold | float, primitive: bool = False, threads: int = 1, check: bool = True
) -> CountReport:
    """Orbit points of i at distance in (0, s] from Δ₁, modulo σ."""
    threshold = _as_threshold(s)
    bound = math.isqrt(threshold.floor_scaled_cosh_sq(4) - 4)
    return _count_pair(
        PairKind.D1I,
        threshold,
        bound,
        _delta1_iorbit_sum,
        enumerate_delta1_iorbit,
        POINT_ENUMERATION_LIMIT,
        primitive,
        threads,
        check,
    )


_COUNTERS: dict[PairKind, Callable[..., CountReport]] = {
    PairKind.DD: count_perp_delta_delta,
    PairKind.DD1: count_perp_delta_delta1,
    PairKind.D1D1: count_perp_delta1_delta1,
    PairKind.DI: count_perp_delta_iorbit,
    PairKind.D1I: count_perp_delta1_iorbit,
}


def count_perp(pair: PairKind, s: Threshold | float, **kwargs: bool | int) -> CountReport:
    """Dispatch to the counter of ``pair``."""
    return _COUNTERS[pair](s, **kwargs)


# --- naive oracle --------------------------------------------------------------------------------


def _egcd(p: int, q: int) -> tuple[int, int, int]:
    """(g, x, y) with p·x + q·y = g = gcd(p, q) >= 0."""
    old_r, r = p, q
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_x, x = x, old_x - quo * x
        old_y, y = y, old_y - quo * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _param_range(base: int, step: int, bound: int) -> tuple[float, float]:
    """Range of t with |base + t·step| <= bound."""
    if step == 0:
        return (-math.inf, math.inf) if abs(base) <= bound else (1, 0)
    if step < 0:
        base, step = -base, -step
    return -((bound + base) // step), (bound - base) // step


def sl2_box(bound: int) -> Iterator[Mat2]:
    """Every integer matrix of determinant one with entries of absolute value at most bound.

    Walks the coprime bottom rows (c, d) and the line of top rows a·d − b·c = 1 above each.
    """
    for c in range(-bound, bound + 1):
        for d in range(-bound, bound + 1):
            if math.gcd(c, d) != 1:
                continue
            _, a0, b0 = _egcd(d, -c)
            lo_a, hi_a = _param_range(a0, c, bound)
            lo_b, hi_b = _param_range(b0, d, bound)
            for t in range(int(max(lo_a, lo_b)), int(min(hi_a, hi_b)) + 1):
                yield Mat2(a0 + t * c, b0 + t * d, c, d)


_GEODESIC_PAIRS: dict[PairKind, tuple[GeodesicBP, GeodesicBP, Mat2]] = {
    PairKind.DD: (DELTA, DELTA, IOTA),
    PairKind.DD1: (DELTA, DELTA1, IOTA),
    PairKind.D1D1: (DELTA1, DELTA1, SIGMA),
}


def pair_geodesics(pair: PairKind) -> tuple[GeodesicBP, GeodesicBP]:
    """(base, target) geodesics of a geodesic pair; records carry the target onto a translate."""
    if pair not in _GEODESIC_PAIRS:
        raise DomainError(f"{pair.value} does not end at a geodesic")
    base, target, _ = _GEODESIC_PAIRS[pair]
    return base, target


def _orbit_point(g: Mat2) -> tuple[int, int]:
    """(r, q) with g·i = (r + i)/q."""
    a, b, c, d = g.entries()
    return a * c + b * d, c * c + d * d  # type: ignore[return-value]


def _point_cosh_sq(pair: PairKind, r: int, q: int) -> Fraction:
    re, im = Fraction(r, q), Fraction(1, q)
    if pair == PairKind.DI:
        return (re * re + im * im) / (im * im)
    sinh = abs((re - 1) ** 2 + im * im - 1) / (2 * im)
    return 1 + sinh * sinh


def naive_perp_count(pair: PairKind, s: Threshold | float) -> int:
    """Count by brute force over all matrices with entries below a certified bound.

    Translates (or orbit points) are collected as sets, their exact distance to the base set is
    compared with the threshold, and classes modulo the stabilizer of the base set are counted.

    Args:
        pair: Counted pair
        s: Length bound, meant to be small

    Returns:
        The count
    """
    threshold = _as_threshold(s)
    keys: set[frozenset] = set()
    if pair in _GEODESIC_PAIRS:
        base, target, stabilizer = _GEODESIC_PAIRS[pair]
        bound = threshold.floor_scaled_cosh(2) + 2 if pair == PairKind.D1D1 else threshold.floor_cosh() + 2
        for g in sl2_box(bound):
            image = target.image(g)
            try:
                cosh = perp_cosh_exact(base, image)
            except GeometryError:
                continue
            if not threshold.admits_cosh(cosh):
                continue
            ends = frozenset((image.p, image.q))
            moved = frozenset(mobius_apply(stabilizer, point) for point in ends)
            keys.add(frozenset((ends, moved)))
        return len(keys)
    if pair == PairKind.DI:
        stabilizer, bound = IOTA, threshold.floor_cosh() + 1
    else:
        stabilizer, bound = SIGMA, math.isqrt(threshold.floor_scaled_cosh_sq(4) - 4) + 2
    for g in sl2_box(bound):
        r, q = _orbit_point(g)
        cosh_sq = _point_cosh_sq(pair, r, q)
        if cosh_sq == 1 or not threshold.admits_cosh_sq(cosh_sq):
            continue
        keys.add(frozenset(((r, q), _orbit_point(stabilizer @ g))))
    return len(keys)


# --- Bianchi orbifolds ---------------------------------------------------------------------------


def bianchi_count(
    disc: Discriminant, N: int, band_bytes: int = DEFAULT_BAND_BYTES, threads: int = 1
) -> CountReport:
    """Σ_{k ≠ 0, 1, N(k) <= N²} d_K(k)·d_K(k − 1), the quadruple count of the vertical geodesic.

    The report's main term is 32π³/(|D|^{3/2}ζ_K(2))·N²(ln N)²; ``extra`` carries the chain from
    the raw sum to divisor classes (÷|O_K^×|²) and to double cosets (÷2), and R(N).

    Args:
        disc: Imaginary quadratic discriminant
        N: Radius, at least 2
        band_bytes: Memory bound for one sieve band
        threads: Concurrent bands

    Returns:
        The report, with the A₁ second-order term for the Gaussian integers
    """
    raw = divisor_sum_quadratic(disc, N, shift=-1, band_bytes=band_bytes, threads=threads)
    u2 = disc.units_count**2
    ideal = raw // u2
    log_n = math.log(N)
    ideal_main = bianchi_quadruple_coeff(disc) * N * N * log_n * log_n
    second_order = None
    if disc == GAUSSIAN:
        second_order = (ideal_main + A1_GAUSSIAN * N * N * log_n) * u2
    extra = {
        "disc": disc.D,
        "units": disc.units_count,
        "ideal": ideal,
        "double_cosets": ideal / 2,
        "R": ideal / ideal_main,
        "c_K": c_K(disc),
    }
    logger.info(f"bianchi {disc} N={N}: raw={raw} R={extra['R']:.6f}")
    return CountReport.build("bianchi", N, raw, ideal_main * u2, param_name="N", second_order=second_order, extra=extra)


def bianchi_quadruples(disc: Discriminant, N: int) -> Iterator[Mat2]:
    """Matrices (a b; c d) over O_K with ad = k, bc = k − 1, k ≠ 0, 1 and N(k) <= N²."""
    one = QuadInt(1, 0, disc)
    for k in elements_of_norm_at_most(disc, N * N):
        km1 = k - one
        if not k or not km1:
            continue
        right = element_divisors(km1)
        for a in element_divisors(k):
            d = k.exact_div(a)
            for b in right:
                yield Mat2(a, b, km1.exact_div(b), d)


def quadruple_count_oracle(disc: Discriminant, N: int) -> int:
    """Quadruple count from explicit factorizations of k and k − 1."""
    one = QuadInt(1, 0, disc)
    total = 0
    for k in elements_of_norm_at_most(disc, N * N):
        km1 = k - one
        if k and km1:
            total += len(element_divisors(k)) * len(element_divisors(km1))
    return total


def _delta_stabilizer(disc: Discriminant) -> list[Mat2]:
    """diag(u, u⁻¹) and (0 u; −u⁻¹ 0) for every unit u."""
    zero = QuadInt(0, 0, disc)
    group = []
    for u in units(disc):
        group.append(Mat2(u, zero, zero, u.conj()))
        group.append(Mat2(zero, u, -u.conj(), zero))
    return group


def _quad_key(m: Mat2) -> tuple[tuple[int, int], ...]:
    return tuple((e.x, e.y) for e in m.entries())  # type: ignore[union-attr]


def double_coset_chain(disc: Discriminant, N: int) -> CountReport:
    """Reduce the quadruples of radius N to orbits of the stabilizer of Δ acting on both sides.

    Generic orbits have 2·|O_K^×|² members. Orbits that leave the disk N(ad) <= N² are partial.

    Args:
        disc: Imaginary quadratic discriminant
        N: Small radius

    Returns:
        Orbit count against raw/(2|O_K^×|²), with full/partial and degenerate orbit counts
    """
    quads = {_quad_key(m): m for m in bianchi_quadruples(disc, N)}
    group = _delta_stabilizer(disc)
    generic = 2 * disc.units_count**2
    seen: set[tuple[tuple[int, int], ...]] = set()
    orbits = full = degenerate = members = 0
    for key, m in quads.items():
        if key in seen:
            continue
        images = {_quad_key(g @ m @ h) for g in group for h in group}
        inside = images & quads.keys()
        seen |= inside
        members += len(inside)
        orbits += 1
        full += inside == images
        degenerate += len(images) < generic
    if members != len(quads):
        raise InvariantViolation(f"orbits cover {members} of {len(quads)} quadruples")
    extra = {
        "disc": disc.D,
        "raw": len(quads),
        "generic_orbit_size": generic,
        "full_orbits": full,
        "partial_orbits": orbits - full,
        "degenerate_orbits": degenerate,
    }
    return CountReport.build("bianchi-double-coset", N, orbits, len(quads) / generic, param_name="N", extra=extra)


# --- ratio reports and fits ----------------------------------------------------------------------


def ratio_reports(
    n: int = 10**6, radii: Sequence[int] = (2000,), disc: Discriminant = GAUSSIAN, band_bytes: int = DEFAULT_BAND_BYTES
) -> list[CountReport]:
    """Ratios of the divisor sums to their predicted growth.

    Produces Σ_{k<=n} d(k)d(k+1) against (6/π²)n·ln²n and against the same plus A1·n·ln n, then
    for each radius the ideal divisor sum against 32c_K·N²ln²N, and for the Gaussian integers
    against the same plus 8.37·N²·ln N.

    Args:
        n: Rational summation bound
        radii: Radii of the quadratic sums
        disc: Imaginary quadratic discriminant
        band_bytes: Memory bound for one sieve band

    Returns:
        The reports, in that order
    """
    rational = divisor_sum_rational(n)
    log_n = math.log(n)
    main = 6.0 / math.pi**2 * n * log_n * log_n
    reports = [
        CountReport.build("rational", n, rational, main, param_name="n"),
        CountReport.build("rational-second-order", n, rational, main + A1_RATIONAL * n * log_n, param_name="n"),
    ]
    coeff = bianchi_quadruple_coeff(disc)
    for radius in radii:
        ideal = ideal_divisor_sum(disc, radius, band_bytes=band_bytes)
        log_r = math.log(radius)
        ideal_main = coeff * radius * radius * log_r * log_r
        reports.append(CountReport.build(f"ideal {disc}", radius, ideal, ideal_main, param_name="N"))
        if disc == GAUSSIAN:
            corrected = ideal_main + A1_GAUSSIAN * radius * radius * log_r
            reports.append(CountReport.build(f"ideal-second-order {disc}", radius, ideal, corrected, param_name="N"))
    return reports


@dataclass(frozen=True)
class AsymptoticFit:
    """Least-squares fit count·e^{−δs} ≈ c2·s² + c1·s + c0."""

    c2: float
    c1: float
    c0: float
    residuals: tuple[float, ...]

    @property
    def coefficients(self) -> tuple[float, float, float]:
        """(c2, c1, c0)."""
        return self.c2, self.c1, self.c0


def asymptotic_fit(points: Sequence[tuple[float, int]], delta: float = 1.0) -> AsymptoticFit:
    """Fit count·e^{−δs} against (s², s, 1).

    Args:
        points: Pairs (s, count)
        delta: Growth rate δ

    Returns:
        The coefficients and the residual of each point

    Raises:
        DomainError: Fewer than three distinct s values
    """
    if len({float(s) for s, _ in points}) < 3:
        raise DomainError("the fit needs at least three distinct values of s")
    s = np.array([float(p[0]) for p in points])
    y = np.array([float(p[1]) for p in points]) * np.exp(-delta * s)
    design = np.column_stack((s * s, s, np.ones_like(s)))
    coeffs, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 3:
        raise DomainError("degenerate design matrix")
    residuals = y - design @ coeffs
    return AsymptoticFit(float(coeffs[0]), float(coeffs[1]), float(coeffs[2]), tuple(float(v) for v in residuals))
