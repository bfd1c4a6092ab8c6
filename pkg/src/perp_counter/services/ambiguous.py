"""Ambiguous and reciprocal hyperbolic elements of PSL₂(ℤ).

An element is ambiguous of the first kind when its axis meets Δ = ]0, ∞[ perpendicularly
(``a = d``) and of the second kind when its axis meets Δ₁ = ]0, 2[ perpendicularly (``a + b = d``).
It is reciprocal when a half-turn of the group conjugates it to its inverse. Counting ambiguous
classes reduces to counting common perpendiculars at half (or a quarter of) the length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..arith.divisors import divisors_of
from ..arith.matrices import Mat2, as_int_tuple, psl_canonicalize
from ..errors import DomainError, InvariantViolation
from ..logging_config import get_logger
from ..models.base import PairKind
from ..models.report import AmbiguityReport, CountReport
from ..utils.numeric import Threshold
from .constants import ambiguous_coeffs
from .perp_count import (
    W,
    W1,
    count_perp_delta1_delta1,
    count_perp_delta1_iorbit,
    count_perp_delta_delta,
    count_perp_delta_delta1,
    count_perp_delta_iorbit,
    doubled_element,
    enumerate_delta1_iorbit,
    enumerate_delta_iorbit,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class AmbiguityTag:
    """Ambiguity type of a hyperbolic conjugacy class."""

    first_kind: bool
    second_kind: bool
    reciprocal: bool

    def __post_init__(self) -> None:
        if self.first_kind and self.second_kind and self.reciprocal:
            raise InvariantViolation("a reciprocal class cannot be ambiguous of both kinds")


def _require_sl2(gamma: Mat2) -> tuple[int, int, int, int]:
    entries = as_int_tuple(gamma)
    if gamma.det() != 1:
        raise DomainError(f"determinant of {gamma!r} is not 1")
    return entries


def _require_hyperbolic(gamma: Mat2) -> int:
    """Absolute trace of a hyperbolic element."""
    _require_sl2(gamma)
    t = abs(gamma.trace())
    if t <= 2:
        kind = "parabolic" if t == 2 else "elliptic"
        raise DomainError(f"{gamma!r} is {kind}, not hyperbolic")
    return t


def _positive_trace(gamma: Mat2) -> Mat2:
    return -gamma if gamma.trace() < 0 else gamma


def is_hyperbolic(gamma: Mat2) -> bool:
    """True when |trace| > 2."""
    _require_sl2(gamma)
    return abs(gamma.trace()) > 2


def has_common_perp_with_delta(gamma: Mat2) -> bool:
    """True when Δ and γΔ are disjoint without a common endpoint, that is abcd ≠ 0."""
    a, b, c, d = _require_sl2(gamma)
    return a * b * c * d != 0


def is_first_kind(gamma: Mat2) -> bool:
    """Equal diagonal entries."""
    a, _, _, d = _require_sl2(gamma)
    return a == d


def is_second_kind(gamma: Mat2) -> bool:
    """a + b = d."""
    a, b, _, d = _require_sl2(gamma)
    return a + b == d


def _equal_in_psl(m: Mat2, n: Mat2) -> bool:
    return m == n or m == -n


def w_conjugation_test(gamma: Mat2) -> tuple[bool, bool]:
    """Check wγw = γ⁻¹ and w₁γw₁ = γ⁻¹ in PSL₂(ℤ) by matrix multiplication.

    Returns:
        Pair (first kind, second kind) computed from the reflections
    """
    _require_sl2(gamma)
    inverse = gamma.inverse()
    return _equal_in_psl(W @ gamma @ W, inverse), _equal_in_psl(W1 @ gamma @ W1, inverse)


# --- reciprocity ---------------------------------------------------------------------------------


def reciprocal_witness(gamma: Mat2) -> Mat2 | None:
    """Find a half-turn ρ with ργρ⁻¹ = γ⁻¹ in PSL₂(ℤ).

    The fixed point (x + i)/q of ρ = (x −(x²+1)/q; q −x) must lie on the axis of γ. Writing the
    axis as the circle through the fixed points turns that into
    (2cx − (a − d)q)² = q²(t² − 4) − 4c². Every ⟨γ⟩-orbit on the axis has a point within half a
    translation length of the top of the circle, which bounds q by |c|·|t|/√(t² − 4).

    Args:
        gamma: Hyperbolic element

    Returns:
        The witness, or None when γ is not reciprocal
    """
    t = _require_hyperbolic(gamma)
    a, _, c, d = as_int_tuple(gamma)
    disc = t * t - 4
    inverse = gamma.inverse()
    q = 1
    while q * q * disc <= c * c * t * t:
        delta = q * q * disc - 4 * c * c
        if delta >= 0:
            root = math.isqrt(delta)
            if root * root == delta:
                for num in {(a - d) * q + root, (a - d) * q - root}:
                    if num % (2 * c):
                        continue
                    x = num // (2 * c)
                    if (x * x + 1) % q:
                        continue
                    rho = Mat2(x, -(x * x + 1) // q, q, -x)
                    if _equal_in_psl(rho @ gamma @ rho.inverse(), inverse):
                        return rho
        q += 1
    return None


def is_reciprocal(gamma: Mat2) -> bool:
    """True when a half-turn of PSL₂(ℤ) conjugates γ to γ⁻¹."""
    return reciprocal_witness(gamma) is not None


# --- roots and conjugacy -------------------------------------------------------------------------


def double_perp(gamma: Mat2) -> Mat2:
    """Product γwγ⁻¹w, translating along the axis ]−√(ab/cd), √(ab/cd)[.

    Its translation length is twice the length of the common perpendicular from Δ to γΔ.

    Args:
        gamma: Element with positive entries

    Returns:
        (ad + bc, 2ab; 2cd, ad + bc)
    """
    a, b, c, d = _require_sl2(gamma)
    if min(a, b, c, d) <= 0:
        raise DomainError(f"double_perp needs positive entries, got {gamma!r}")
    return Mat2(a * d + b * c, 2 * a * b, 2 * c * d, a * d + b * c)


def _chebyshev(tau: int, k: int, cap: int) -> tuple[int, int, int]:
    """(t_k, s_k, s_{k−1}) for a root of trace τ; t_k is capped once it exceeds ``cap``."""
    t_prev, t_cur = 2, tau
    s_prev, s_cur = 0, 1
    for _ in range(k - 1):
        t_prev, t_cur = t_cur, tau * t_cur - t_prev
        s_prev, s_cur = s_cur, tau * s_cur - s_prev
        if t_cur > cap:
            return cap + 1, s_cur, s_prev
    return t_cur, s_cur, s_prev


def matrix_root(gamma: Mat2, k: int) -> Mat2 | None:
    """Integral M₀ with M₀ᵏ = ±γ, or None.

    The root trace τ solves t_k(τ) = |trace γ| for the Chebyshev recursion t_{j+1} = τt_j − t_{j−1},
    found by bisection since t_k increases for τ >= 3. Then γ = s_k·M₀ − s_{k−1}·I by
    Cayley-Hamilton.
    """
    t = _require_hyperbolic(gamma)
    if k < 1:
        raise DomainError("root order must be positive")
    target = _positive_trace(gamma)
    if k == 1:
        return target
    lo, hi = 3, t
    while lo <= hi:
        tau = (lo + hi) // 2
        value, s_k, s_km1 = _chebyshev(tau, k, t)
        if value == t:
            a, b, c, d = as_int_tuple(target)
            num = (a + s_km1, b, c, d + s_km1)
            if any(entry % s_k for entry in num):
                return None
            root = Mat2(*(entry // s_k for entry in num))
            if root.det() != 1 or root.power(k) != target:
                return None
            return root
        if value < t:
            lo = tau + 1
        else:
            hi = tau - 1
    return None


def primitive_root(gamma: Mat2) -> tuple[Mat2, int]:
    """Primitive M₀ and the largest k with M₀ᵏ = ±γ."""
    t = _require_hyperbolic(gamma)
    best = (_positive_trace(gamma), 1)
    k = 2
    while _chebyshev(3, k, t)[0] <= t:
        root = matrix_root(gamma, k)
        if root is not None:
            best = (root, k)
        k += 1
    return best


def is_proper_power(gamma: Mat2) -> bool:
    """True when γ = ±M₀ᵏ for an integral M₀ and some k >= 2."""
    return primitive_root(gamma)[1] > 1


def _periodic_quotients(p: int, q: int, disc: int) -> tuple[int, list[int]]:
    """Start index and period of the continued fraction of (p + √disc)/q."""
    root = math.isqrt(disc)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (p, q) not in seen:
        seen[(p, q)] = len(terms)
        if q > 0:
            a = (p + root) // q
        else:
            a = -((p + root) // -q) - 1
        terms.append(a)
        p = a * q - p
        q = (disc - p * p) // q
    start = seen[(p, q)]
    return start, terms[start:]


def _minimal_rotation(word: str) -> str:
    return min(word[i:] + word[:i] for i in range(len(word)))


def conjugacy_word(gamma: Mat2) -> str:
    """Canonical cyclic word in R = (1 1; 0 1) and L = (1 0; 1 1) of a hyperbolic class.

    The period of the continued fraction of the attracting fixed point spells the word of the
    primitive root, partial quotients alternating between R and L blocks. The word of γ repeats it
    once per power and is reported as its least rotation.

    Args:
        gamma: Hyperbolic element

    Returns:
        A string over {L, R}; two elements are conjugate in PSL₂(ℤ) iff their words are equal
    """
    t = _require_hyperbolic(gamma)
    a, _, c, d = as_int_tuple(_positive_trace(gamma))
    start, period = _periodic_quotients(a - d, 2 * c, t * t - 4)
    if len(period) % 2:
        period = period * 2
    base = "".join(("R" if (start + j) % 2 == 0 else "L") * n for j, n in enumerate(period))
    _, k = primitive_root(gamma)
    return _minimal_rotation(base * k)


def _signed_divisors(n: int) -> list[int]:
    positive = divisors_of(n)
    return sorted(positive + [-x for x in positive])


def first_kind_conjugates(gamma: Mat2) -> list[Mat2]:
    """All conjugates of γ in PSL₂(ℤ) with equal diagonal entries.

    Such a conjugate has a = d = t/2 and bc = a² − 1, so the candidates are finite and each is
    compared with γ through its conjugacy word.
    """
    t = _require_hyperbolic(gamma)
    if t % 2:
        return []
    word = conjugacy_word(gamma)
    a = t // 2
    n = a * a - 1
    candidates = (Mat2(a, b, n // b, a) for b in _signed_divisors(n))
    return [m for m in candidates if conjugacy_word(m) == word]


def second_kind_conjugates(gamma: Mat2) -> list[Mat2]:
    """All conjugates of γ in PSL₂(ℤ) with a + b = d.

    With trace t the entries are a = (t − b)/2, d = (t + b)/2 and 4bc = t² − 4 − b², so b runs over
    the signed divisors of t² − 4 of the parity of t.
    """
    t = _require_hyperbolic(gamma)
    word = conjugacy_word(gamma)
    found = []
    for b in _signed_divisors(t * t - 4):
        if (t - b) % 2:
            continue
        num = t * t - 4 - b * b
        if num % (4 * b):
            continue
        m = Mat2((t - b) // 2, b, num // (4 * b), (t + b) // 2)
        if conjugacy_word(m) == word:
            found.append(m)
    return found


def ambiguity_tag(gamma: Mat2) -> AmbiguityTag:
    """Class-level ambiguity of a hyperbolic element."""
    return AmbiguityTag(
        first_kind=bool(first_kind_conjugates(gamma)),
        second_kind=bool(second_kind_conjugates(gamma)),
        reciprocal=is_reciprocal(gamma),
    )


def classify(gamma: Mat2) -> AmbiguityReport:
    """Full classification of an element of PSL₂(ℤ).

    Args:
        gamma: Integral matrix of determinant one

    Returns:
        Report with the entry conditions and, for hyperbolic elements, the class-level data
    """
    canonical = psl_canonicalize(gamma)
    first, second = is_first_kind(canonical), is_second_kind(canonical)
    hyperbolic = is_hyperbolic(canonical)
    report = AmbiguityReport(
        matrix=as_int_tuple(canonical),
        hyperbolic=hyperbolic,
        first_kind=first,
        second_kind=second,
    )
    if not hyperbolic:
        return report
    if first and second:
        raise InvariantViolation(f"hyperbolic {canonical!r} passes both entry conditions")
    tag = ambiguity_tag(canonical)
    report.reciprocal = tag.reciprocal
    report.conjugate_first_kind = tag.first_kind
    report.conjugate_second_kind = tag.second_kind
    report.proper_power = is_proper_power(canonical)
    report.word = conjugacy_word(canonical)
    return report


# --- counting ------------------------------------------------------------------------------------


def count_ambiguous(s: Threshold | float, primitive: bool = False, threads: int = 1) -> CountReport:
    """Ambiguous hyperbolic classes of translation length at most s.

    Sums ½·(Δ → Δ) + ½·(Δ₁ → Δ₁) + (Δ → Δ₁) at s/2 with the reciprocal correction
    ½·(Δ → Γi) + ½·(Δ₁ → Γi) at s/4.

    Args:
        s: Length bound
        primitive: Count primitive classes only
        threads: Concurrent shards for the enumeration paths

    Returns:
        The count against 3/(4π²)·s²·e^{s/2}
    """
    threshold = s if isinstance(s, Threshold) else Threshold.from_real(s)
    half, quarter = threshold.half(), threshold.quarter()
    kwargs = {"primitive": primitive, "threads": threads}
    components = {
        PairKind.DD.value: count_perp_delta_delta(half, **kwargs).count,
        PairKind.D1D1.value: count_perp_delta1_delta1(half, **kwargs).count,
        PairKind.DD1.value: count_perp_delta_delta1(half, **kwargs).count,
        PairKind.DI.value: count_perp_delta_iorbit(quarter, **kwargs).count,
        PairKind.D1I.value: count_perp_delta1_iorbit(quarter, **kwargs).count,
    }
    twice = (
        components["dd"] + components["d1d1"] + 2 * components["dd1"] + components["di"] + components["d1i"]
    )
    if twice % 2:
        logger.warning(f"odd weighted sum {twice} at s={threshold.s!r}")
    coeff, _ = ambiguous_coeffs()
    main = coeff * threshold.s**2 * math.exp(threshold.s / 2.0)
    extra = {"components": components, "twice_count": twice, "primitive": primitive, "threshold": str(threshold)}
    return CountReport.build("ambiguous", threshold.s, twice // 2, main, extra=extra)


def count_ambiguous_reciprocal(s: Threshold | float, primitive: bool = False, threads: int = 1) -> CountReport:
    """Ambiguous reciprocal classes of translation length at most s, against 3/(8π)·s·e^{s/4}."""
    threshold = s if isinstance(s, Threshold) else Threshold.from_real(s)
    quarter = threshold.quarter()
    di = count_perp_delta_iorbit(quarter, primitive=primitive, threads=threads).count
    d1i = count_perp_delta1_iorbit(quarter, primitive=primitive, threads=threads).count
    _, coeff = ambiguous_coeffs()
    main = coeff * threshold.s * math.exp(threshold.s / 4.0)
    extra = {"components": {"di": di, "d1i": d1i}, "twice_count": di + d1i, "threshold": str(threshold)}
    return CountReport.build("ambiguous-reciprocal", threshold.s, (di + d1i) // 2, main, extra=extra)


def reciprocal_witnesses(s: Threshold | float) -> list[Mat2]:
    """Doubled elements (αια⁻¹w)² of the orbit points of i within s/4 of Δ or Δ₁.

    Each is ambiguous (of the first kind for Δ, the second for Δ₁) and reciprocal.
    """
    threshold = s if isinstance(s, Threshold) else Threshold.from_real(s)
    quarter = threshold.quarter()
    di_bound = math.isqrt(quarter.floor_cosh_sq() - 1)
    d1i_bound = math.isqrt(quarter.floor_scaled_cosh_sq(4) - 4)
    witnesses = [doubled_element(PairKind.DI, rec.gamma) for rec in enumerate_delta_iorbit(di_bound)]
    witnesses += [doubled_element(PairKind.D1I, rec.gamma) for rec in enumerate_delta1_iorbit(d1i_bound)]
    return witnesses
