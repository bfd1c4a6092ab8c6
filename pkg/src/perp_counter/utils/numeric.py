"""Numeric helpers: stable arcosh, exact counting thresholds and Gamma values at half-integers."""

from __future__ import annotations

import math
import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import DomainError

_SERIES_CUTOFF = 1e-8
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_SEARCH_STEPS = 200


def acosh_stable(x: float) -> float:
    """arcosh(x) = ln(x + √(x²−1)) with a series near 1 and an overflow-free form for huge x.

    Args:
        x: Argument, at least 1 (values within 1e-12 below 1 are clamped)

    Returns:
        The nonnegative inverse hyperbolic cosine
    """
    eps = x - 1.0
    if eps < 0.0:
        if eps > -1e-12:
            return 0.0
        raise DomainError(f"arcosh undefined at {x!r}")
    if eps < _SERIES_CUTOFF:
        return math.sqrt(2.0 * eps) * (1.0 - eps / 12.0 + 3.0 * eps * eps / 160.0)
    if x > 1e150:
        return math.log(x) + math.log1p(math.sqrt(1.0 - 1.0 / (x * x)))
    return math.log(x + math.sqrt(x * x - 1.0))


def sqrt_fraction(value: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, None when irrational."""
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


_ACOSH_RE = re.compile(r"^acosh:\s*(sqrt\(\s*(?P<root>[^)]+)\)|(?P<plain>.+))$")


@dataclass(frozen=True)
class Threshold:
    """A length bound s, kept as an exact cosh²(s) whenever it was given by arcosh of a rational.

    Counting code compares integers against ``cosh_sq`` so boundary cases like s = arcosh(3)
    include the perpendiculars of length exactly s.
    """

    s: float
    cosh_sq: Fraction | None = None

    def __post_init__(self) -> None:
        if not self.s > 0.0:
            raise DomainError(f"length bound must be positive, got {self.s!r}")

    @classmethod
    def from_real(cls, s: float) -> Threshold:
        """Floating-point bound."""
        return cls(float(s))

    @classmethod
    def from_acosh(cls, value: Fraction | int | str) -> Threshold:
        """s = arcosh(value) with a rational value > 1."""
        q = Fraction(value)
        if q <= 1:
            raise DomainError(f"arcosh({q}) is not positive")
        return cls(acosh_stable(float(q)), q * q)

    @classmethod
    def from_acosh_sqrt(cls, value: Fraction | int | str) -> Threshold:
        """s = arcosh(√value) with a rational value > 1."""
        q = Fraction(value)
        if q <= 1:
            raise DomainError(f"arcosh(sqrt({q})) is not positive")
        return cls(acosh_stable(math.sqrt(float(q))), q)

    @classmethod
    def parse(cls, text: str) -> Threshold:
        """Parse ``"10"``, ``"acosh:3/2"`` or ``"acosh:sqrt(2)"``.

        Args:
            text: Command-line form of the bound

        Returns:
            The threshold
        """
        text = text.strip()
        match = _ACOSH_RE.match(text)
        try:
            if match is None:
                return cls.from_real(float(text))
            if match.group("root") is not None:
                return cls.from_acosh_sqrt(match.group("root").strip())
            return cls.from_acosh(match.group("plain").strip())
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"cannot parse length bound {text!r}: {e}") from e

    @property
    def cosh(self) -> float:
        """cosh(s) as a float."""
        if self.cosh_sq is not None:
            return math.sqrt(float(self.cosh_sq))
        return math.cosh(self.s)

    @property
    def cosh_exact(self) -> Fraction | None:
        """cosh(s) when it is rational."""
        return None if self.cosh_sq is None else sqrt_fraction(self.cosh_sq)

    def admits_cosh(self, value: Fraction | int) -> bool:
        """True when arcosh(value) <= s."""
        if self.cosh_sq is not None:
            return value <= 0 or Fraction(value) ** 2 <= self.cosh_sq
        return float(value) <= self.cosh

    def admits_cosh_sq(self, value: Fraction | int) -> bool:
        """True when arcosh(√value) <= s."""
        if self.cosh_sq is not None:
            return Fraction(value) <= self.cosh_sq
        return float(value) <= self.cosh * self.cosh

    def floor_scaled_cosh(self, k: int = 1) -> int:
        """Largest integer m with m <= k·cosh(s), for k >= 1."""
        if self.cosh_sq is not None:
            return math.isqrt(math.floor(k * k * self.cosh_sq))
        return math.floor(k * self.cosh)

    def floor_scaled_cosh_sq(self, k: int = 1) -> int:
        """Largest integer m with m <= k·cosh²(s), for k >= 1."""
        if self.cosh_sq is not None:
            return math.floor(k * self.cosh_sq)
        return math.floor(k * self.cosh * self.cosh)

    def floor_cosh(self) -> int:
        """Largest integer m with m <= cosh(s)."""
        return self.floor_scaled_cosh(1)

    def floor_cosh_sq(self) -> int:
        """Largest integer m with m <= cosh²(s)."""
        return self.floor_scaled_cosh_sq(1)

    def half(self) -> Threshold:
        """The bound s/2, using cosh²(s/2) = (cosh s + 1)/2."""
        exact = self.cosh_exact
        if exact is not None:
            return Threshold(self.s / 2.0, (exact + 1) / 2)
        return Threshold(self.s / 2.0)

    def quarter(self) -> Threshold:
        """The bound s/4."""
        return self.half().half()

    def __str__(self) -> str:
        if self.cosh_sq is None:
            return f"{self.s!r}"
        exact = self.cosh_exact
        return f"acosh:{exact}" if exact is not None else f"acosh:sqrt({self.cosh_sq})"


def gamma_half(k: int) -> float:
    """Γ(k/2) for a positive integer k, using exact factorials and Γ(1/2) = √π.

    Args:
        k: Twice the argument

    Returns:
        Γ(k/2)
    """
    if k < 1:
        raise DomainError("Gamma is evaluated only at positive half-integers")
    if k % 2 == 0:
        return float(math.factorial(k // 2 - 1))
    m = (k - 1) // 2
    return math.factorial(2 * m) / (4**m * math.factorial(m)) * math.sqrt(math.pi)


def sphere_volume(k: int) -> float:
    """Volume of the unit sphere S^k ⊂ ℝ^{k+1}, 2π^{(k+1)/2}/Γ((k+1)/2)."""
    if k < 0:
        raise DomainError("sphere dimension must be nonnegative")
    return 2.0 * math.pi ** ((k + 1) / 2) / gamma_half(k + 1)


def ball_volume(n: int) -> float:
    """Volume of the unit ball of ℝⁿ, π^{n/2}/Γ(n/2 + 1)."""
    if n < 0:
        raise DomainError("ball dimension must be nonnegative")
    return math.pi ** (n / 2) / gamma_half(n + 2)


def decay_slope(xs: Sequence[float], values: Sequence[float]) -> float:
    """Slope of ln|value| against x from a least-squares line.

    Args:
        xs: Sample positions
        values: Nonzero residuals

    Returns:
        The fitted exponential decay rate
    """
    if len(xs) < 2 or len(xs) != len(values):
        raise DomainError("need at least two matching samples")
    logs = np.log(np.abs(np.asarray(values, dtype=np.float64)))
    slope, _ = np.polyfit(np.asarray(xs, dtype=np.float64), logs, 1)
    return float(slope)


def golden_section_min(objective: Callable[[float], float], lo: float, hi: float, tol: float = 1e-15) -> float:
    """Minimizer of a unimodal function on [lo, hi] by golden-section search.

    Args:
        objective: Function to minimize
        lo: Left end of the bracket
        hi: Right end of the bracket
        tol: Width at which the bracket is accepted

    Returns:
        Midpoint of the final bracket
    """
    if not lo <= hi:
        raise DomainError(f"empty bracket [{lo!r}, {hi!r}]")
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = objective(x1), objective(x2)
    for _ in range(_MAX_SEARCH_STEPS):
        if hi - lo <= tol:
            break
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = objective(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = objective(x2)
    return (lo + hi) / 2


def bisect_root(func: Callable[[float], float], lo: float, hi: float, tol: float = 1e-15) -> float:
    """Root of a function that changes sign on [lo, hi], by bisection."""
    f_lo = func(lo)
    if f_lo * func(hi) > 0:
        raise DomainError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(_MAX_SEARCH_STEPS):
        if hi - lo <= tol:
            break
        mid = (lo + hi) / 2
        f_mid = func(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2
