"""Exact arithmetic in the integers and in rings of integers of imaginary quadratic fields.

Elements are written x + y·ω in the integral basis {1, ω} with ω = (D + √D)/2, which covers
both residues of D modulo 4 with one formula: ω² = D·ω + (D − D²)/4.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar

from ..errors import DomainError, InvalidDiscriminantError

# Imaginary quadratic discriminants of class number one
PRINCIPAL_DISCRIMINANTS: frozenset[int] = frozenset({-3, -4, -7, -8, -11, -19, -43, -67, -163})

RATIONAL_D = 1


def _is_squarefree(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        if m % p == 0:
            m //= p
        p += 1
    return True


def is_fundamental_discriminant(value: int) -> bool:
    """Check whether a negative integer is a fundamental discriminant.

    Args:
        value: Candidate discriminant

    Returns:
        True when value < 0 and it is the discriminant of an imaginary quadratic field
    """
    if value >= 0:
        return False
    if value % 4 == 1:
        return _is_squarefree(value)
    if value % 4 == 0:
        m = value // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


@dataclass(frozen=True)
class Discriminant:
    """Negative fundamental discriminant, or ``RATIONAL`` for the integers."""

    D: int
    RATIONAL: ClassVar[Discriminant]

    def __post_init__(self) -> None:
        if self.D != RATIONAL_D and not is_fundamental_discriminant(self.D):
            raise InvalidDiscriminantError(f"{self.D} is not a negative fundamental discriminant")

    @property
    def is_rational(self) -> bool:
        """True for the integers."""
        return self.D == RATIONAL_D

    @property
    def abs_d(self) -> int:
        """Absolute value |D| (1 for the integers)."""
        return abs(self.D)

    @property
    def c0(self) -> int:
        """Constant term of ω² = D·ω + c0."""
        return (self.D - self.D * self.D) // 4

    @property
    def units_count(self) -> int:
        """Order of the unit group."""
        return {-4: 4, -3: 6}.get(self.D, 2)

    @property
    def is_principal(self) -> bool:
        """True when the ring of integers is a principal ideal domain."""
        return self.is_rational or self.D in PRINCIPAL_DISCRIMINANTS

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"D={self.D}"


Discriminant.RATIONAL = Discriminant(RATIONAL_D)


@dataclass(frozen=True, eq=False)
class QuadInt:
    """Element x + y·ω of the ring of integers of discriminant ``disc``."""

    x: int
    y: int
    disc: Discriminant

    def __post_init__(self) -> None:
        if self.disc.is_rational and self.y:
            # ω = 1 over the integers
            object.__setattr__(self, "x", self.x + self.y)
            object.__setattr__(self, "y", 0)

    @classmethod
    def from_sqrt_form(cls, a: int, b: int, disc: Discriminant) -> QuadInt:
        """Build (a + b·√D)/2.

        Args:
            a: Rational part numerator
            b: Coefficient of √D
            disc: Discriminant

        Returns:
            The element, which must be integral
        """
        if (a - b * disc.D) % 2:
            raise DomainError(f"({a} + {b}√{disc.D})/2 is not integral")
        return cls((a - b * disc.D) // 2, b, disc)

    @classmethod
    def gaussian(cls, re: int, im: int) -> QuadInt:
        """Gaussian integer re + im·i."""
        return cls.from_sqrt_form(2 * re, im, GAUSSIAN)

    def _coerce(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, QuadInt):
            if other.disc != self.disc:
                raise DomainError(f"cannot mix {self.disc} and {other.disc}")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.disc)
        raise TypeError(f"unsupported operand {type(other).__name__} for QuadInt")

    def __add__(self, other: QuadInt | int) -> QuadInt:
        o = self._coerce(other)
        return QuadInt(self.x + o.x, self.y + o.y, self.disc)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.x, -self.y, self.disc)

    def __sub__(self, other: QuadInt | int) -> QuadInt:
        o = self._coerce(other)
        return QuadInt(self.x - o.x, self.y - o.y, self.disc)

    def __rsub__(self, other: int) -> QuadInt:
        return self._coerce(other) - self

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        o = self._coerce(other)
        yy = self.y * o.y
        return QuadInt(
            self.x * o.x + yy * self.disc.c0,
            self.x * o.y + o.x * self.y + yy * self.disc.D,
            self.disc,
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadInt):
            return self.x == other.x and self.y == other.y and self.disc == other.disc
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.x) if self.y == 0 else hash((self.x, self.y, self.disc.D))

    def __bool__(self) -> bool:
        return bool(self.x or self.y)

    def conj(self) -> QuadInt:
        """Complex conjugate."""
        return QuadInt(self.x + self.y * self.disc.D, -self.y, self.disc)

    def norm(self) -> int:
        """Norm x² + D·x·y − c0·y², equal to |q|²."""
        return self.x * self.x + self.disc.D * self.x * self.y - self.disc.c0 * self.y * self.y

    @property
    def re2(self) -> int:
        """Twice the real part, 2x + yD."""
        return 2 * self.x + self.y * self.disc.D

    def to_complex(self) -> complex:
        """Complex embedding with positive imaginary part for ω."""
        if self.disc.is_rational:
            return complex(self.x, 0.0)
        return complex(self.re2 / 2, self.y * math.sqrt(self.disc.abs_d) / 2)

    def exact_div(self, divisor: QuadInt | int) -> QuadInt | None:
        """Quotient self / divisor when it lies in the ring, else None."""
        d = self._coerce(divisor)
        n = d.norm()
        if n == 0:
            raise DomainError("division by zero")
        num = self * d.conj()
        if num.x % n or num.y % n:
            return None
        return QuadInt(num.x // n, num.y // n, self.disc)

    def divides(self, other: QuadInt | int) -> bool:
        """True when self divides other."""
        if not self:
            return not self._coerce(other)
        return self._coerce(other).exact_div(self) is not None

    def __repr__(self) -> str:
        if self.disc.is_rational:
            return f"{self.x}"
        return f"({self.x}+{self.y}ω|{self.disc.D})"


GAUSSIAN = Discriminant(-4)
EISENSTEIN = Discriminant(-3)


def qnorm(q: QuadInt) -> int:
    """Exact norm |q|² of a ring element."""
    return q.norm()


def elements_of_norm_at_most(disc: Discriminant, bound: int) -> Iterator[QuadInt]:
    """Enumerate every ring element of norm at most ``bound``.

    Uses 4·N(x + yω) = (2x + yD)² + y²|D| to bound both coordinates exactly.

    Args:
        disc: Discriminant
        bound: Norm bound (inclusive)

    Yields:
        Elements in increasing y, then increasing real part
    """
    if bound < 0:
        return
    if disc.is_rational:
        r = math.isqrt(bound)
        for x in range(-r, r + 1):
            yield QuadInt(x, 0, disc)
        return
    abs_d = disc.abs_d
    y_max = math.isqrt(4 * bound // abs_d)
    for y in range(-y_max, y_max + 1):
        rest = 4 * bound - y * y * abs_d
        if rest < 0:
            continue
        r = math.isqrt(rest)
        yd = y * disc.D
        u = -r
        if (u - yd) % 2:
            u += 1
        while u <= r:
            yield QuadInt((u - yd) // 2, y, disc)
            u += 2


def elements_of_norm(disc: Discriminant, value: int) -> list[QuadInt]:
    """All ring elements of norm exactly ``value``, one square root test per row."""
    if value < 0:
        return []
    if disc.is_rational:
        r = math.isqrt(value)
        return [QuadInt(s, 0, disc) for s in sorted({-r, r})] if r * r == value else []
    found: list[QuadInt] = []
    y_max = math.isqrt(4 * value // disc.abs_d)
    for y in range(-y_max, y_max + 1):
        rest = 4 * value - y * y * disc.abs_d
        r = math.isqrt(rest)
        if r * r != rest:
            continue
        yd = y * disc.D
        for u in sorted({-r, r}):
            if (u - yd) % 2 == 0:
                found.append(QuadInt((u - yd) // 2, y, disc))
    return found


@lru_cache(maxsize=32)
def units(disc: Discriminant) -> tuple[QuadInt, ...]:
    """All units of the ring of integers, starting with 1 and -1.

    Args:
        disc: Discriminant

    Returns:
        The unit group, closed under multiplication and inverse
    """
    found = elements_of_norm(disc, 1)
    one = QuadInt(1, 0, disc)
    rest = [u for u in found if u != one and u != -one]
    return (one, -one, *sorted(rest, key=lambda u: (u.y, u.x)))


def canonical_associate(q: QuadInt) -> QuadInt:
    """Representative of the class of q modulo units.

    The chosen associate is the unique one with real part in the half-open sector used by the
    divisor sieves: D = -4 keeps re2 > 0, y >= 0; D = -3 keeps 0 <= y < re2; otherwise the first
    nonzero of (y, re2) is positive.
    """
    for u in units(q.disc):
        cand = q * u
        if is_canonical(cand):
            return cand
    raise DomainError(f"no canonical associate for {q!r}")


def is_canonical(q: QuadInt) -> bool:
    """True when q is the canonical representative of its unit class."""
    if not q:
        return False
    d = q.disc.D
    if d == -4:
        return q.re2 > 0 and q.y >= 0
    if d == -3:
        return 0 <= q.y < q.re2
    return q.y > 0 or (q.y == 0 and q.re2 > 0)


@dataclass(frozen=True)
class Quaternion:
    """Real quaternion x0 + x1·i + x2·j + x3·k in double precision."""

    x0: float
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> Quaternion:
        """Embed a complex number as x0 + x1·i."""
        return cls(z.real, z.imag, 0.0, 0.0)

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.x0 - other.x0, self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other: Quaternion | float) -> Quaternion:
        if isinstance(other, int | float):
            return Quaternion(self.x0 * other, self.x1 * other, self.x2 * other, self.x3 * other)
        a0, a1, a2, a3 = self.x0, self.x1, self.x2, self.x3
        b0, b1, b2, b3 = other.x0, other.x1, other.x2, other.x3
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other: float) -> Quaternion:
        return self * other

    def conjugate(self) -> Quaternion:
        """Quaternion conjugate; reverses products."""
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm_sq(self) -> float:
        """|q|² = x0² + x1² + x2² + x3²."""
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def __abs__(self) -> float:
        return math.sqrt(self.norm_sq())

    def inverse(self) -> Quaternion:
        """Multiplicative inverse."""
        n = self.norm_sq()
        if n == 0.0:
            raise DomainError("zero quaternion has no inverse")
        return self.conjugate() * (1.0 / n)

    @property
    def re(self) -> float:
        """Real part ½(q + q̄)."""
        return self.x0

    @property
    def im(self) -> Quaternion:
        """Imaginary part ½(q − q̄)."""
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def as_tuple(self) -> tuple[float, float, float, float]:
        """Components as a tuple."""
        return (self.x0, self.x1, self.x2, self.x3)
