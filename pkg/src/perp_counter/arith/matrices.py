"""2x2 matrices over the integers or an imaginary quadratic ring, and projective boundary points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, TypeAlias

from ..errors import DomainError
from .rings import QuadInt

Ring: TypeAlias = int | QuadInt


def _sign_key(value: Ring) -> int:
    """Sign of the real part, ties broken by the imaginary part."""
    if isinstance(value, QuadInt):
        if value.re2:
            return 1 if value.re2 > 0 else -1
        return (value.y > 0) - (value.y < 0)
    return (value > 0) - (value < 0)


def _to_complex(value: Ring) -> complex:
    return value.to_complex() if isinstance(value, QuadInt) else complex(value)


@dataclass(frozen=True)
class Mat2:
    """Matrix (a b; c d) acting on boundary points by Möbius transformations."""

    a: Ring
    b: Ring
    c: Ring
    d: Ring

    @classmethod
    def identity(cls, one: Ring = 1) -> Mat2:
        """Identity matrix over the ring of ``one``."""
        return cls(one, one * 0, one * 0, one)

    def det(self) -> Ring:
        """Determinant ad − bc."""
        return self.a * self.d - self.b * self.c

    def trace(self) -> Ring:
        """Trace a + d."""
        return self.a + self.d

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def adjugate(self) -> Mat2:
        """Adjugate (d −b; −c a); the inverse when det = 1."""
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> Mat2:
        """Inverse of a determinant-one matrix."""
        if self.det() != 1:
            raise DomainError("inverse is only defined here for determinant one")
        return self.adjugate()

    def power(self, k: int) -> Mat2:
        """Nonnegative integer power by repeated squaring."""
        if k < 0:
            return self.inverse().power(-k)
        result = Mat2.identity(self.a * 0 + 1)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def entries(self) -> tuple[Ring, Ring, Ring, Ring]:
        """Entries in reading order."""
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        """True when every entry vanishes."""
        return not any(bool(e) for e in self.entries())

    def to_complex(self) -> tuple[complex, complex, complex, complex]:
        """Entries embedded in the complex numbers."""
        return tuple(_to_complex(e) for e in self.entries())  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"[{self.a!r} {self.b!r}; {self.c!r} {self.d!r}]"


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """Boundary point (p : q); ∞ is (1 : 0)."""

    p: Ring
    q: Ring

    def __post_init__(self) -> None:
        if not self.p and not self.q:
            raise DomainError("(0 : 0) is not a projective point")

    @classmethod
    def infinity(cls) -> ProjPoint:
        """The point ∞ over the integers."""
        return cls(1, 0)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> ProjPoint:
        """Rational point value/1 in lowest terms."""
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    def is_infinity(self) -> bool:
        """True for (p : 0)."""
        return not self.q

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return not (self.p * other.q - other.p * self.q)

    def __hash__(self) -> int:
        if isinstance(self.p, int) and isinstance(self.q, int):
            return hash("inf") if self.q == 0 else hash(Fraction(self.p, self.q))
        z = self.to_complex()
        return hash("inf") if z is None else hash((round(z.real, 9), round(z.imag, 9)))

    def to_fraction(self) -> Fraction | None:
        """Exact rational value, None for ∞."""
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise DomainError("point has non-rational coordinates")
        return None if self.q == 0 else Fraction(self.p, self.q)

    def to_complex(self) -> complex | None:
        """Complex value, None for ∞."""
        if not self.q:
            return None
        return _to_complex(self.p) / _to_complex(self.q)

    def __repr__(self) -> str:
        return f"({self.p!r} : {self.q!r})"


def mobius_apply(m: Mat2, z: ProjPoint) -> ProjPoint:
    """Apply z ↦ (az + b)/(cz + d) on projective coordinates.

    Args:
        m: Invertible matrix
        z: Boundary point

    Returns:
        The image (a·p + b·q : c·p + d·q)
    """
    if m.is_zero():
        raise DomainError("zero matrix does not act")
    if not m.det():
        raise DomainError("singular matrix does not act")
    return ProjPoint(m.a * z.p + m.b * z.q, m.c * z.p + m.d * z.q)


def psl_canonicalize(m: Mat2) -> Mat2:
    """Pick the representative of ±m whose first nonzero entry has positive real part.

    Ties on the real part are broken by a positive imaginary part.

    Args:
        m: Matrix of determinant one

    Returns:
        m or −m
    """
    if m.det() != 1:
        raise DomainError(f"determinant of {m!r} is not 1")
    for entry in m.entries():
        if entry:
            return m if _sign_key(entry) > 0 else -m
    raise DomainError("zero matrix")


def as_int_tuple(m: Mat2) -> tuple[int, int, int, int]:
    """Entries of an integer matrix."""
    entries: tuple[Any, ...] = m.entries()
    if not all(isinstance(e, int) for e in entries):
        raise DomainError("matrix is not integral")
    return entries  # type: ignore[return-value]
