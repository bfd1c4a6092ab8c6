"""Reduction of upper half-plane points to the standard fundamental domain of PSL₂(ℤ).

The domain is {−½ <= Re z < ½, |z| >= 1} with the generators T: z ↦ z + 1 and S: z ↦ −1/z.
Boundary ties are broken so the representative is unique: Re z = ½ goes to −½ and points on the
unit circle with Re z > 0 are inverted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..arith.matrices import Mat2
from ..errors import DomainError, FoldingError
from ..geometry.real import GeodesicBP
from ..logging_config import get_logger

logger = get_logger(__name__)

# (generator, exponent) pairs, applied left to right
Word = tuple[tuple[str, int], ...]

MAX_FOLD_STEPS = 10_000
# Tolerance for the unit-circle tie
_CIRCLE_EPS = 1e-12

T = Mat2(1, 1, 0, 1)
S = Mat2(0, -1, 1, 0)


@dataclass(frozen=True)
class FoldedPoint:
    """Folded point z′ = g·z together with the word spelling g."""

    z: complex
    word: Word

    @property
    def matrix(self) -> Mat2:
        """g with g·z = z′."""
        return word_matrix(self.word)


@dataclass(frozen=True)
class FoldedPolyline:
    """Consecutive folded samples sharing one folding word."""

    points: tuple[complex, ...]
    word: Word
    series: str = ""


def word_matrix(word: Word) -> Mat2:
    """Matrix of a folding word; later letters act after earlier ones."""
    g = Mat2.identity()
    for gen, exp in word:
        if gen == "T":
            g = Mat2(1, exp, 0, 1) @ g
        elif gen == "S":
            g = S.power(exp % 2) @ g
        else:
            raise DomainError(f"unknown generator {gen!r}")
    return g


def word_str(word: Word) -> str:
    """Readable form like ``T^-3 S``."""
    return " ".join(gen if exp == 1 else f"{gen}^{exp}" for gen, exp in word) or "1"


def apply_matrix(m: Mat2, z: complex) -> complex:
    """Möbius action on a point of the upper half-plane."""
    a, b, c, d = (complex(e) for e in m.entries())
    return (a * z + b) / (c * z + d)


def fold_point(z: complex, max_steps: int = MAX_FOLD_STEPS) -> FoldedPoint:
    """Reduce a point to the fundamental domain.

    Args:
        z: Point with positive imaginary part
        max_steps: Iteration guard

    Returns:
        Folded point and the word that maps z onto it
    """
    z = complex(z)
    if not z.imag > 0:
        raise DomainError(f"{z!r} is not in the upper half-plane")
    word: list[tuple[str, int]] = []
    for _ in range(max_steps):
        n = math.floor(z.real + 0.5)
        if n:
            z -= n
            word.append(("T", -n))
        r2 = z.real * z.real + z.imag * z.imag
        if r2 < 1.0 - _CIRCLE_EPS or (r2 <= 1.0 + _CIRCLE_EPS and z.real > _CIRCLE_EPS):
            z = -1.0 / z
            word.append(("S", 1))
            continue
        return FoldedPoint(z, tuple(word))
    raise FoldingError(f"folding did not terminate after {max_steps} steps")


Endpoints = GeodesicBP | tuple[float | None, float | None]


def _real_endpoints(g: Endpoints) -> tuple[float | None, float | None]:
    if isinstance(g, GeodesicBP):
        p, q = g.p.to_complex(), g.q.to_complex()
        return (None if p is None else p.real), (None if q is None else q.real)
    return g


def geodesic_points(g: Endpoints, ts: np.ndarray) -> np.ndarray:
    """Points at signed hyperbolic arclength ``ts`` along ]p, q[ from p towards q.

    Finite geodesics are parametrized from the top of their half-circle, vertical ones from
    height 1. Endpoints are a geodesic or a pair of reals with None for ∞.
    """
    p, q = _real_endpoints(g)
    if p is None and q is None:
        raise DomainError("geodesic has both endpoints at infinity")
    if q is None:
        return p + 1j * np.exp(ts)
    if p is None:
        return q + 1j * np.exp(-ts)
    if p == q:
        raise DomainError("endpoints of a geodesic must differ")
    center = (p + q) / 2.0
    radius = abs(q - p) / 2.0
    direction = 1.0 if q > p else -1.0
    return center + direction * radius * np.tanh(ts) + 1j * radius / np.cosh(ts)


def fold_geodesic(
    g: Endpoints, t_range: tuple[float, float] = (-3.0, 3.0), samples: int = 512, series: str = ""
) -> list[FoldedPolyline]:
    """Sample a geodesic uniformly in arclength, fold each sample and split at word changes.

    Args:
        g: Geodesic of the upper half-plane
        t_range: Arclength interval around the parametrization origin
        samples: Number of samples, at least 2
        series: Label carried by every polyline

    Returns:
        Polylines in sampling order
    """
    if samples < 2:
        raise DomainError("need at least two samples")
    t0, t1 = t_range
    if not t1 > t0:
        raise DomainError(f"empty arclength range {t_range!r}")
    polylines: list[FoldedPolyline] = []
    current: list[complex] = []
    current_word: Word | None = None
    for z in geodesic_points(g, np.linspace(t0, t1, samples)):
        folded = fold_point(complex(z))
        if folded.word != current_word and current:
            polylines.append(FoldedPolyline(tuple(current), current_word or (), series))
            current = []
        current_word = folded.word
        current.append(folded.z)
    if current:
        polylines.append(FoldedPolyline(tuple(current), current_word or (), series))
    logger.debug(f"folded {samples} samples of {g!r} into {len(polylines)} polylines")
    return polylines
