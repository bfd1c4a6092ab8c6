"""Reproducible figure families drawn in the modular fundamental domain."""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

from ..arith.matrices import Mat2, as_int_tuple
from ..errors import DomainError
from ..logging_config import get_logger
from ..models.base import FigureKind
from ..services.ambiguous import double_perp
from ..services.perp_count import enumerate_delta_translates
from ..utils.numeric import acosh_stable
from .folding import fold_geodesic
from .svg import Figure, Window

logger = get_logger(__name__)

# Examples of ambiguous elements of the first kind
FIRST_KIND_EXAMPLES: dict[str, Mat2] = {
    "p": Mat2(2, 1, 3, 2),
    "p'": Mat2(3, 8, 1, 3),
}


def axis_endpoints(gamma: Mat2) -> tuple[float, float]:
    """Repelling and attracting fixed points of a hyperbolic element with c ≠ 0."""
    a, b, c, d = as_int_tuple(gamma)
    t = a + d
    if abs(t) <= 2 or c == 0:
        raise DomainError(f"{gamma!r} has no finite axis")
    root = math.sqrt(t * t - 4)
    if t < 0:
        a, d, c = -a, -d, -c
    # attracting point has |cz + d| > 1
    plus = ((a - d) + root) / (2 * c)
    minus = ((a - d) - root) / (2 * c)
    if abs(c * plus + d) > 1:
        return minus, plus
    return plus, minus


def _period_range(gamma: Mat2) -> tuple[float, float]:
    """One translation length of γ centred on the top of its axis."""
    length = 2.0 * acosh_stable(abs(gamma.trace()) / 2.0)
    return -length / 2.0, length / 2.0


def perpendicular_family(max_bc: int = 300, lo: float = 2.05, hi: float = 2.1, samples: int = 512) -> Figure:
    """Closed geodesics doubling the perpendiculars from Δ to γΔ with axis half-width in [lo, hi].

    The doubled element (ad + bc, 2ab; 2cd, ad + bc) has axis ]−r, r[ with r = √(ab/(cd)).

    Args:
        max_bc: Largest bc among the translates
        lo: Smallest half-width r
        hi: Largest half-width r
        samples: Samples per closed geodesic

    Returns:
        One series of folded closed geodesics
    """
    if not hi >= lo > 0:
        raise DomainError(f"bad half-width range [{lo}, {hi}]")
    figure = Figure(title=f"perpendicular family bc <= {max_bc}, {lo} <= r <= {hi}", window=Window(y1=2.5))
    selected: list[tuple[int, int, int, int]] = []
    for rec in enumerate_delta_translates(max_bc):
        a, b, c, d = as_int_tuple(rec.gamma)
        r = math.sqrt(a * b / (c * d))
        if lo <= r <= hi:
            selected.append((a, b, c, d))
            doubled = double_perp(rec.gamma)
            figure.polylines += fold_geodesic((-r, r), _period_range(doubled), samples, "ambiguous")
    figure.meta["elements"] = selected
    logger.debug(f"perpendicular family: {len(selected)} elements")
    return figure


def divergent_rationals(max_den: int) -> list[Fraction]:
    """Reduced p/q in [0, 1) with 1 <= q <= max_den."""
    if max_den < 1:
        raise DomainError("max_den must be positive")
    return sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(q)})


def divergent_geodesics(
    max_den: int = 6, rationals: Sequence[Fraction] | None = None, samples: int = 512
) -> Figure:
    """Vertical geodesics from the cusp at p/q to ∞, folded into the domain.

    Each is sampled from well inside the horoball of diameter 1/q² at p/q up to the top of the
    window.

    Args:
        max_den: Largest denominator when ``rationals`` is not given
        rationals: Explicit endpoints such as 3/8, 31/80 and 3/10
        samples: Samples per geodesic

    Returns:
        One series per endpoint, with i marked
    """
    points = list(rationals) if rationals is not None else divergent_rationals(max_den)
    window = Window(y1=3.0)
    figure = Figure(title="divergent geodesics", window=window)
    for x in points:
        x = Fraction(x)
        t0 = -2.0 * math.log(x.denominator) - 3.0
        t1 = math.log(window.y1) + 0.5
        figure.polylines += fold_geodesic((float(x), None), (t0, t1), samples, str(x))
    figure.markers.append((1j, "i"))
    figure.meta["rationals"] = [str(x) for x in points]
    return figure


def delta1_axis(samples: int = 512) -> Figure:
    """Δ, Δ₁ and the closed geodesics of the first-kind examples p and p′."""
    figure = Figure(title="axes meeting delta and delta1", window=Window(y1=2.5))
    figure.polylines += fold_geodesic((0.0, None), (-3.0, 3.0), samples, "delta")
    figure.polylines += fold_geodesic((0.0, 2.0), (-3.0, 3.0), samples, "delta1")
    for name, gamma in FIRST_KIND_EXAMPLES.items():
        figure.polylines += fold_geodesic(axis_endpoints(gamma), _period_range(gamma), samples, name)
    figure.markers.append((1j, "i"))
    figure.meta["elements"] = {name: as_int_tuple(m) for name, m in FIRST_KIND_EXAMPLES.items()}
    return figure


def build_figure(kind: FigureKind, **options: object) -> Figure:
    """Dispatch to the figure family ``kind``."""
    match kind:
        case FigureKind.PERPENDICULARS:
            return perpendicular_family(**options)  # type: ignore[arg-type]
        case FigureKind.DIVERGENT:
            return divergent_geodesics(**options)  # type: ignore[arg-type]
        case FigureKind.AMBIGUOUS:
            return delta1_axis(**options)  # type: ignore[arg-type]
    raise DomainError(f"unknown figure {kind!r}")
