"""Real hyperbolic plane and 3-space in the upper half-space model.

Geodesics are given by their endpoints at infinity. Endpoints coming from integer matrices stay
exact: the common perpendicular between two real geodesics is found by sending the first one to
]0, ∞[ with an integral Möbius map and reading off cosh λ = (y + x)/(y − x) as a Fraction.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..arith.matrices import Mat2, ProjPoint, mobius_apply
from ..arith.rings import QuadInt, Quaternion
from ..errors import DomainError, GeometryError
from ..utils.numeric import acosh_stable, bisect_root, golden_section_min

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class PointH2:
    """Point x + iy of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not self.y > 0:
            raise DomainError(f"height must be positive, got {self.y!r}")

    @property
    def z(self) -> complex:
        """As a complex number."""
        return complex(self.x, self.y)


@dataclass(frozen=True)
class PointH3:
    """Point (z, t) of the upper half-space ℂ × ]0, ∞[."""

    z: complex
    t: float

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise DomainError(f"height must be positive, got {self.t!r}")

    def as_quaternion(self) -> Quaternion:
        """z + t·j."""
        return Quaternion(self.z.real, self.z.imag, self.t, 0.0)

    def as_vector(self) -> np.ndarray:
        """Euclidean coordinates (Re z, Im z, t)."""
        return np.array([self.z.real, self.z.imag, self.t])


def _as_proj(value: ProjPoint | QuadInt | Fraction | int | complex | None) -> ProjPoint:
    if isinstance(value, ProjPoint):
        return value
    if value is None:
        return ProjPoint.infinity()
    if isinstance(value, Fraction):
        return ProjPoint.from_fraction(value)
    if isinstance(value, QuadInt):
        return ProjPoint(value, QuadInt(1, 0, value.disc))
    return ProjPoint(value, 1)


@dataclass(frozen=True)
class GeodesicBP:
    """Geodesic ]p, q[ given by two distinct boundary points; oriented from p to q when ``oriented``."""

    p: ProjPoint
    q: ProjPoint
    oriented: bool = False

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise DomainError(f"endpoints of a geodesic must differ, got {self.p!r} twice")

    @classmethod
    def between(cls, p: object, q: object, oriented: bool = False) -> GeodesicBP:
        """Build from ints, Fractions, ring elements, complex numbers or None (∞)."""
        return cls(_as_proj(p), _as_proj(q), oriented)  # type: ignore[arg-type]

    @classmethod
    def vertical_axis(cls) -> GeodesicBP:
        """The geodesic ]0, ∞[."""
        return cls(ProjPoint(0, 1), ProjPoint.infinity(), oriented=True)

    def is_rational(self) -> bool:
        """True when both endpoints have integer projective coordinates."""
        return all(isinstance(v, int) for v in (self.p.p, self.p.q, self.q.p, self.q.q))

    def image(self, m: Mat2) -> GeodesicBP:
        """Translate ]m·p, m·q[."""
        return GeodesicBP(mobius_apply(m, self.p), mobius_apply(m, self.q), self.oriented)


@dataclass(frozen=True)
class PerpResult:
    """Common perpendicular: length, transport angle (ℍ³ only) and feet when known."""

    length: float
    angle: float = 0.0
    feet: tuple[PointH2 | PointH3, ...] = field(default_factory=tuple)
    cosh_exact: Fraction | None = None


def dist_h2(p: PointH2, q: PointH2) -> float:
    """Hyperbolic distance in the upper half-plane, 2·arsinh(|p − q|/(2√(y_p y_q)))."""
    chord = math.hypot(p.x - q.x, p.y - q.y)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(p.y * q.y)))


def dist_h3(p: PointH3, q: PointH3) -> float:
    """Hyperbolic distance in the upper half-space."""
    chord = math.sqrt(abs(p.z - q.z) ** 2 + (p.t - q.t) ** 2)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(p.t * q.t)))


def dist_point_to_vertical_axis(p: PointH2 | PointH3) -> float:
    """Distance to the geodesic ]0, ∞[, arcosh(|p|/height).

    The perpendicular foot sits at height |p| on the axis.
    """
    if isinstance(p, PointH2):
        return acosh_stable(math.hypot(p.x, p.y) / p.y)
    return acosh_stable(math.sqrt(abs(p.z) ** 2 + p.t * p.t) / p.t)


def angle_of_parallelism(u: float) -> float:
    """Angle α with cosh u = 1/sin α."""
    if u < 0:
        raise DomainError("distance must be nonnegative")
    return math.asin(1.0 / math.cosh(u))


def perp_vertical_to_nested(x: Fraction | float, y: Fraction | float) -> PerpResult:
    """Common perpendicular between ]0, ∞[ and ]x, y[ with 0 < x < y.

    Args:
        x: Smaller endpoint
        y: Larger endpoint

    Returns:
        λ = arcosh((y + x)/(y − x)); feet at height √(xy) on the axis and on the semicircle

    Raises:
        GeometryError: The geodesics cross or share an endpoint
    """
    if not 0 < x < y:
        raise GeometryError(f"]{x}, {y}[ is not disjoint from ]0, oo[")
    cosh_exact = None
    if isinstance(x, Fraction | int) and isinstance(y, Fraction | int):
        cosh_exact = Fraction(y + x) / Fraction(y - x)
        cosh_value = float(cosh_exact)
    else:
        cosh_value = (y + x) / (y - x)
    xf, yf = float(x), float(y)
    height = math.sqrt(xf * yf)
    foot_x = 2.0 * xf * yf / (xf + yf)
    foot = PointH2(foot_x, math.sqrt(max(height * height - foot_x * foot_x, 0.0)))
    return PerpResult(acosh_stable(cosh_value), 0.0, (PointH2(0.0, height), foot), cosh_exact)


def _normalizer(g: GeodesicBP) -> tuple[int, int, int, int]:
    """Integer matrix sending g.p to 0 and g.q to ∞."""
    a1, a2 = g.p.p, g.p.q
    b1, b2 = g.q.p, g.q.q
    return a2, -a1, b2, -b1


def _image(m: tuple[int, int, int, int], point: ProjPoint) -> Fraction | None:
    a, b, c, d = m
    num = a * point.p + b * point.q
    den = c * point.p + d * point.q
    return None if den == 0 else Fraction(num, den)


def _pull_back(m: tuple[int, int, int, int], w: complex, reflected: bool) -> PointH2:
    """Inverse of the normalizing isometry applied to an interior point."""
    if reflected:
        w = complex(-w.real, w.imag)
    a, b, c, d = m
    det = a * d - b * c
    z = (d * w - b) / (-c * w + a)
    if det < 0:
        z = z.conjugate()
    return PointH2(z.real, z.imag)


def perp_cosh_exact(g1: GeodesicBP, g2: GeodesicBP) -> Fraction:
    """Exact cosh of the common perpendicular between two rational geodesics of ℍ².

    Raises:
        GeometryError: Shared endpoint or crossing geodesics
    """
    m = _normalizer(g1)
    u, v = _image(m, g2.p), _image(m, g2.q)
    if u is None or v is None or u == 0 or v == 0:
        raise GeometryError("geodesics share an endpoint: no common perpendicular")
    if u * v < 0:
        raise GeometryError("geodesics cross: no common perpendicular")
    x, y = sorted((abs(u), abs(v)))
    return (y + x) / (y - x)


def _perp_real(g1: GeodesicBP, g2: GeodesicBP) -> PerpResult:
    m = _normalizer(g1)
    u, v = _image(m, g2.p), _image(m, g2.q)
    if u is None or v is None or u == 0 or v == 0:
        raise GeometryError("geodesics share an endpoint: no common perpendicular")
    if u * v < 0:
        raise GeometryError("geodesics cross: no common perpendicular")
    reflected = u < 0
    x, y = sorted((abs(u), abs(v)))
    nested = perp_vertical_to_nested(x, y)
    feet = tuple(_pull_back(m, f.z, reflected) for f in nested.feet if isinstance(f, PointH2))
    return PerpResult(nested.length, 0.0, feet, nested.cosh_exact)


def _complex_endpoints_after_normalizing(g1: GeodesicBP, g2: GeodesicBP) -> tuple[complex, complex]:
    """Images of g2's endpoints under a Möbius map sending g1.p to 0 and g1.q to ∞."""
    a, b = g1.p.to_complex(), g1.q.to_complex()

    def send(point: ProjPoint) -> complex:
        z = point.to_complex()
        if z is None:
            if a is None or b is None:
                raise GeometryError("geodesics share an endpoint: no common perpendicular")
            return 1.0 + 0j
        if a is None:
            image = -1.0 / (z - b) if z != b else None
        elif b is None:
            image = z - a if z != a else None
        else:
            image = (z - a) / (z - b) if z not in (a, b) else None
        if image is None:
            raise GeometryError("geodesics share an endpoint: no common perpendicular")
        return image

    return send(g2.p), send(g2.q)


def complex_length_from_endpoints(p: complex, q: complex) -> tuple[float, float]:
    """(λ, θ) from ]0, ∞[ to the oriented geodesic ]p, q[ of ℍ³.

    cosh λ = (|p| + |q|)/|q − p| and cos θ = (|q| − |p|)/|q − p|, so that
    cosh λ + cos θ = 2|q|/|q − p|.
    """
    if p == 0 or q == 0 or p == q:
        raise GeometryError("endpoint on the axis or degenerate geodesic")
    span = abs(q - p)
    cosh_l = (abs(p) + abs(q)) / span
    cos_t = min(1.0, max(-1.0, (abs(q) - abs(p)) / span))
    return acosh_stable(cosh_l), math.acos(cos_t)


def complex_length_h3(g2: GeodesicBP) -> tuple[float, float]:
    """Complex length (λ, θ) from the vertical axis to the oriented geodesic g2 = ]p, q[.

    For g2 = ]γ·0, γ·∞[ this gives cosh λ + cos θ = 2|ad|.

    Args:
        g2: Oriented geodesic with finite nonzero endpoints

    Returns:
        Perpendicular length and transport angle in [0, π]
    """
    p, q = g2.p.to_complex(), g2.q.to_complex()
    if p is None or q is None:
        raise GeometryError("endpoint at infinity lies on the axis")
    return complex_length_from_endpoints(p, q)


def perp_between_geodesics(g1: GeodesicBP, g2: GeodesicBP) -> PerpResult:
    """Common perpendicular between two geodesics of ℍ² or ℍ³.

    Rational endpoints take the exact path. Other endpoints are normalized with a complex Möbius
    map sending g1 to ]0, ∞[ and the complex length is read off the images.

    Args:
        g1: First geodesic
        g2: Second geodesic

    Returns:
        The perpendicular (feet only on the exact path)

    Raises:
        GeometryError: Shared endpoint or crossing geodesics
    """
    if g1.is_rational() and g2.is_rational():
        return _perp_real(g1, g2)
    p, q = _complex_endpoints_after_normalizing(g1, g2)
    length, angle = complex_length_from_endpoints(p, q)
    if length == 0.0:
        raise GeometryError("geodesics meet: no common perpendicular")
    return PerpResult(length, angle)


def _entry_complex(value: QuadInt | int) -> complex:
    return value.to_complex() if isinstance(value, QuadInt) else complex(value)


def _perp_on_semicircle(center: complex, half: complex, tol: float) -> PerpResult:
    # The geodesic is the semicircle center + cos φ·half + |half|·sin φ·j, φ ∈ [0, π].
    radius = abs(half)
    unit = half / radius
    # cosh² of the distance to the axis is (A + B cos φ)/(radius² sin² φ)
    big_a = abs(center) ** 2 + radius * radius
    big_b = 2.0 * radius * (center.real * unit.real + center.imag * unit.imag)

    def slope(phi: float) -> float:
        c = math.cos(phi)
        return big_b * c * c + 2.0 * big_a * c + big_b

    phi = bisect_root(slope, 0.0, math.pi, tol)
    z, t = center + radius * math.cos(phi) * unit, radius * math.sin(phi)
    foot = PointH3(z, t)
    length = dist_point_to_vertical_axis(foot)
    tangent = np.array([-math.sin(phi) * unit.real, -math.sin(phi) * unit.imag, math.cos(phi)])
    radial = foot.as_vector() / np.linalg.norm(foot.as_vector())
    cos_t = float(np.clip(np.dot(tangent, radial), -1.0, 1.0))
    axis_foot = PointH3(0j, math.sqrt(abs(z) ** 2 + t * t))
    return PerpResult(length, math.acos(cos_t), (axis_foot, foot))


def perp_geometric_h3(p: complex, q: complex, tol: float = 1e-15) -> PerpResult:
    """Perpendicular from ]0, ∞[ to ]p, q[ found geometrically, as an independent oracle.

    Finds the point of the semicircle over [p, q] closest to the axis by bisection on the sign of
    the derivative of the distance. Then transports the upward axis direction along the
    perpendicular (it stays radial in the vertical plane of the perpendicular) and measures its
    angle with the tangent of ]p, q[.

    Args:
        p: Start point of the oriented geodesic
        q: End point
        tol: Parameter tolerance of the search

    Returns:
        Length, angle and both feet
    """
    if p == 0 or q == 0 or p == q:
        raise GeometryError("endpoint on the axis or degenerate geodesic")
    return _perp_on_semicircle((p + q) / 2, (p - q) / 2, tol)


def perp_geometric_h3_matrix(gamma: Mat2, tol: float = 1e-15) -> PerpResult:
    """Geometric perpendicular from ]0, ∞[ to ]γ·0, γ·∞[ for γ of determinant one.

    The semicircle is built from exact entries: its center is (ad + bc)/(2cd) and the start
    point γ·0 = b/d sits at −1/(2cd) from it. Endpoints that are close compared to their size
    keep their full precision this way.

    Raises:
        GeometryError: An entry vanishes, so an endpoint is 0 or ∞
    """
    if not all(gamma.entries()):
        raise GeometryError("endpoint on the axis")
    if gamma.det() != 1:
        raise DomainError("matrix must have determinant one")
    two_cd = _entry_complex(2 * gamma.c * gamma.d)
    center = _entry_complex(gamma.a * gamma.d + gamma.b * gamma.c) / two_cd
    return _perp_on_semicircle(center, -1.0 / two_cd, tol)


def mobius_h3(m: Mat2, point: PointH3) -> PointH3:
    """Action of a matrix on ℍ³ by the quaternion formula (aP + b)(cP + d)⁻¹, P = z + tj.

    The matrix is rescaled to determinant one first.
    """
    a, b, c, d = m.to_complex()
    det = a * d - b * c
    if det == 0:
        raise DomainError("singular matrix does not act")
    scale = cmath.sqrt(det)
    a, b, c, d = a / scale, b / scale, c / scale, d / scale
    quat = point.as_quaternion()
    num = Quaternion.from_complex(a) * quat + Quaternion.from_complex(b)
    den = Quaternion.from_complex(c) * quat + Quaternion.from_complex(d)
    image = num * den.inverse()
    return PointH3(complex(image.x0, image.x1), image.x2)


def mobius_h2(m: Mat2, point: PointH2) -> PointH2:
    """Action of a real matrix of positive determinant on the upper half-plane."""
    a, b, c, d = (v.real for v in m.to_complex())
    if a * d - b * c <= 0:
        raise DomainError("matrix must have positive determinant")
    w = (a * point.z + b) / (c * point.z + d)
    return PointH2(w.real, w.imag)


def hamenstadt_dist_real(x1: Sequence[float], x2: Sequence[float]) -> float:
    """Hamenstädt distance between points of the height-one horosphere: Euclidean distance."""
    if len(x1) != len(x2):
        raise DomainError("dimension mismatch")
    return float(np.linalg.norm(np.asarray(x1, dtype=np.float64) - np.asarray(x2, dtype=np.float64)))


def hamenstadt_limit(a: float, T: float) -> float:
    """e^{½d − T} for the points (0, e^{−T}) and (a, e^{−T}); tends to a as T grows."""
    h = math.exp(-T)
    d = dist_h2(PointH2(0.0, h), PointH2(a, h))
    return math.exp(0.5 * d - T)


def ray_distance_residual(a: float, t: float) -> float:
    """d(ℓ′(t), ℓ) − (t + ln a + ln 2) for a vertical ray at horizontal offset a.

    The distance is arcosh(√(a² + e^{−2t})/e^{−t}); with ε = a⁻²e^{−2t} the residual equals
    ln((1 + √(1 + ε))/2), evaluated here without cancellation. It behaves like ε/4.

    Args:
        a: Hamenstädt distance between the starting points, a > 0
        t: Time along the ray, t >= 0

    Returns:
        The residual
    """
    if a <= 0:
        raise DomainError("a must be positive")
    if t < 0:
        raise DomainError("t must be nonnegative")
    eps = math.exp(-2.0 * t) / (a * a)
    return math.log1p(eps / (2.0 * (math.sqrt(1.0 + eps) + 1.0)))


def ray_distance(a: float, t: float) -> float:
    """d(ℓ′(t), ℓ) = arcosh(√(a² + e^{−2t})/e^{−t}) evaluated directly."""
    return acosh_stable(math.sqrt(a * a + math.exp(-2.0 * t)) / math.exp(-t))


def dist_to_vertical_ray(offset: float, tol: float = 1e-15) -> float:
    """d(x, D) for x at height one and D the ray rising from height one at horizontal distance ``offset``.

    Minimizes the distance to (0, e^u) over u by golden-section search.
    """

    def dist(u: float) -> float:
        h = math.exp(u)
        chord = math.hypot(offset, 1.0 - h)
        return 2.0 * math.asinh(chord / (2.0 * math.sqrt(h)))

    # the closest point of the full geodesic sits at height √(offset² + 1)
    return dist(golden_section_min(dist, 0.0, math.log(2.0 + offset * offset), tol))


def hamenstadt_bound_check(x: Sequence[float], y: Sequence[float]) -> bool:
    """d_H(x, y) <= e^{d(x, D)} for the vertical ray D above y on the height-one horosphere.

    The distance to D comes from a numerical search along the ray.
    """
    d_h = hamenstadt_dist_real(x, y)
    return d_h <= math.exp(dist_to_vertical_ray(d_h)) * (1.0 + 1e-12)


def complex_length_residual(length: float, angle: float) -> float:
    """ln(cosh λ + cos θ) − (λ − ln 2), which is O(e^{−λ})."""
    return math.log(math.cosh(length) + math.cos(angle)) - (length - _LN2)
