"""Complex and quaternionic hyperbolic geometry in horospherical coordinates.

Elements of 𝕂 are stored as length-4 quaternion component arrays; complex numbers use the first
two components only, which embeds ℂ ⊂ ℍ as span{1, i}. Vectors of 𝕂^{n−1} form the right vector
space of the Siegel domain, so the Hermitian product is Σ conj(w_i)·w'_i in that order.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..models.base import KField
from ..utils.numeric import acosh_stable

_LN2 = math.log(2.0)


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product of quaternion component arrays of shape (..., 4)."""
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    """Quaternion conjugate."""
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qinv(a: np.ndarray) -> np.ndarray:
    """Quaternion inverse."""
    n = float(np.dot(a, a))
    if n == 0.0:
        raise DomainError("zero has no inverse")
    return qconj(a) / n


def hermitian(w: np.ndarray, w2: np.ndarray) -> np.ndarray:
    """Σ conj(w_i)·w2_i over 𝕂^{n−1}, keeping the left factor conjugated."""
    return qmul(qconj(w), w2).sum(axis=0)


def im_part(x: np.ndarray) -> np.ndarray:
    """Imaginary part ½(x − x̄)."""
    out = x.copy()
    out[..., 0] = 0.0
    return out


def _kvec(values: Sequence[complex | Sequence[float]] | np.ndarray) -> np.ndarray:
    """Vector of 𝕂^{n−1} from complex numbers or 4-tuples."""
    rows = []
    for v in values:
        if isinstance(v, complex | int | float):
            c = complex(v)
            rows.append([c.real, c.imag, 0.0, 0.0])
        else:
            comps = list(v) + [0.0] * (4 - len(v))
            rows.append([float(c) for c in comps[:4]])
    return np.array(rows, dtype=np.float64).reshape(-1, 4)


def _kimag(value: complex | Sequence[float] | np.ndarray) -> np.ndarray:
    if isinstance(value, complex | int | float):
        c = complex(value)
        if c.real != 0.0:
            raise DomainError("u must be purely imaginary")
        return np.array([0.0, c.imag, 0.0, 0.0])
    arr = np.zeros(4)
    comps = np.asarray(value, dtype=np.float64)
    if comps.size == 3:
        arr[1:] = comps
    else:
        arr[: comps.size] = comps
        if arr[0] != 0.0:
            raise DomainError("u must be purely imaginary")
    return arr


def _check_field(kfield: KField, zeta: np.ndarray, u: np.ndarray) -> None:
    if kfield == KField.R:
        raise DomainError("horospherical coordinates are used for C and H only")
    if kfield == KField.C and (np.any(zeta[:, 2:]) or np.any(u[2:])):
        raise DomainError("complex coordinates must not carry j or k components")


@dataclass(frozen=True, eq=False)
class HeisElement:
    """Element (ζ, u) of the Heisenberg group of 𝕂^{n−1} × Im 𝕂."""

    kfield: KField
    zeta: np.ndarray
    u: np.ndarray

    def __post_init__(self) -> None:
        _check_field(self.kfield, self.zeta, self.u)

    @classmethod
    def of(cls, kfield: KField, zeta: Sequence, u: complex | Sequence[float] = 0j) -> HeisElement:
        """Build from complex numbers or quaternion tuples."""
        return cls(kfield, _kvec(zeta), _kimag(u))

    @classmethod
    def identity(cls, kfield: KField, n: int) -> HeisElement:
        """(0, 0) in dimension n."""
        return cls(kfield, np.zeros((n - 1, 4)), np.zeros(4))

    @property
    def n(self) -> int:
        """Dimension of the hyperbolic space."""
        return self.zeta.shape[0] + 1

    def zeta_norm_sq(self) -> float:
        """|ζ|²."""
        return float(np.sum(self.zeta * self.zeta))

    def u_norm(self) -> float:
        """|u|."""
        return float(np.linalg.norm(self.u))


@dataclass(frozen=True, eq=False)
class HsPoint:
    """Horospherical coordinates (ζ, u, t); t = 0 for boundary points."""

    kfield: KField
    zeta: np.ndarray
    u: np.ndarray
    t: float

    def __post_init__(self) -> None:
        _check_field(self.kfield, self.zeta, self.u)
        if self.t < 0:
            raise DomainError("height t must be nonnegative")

    @classmethod
    def of(cls, kfield: KField, zeta: Sequence, u: complex | Sequence[float], t: float) -> HsPoint:
        """Build from complex numbers or quaternion tuples."""
        return cls(kfield, _kvec(zeta), _kimag(u), float(t))

    @property
    def element(self) -> HeisElement:
        """The (ζ, u) part."""
        return HeisElement(self.kfield, self.zeta, self.u)


def _same_space(g1: HeisElement | HsPoint, g2: HeisElement | HsPoint) -> None:
    if g1.kfield != g2.kfield or g1.zeta.shape != g2.zeta.shape:
        raise DomainError("elements live in different Heisenberg groups")


def heis_mul(g1: HeisElement, g2: HeisElement) -> HeisElement:
    """(ζ′, u′)(ζ, u) = (ζ′ + ζ, u′ + u + 2 Im ζ̄′·ζ)."""
    _same_space(g1, g2)
    return HeisElement(g1.kfield, g1.zeta + g2.zeta, g1.u + g2.u + 2.0 * im_part(hermitian(g1.zeta, g2.zeta)))


def heis_inverse(g: HeisElement) -> HeisElement:
    """(−ζ, −u)."""
    return HeisElement(g.kfield, -g.zeta, -g.u)


def heis_translate(g: HeisElement, p: HsPoint) -> HsPoint:
    """Heisenberg translation τ_g, an isometry fixing ∞ and preserving heights."""
    image = heis_mul(g, p.element)
    return HsPoint(p.kfield, image.zeta, image.u, p.t)


def heis_dilate(lam: float, p: HsPoint) -> HsPoint:
    """h_λ: (ζ, u, t) ↦ (λζ, λ²u, λ²t).

    Raises:
        DomainError: λ <= 0
    """
    if lam <= 0:
        raise DomainError("dilation factor must be positive")
    return HsPoint(p.kfield, lam * p.zeta, lam * lam * p.u, lam * lam * p.t)


def _cygan_parts(g1: HeisElement, g2: HeisElement) -> tuple[float, float]:
    h = heis_mul(heis_inverse(g1), g2)
    return h.zeta_norm_sq(), h.u_norm()


def cygan_dist(g1: HeisElement, g2: HeisElement) -> float:
    """Cygan distance, ⁴√(|ζ|⁴ + |u|²) at g1⁻¹g2."""
    z2, un = _cygan_parts(g1, g2)
    return math.sqrt(math.hypot(z2, un))


def cygan_mod_dist(g1: HeisElement, g2: HeisElement) -> float:
    """Modified Cygan distance, √(|ζ|² + ||ζ|² + u|) at g1⁻¹g2."""
    z2, un = _cygan_parts(g1, g2)
    return math.sqrt(z2 + math.hypot(z2, un))


def dist_to_vertical_axis_K(p: HsPoint) -> tuple[float, HsPoint]:
    """Distance from p to the geodesic line ]0, ∞[ and the orthogonal projection.

    The projection is (0, 0, ||ζ|² + t + u|) and the distance
    ½·arcosh((|ζ|² + ||ζ|² + t + u|)/t).

    Args:
        p: Interior point

    Returns:
        (distance, projection)
    """
    if p.t <= 0:
        raise DomainError("point must lie in the interior (t > 0)")
    z2 = float(np.sum(p.zeta * p.zeta))
    modulus = math.hypot(z2 + p.t, float(np.linalg.norm(p.u)))
    n = p.zeta.shape[0] + 1
    projection = HsPoint(p.kfield, np.zeros((n - 1, 4)), np.zeros(4), modulus)
    return 0.5 * acosh_stable((z2 + modulus) / p.t), projection


def _sphere_parts(center: HsPoint, p: HsPoint) -> tuple[float, np.ndarray]:
    _same_space(center, p)
    diff = p.zeta - center.zeta
    real = center.t + float(np.sum(diff * diff)) + p.t
    imag = p.u - center.u - 2.0 * im_part(hermitian(center.zeta, p.zeta))
    return real, imag


def sphere_residual(center: HsPoint, rho: float, p: HsPoint) -> float:
    """Left side minus right side of the sphere equation for S(center, ρ).

    |t₀ + |ζ − ζ₀|² + t + (u − u₀ − 2 Im ζ̄₀·ζ)|² − 4 t₀ t cosh²ρ, zero exactly on the sphere.
    """
    real, imag = _sphere_parts(center, p)
    return real * real + float(np.dot(imag, imag)) - 4.0 * center.t * p.t * math.cosh(rho) ** 2


def heis_dist(p: HsPoint, q: HsPoint) -> float:
    """Hyperbolic distance between interior points, read off the sphere equation centered at p."""
    real, imag = _sphere_parts(p, q)
    return acosh_stable(math.hypot(real, float(np.linalg.norm(imag))) / (2.0 * math.sqrt(p.t * q.t)))


def heis_ray_distance(s: float, g: HeisElement) -> float:
    """d(ℓ′(s), ℓ) for ℓ′(s) = (ζ, u, e^{−2s}) and ℓ = ]0, ∞[."""
    point = HsPoint(g.kfield, g.zeta, g.u, math.exp(-2.0 * s))
    return dist_to_vertical_axis_K(point)[0]


def heis_ray_residual(s: float, g: HeisElement) -> float:
    """d(ℓ′(s), ℓ) − (s + ln d′ + ln 2) with d′ = d′_Cyg(g, 0)/√2 the horosphere distance.

    Evaluated in a cancellation-free form; the residual behaves like d′⁻²e^{−2s}.

    Args:
        s: Time along the geodesic leaving the horoball, s >= 0
        g: Foot of that geodesic on the unit horosphere, with d_Cyg(g, 0) >= 1

    Returns:
        The residual
    """
    if s < 0:
        raise DomainError("s must be nonnegative")
    ident = HeisElement.identity(g.kfield, g.n)
    if cygan_dist(g, ident) < 1.0:
        raise DomainError("the horosphere distance from the axis foot must be at least 1")
    z2, un = g.zeta_norm_sq(), g.u_norm()
    tau = math.exp(-2.0 * s)
    big = math.hypot(z2, un)
    d_prime_sq = z2 + big
    shifted = math.hypot(z2 + tau, un)
    y = z2 + shifted
    gap = (2.0 * z2 * tau + tau * tau) / (shifted + big)
    num = 2.0 * gap - tau * tau / (math.sqrt(y * y - tau * tau) + y)
    return 0.5 * math.log1p(num / (2.0 * d_prime_sq))


def horosphere_dist(t: float, g1: HeisElement, g2: HeisElement) -> float:
    """Hamenstädt distance on the horosphere of height t, transported to height 1 by dilation."""
    if t <= 0:
        raise DomainError("height must be positive")
    lam = 1.0 / math.sqrt(t)
    p1 = heis_dilate(lam, HsPoint(g1.kfield, g1.zeta, g1.u, t))
    p2 = heis_dilate(lam, HsPoint(g2.kfield, g2.zeta, g2.u, t))
    return cygan_dist(p1.element, p2.element)


def hamenstadt_limit_K(t: float, g1: HeisElement, g2: HeisElement, T: float = 20.0) -> float:
    """e^{½d(x_T, y_T) − T} for x = (g1, t) and y = (g2, t) pushed down to height t·e^{−2T}.

    Tends to the Hamenstädt distance on the horosphere of height t as T grows.
    """
    if t <= 0:
        raise DomainError("height must be positive")
    tau = t * math.exp(-2.0 * T)
    p1 = HsPoint(g1.kfield, g1.zeta, g1.u, tau)
    p2 = HsPoint(g2.kfield, g2.zeta, g2.u, tau)
    return math.exp(0.5 * heis_dist(p1, p2) - T)


def horosphere_scaling_check(t1: float, t2: float, g1: HeisElement, g2: HeisElement, tol: float = 1e-12) -> bool:
    """d_{H_{t1}} = √(t2/t1)·d_{H_{t2}} for 0 < t1 <= t2.

    The left side is the Cygan distance transported by dilation; the right side comes from the
    limit defining the Hamenstädt distance.
    """
    if not 0 < t1 <= t2:
        raise DomainError("need 0 < t1 <= t2")
    lhs = horosphere_dist(t1, g1, g2)
    rhs = math.sqrt(t2 / t1) * hamenstadt_limit_K(t2, g1, g2)
    return abs(lhs - rhs) <= tol * max(1.0, abs(lhs))


def horospherical_to_siegel(p: HsPoint) -> tuple[np.ndarray, np.ndarray]:
    """(w₀, w) = ((|ζ|² + t + u)/2, ζ)."""
    w0 = p.u.copy()
    w0[0] += float(np.sum(p.zeta * p.zeta)) + p.t
    return w0 / 2.0, p.zeta.copy()


def siegel_to_horospherical(kfield: KField, w0: np.ndarray, w: np.ndarray) -> HsPoint:
    """(ζ, u, t) = (w, w₀ − w̄₀, 2 Re w₀ − |w|²)."""
    return HsPoint(kfield, w.copy(), w0 - qconj(w0), 2.0 * float(w0[0]) - float(np.sum(w * w)))


def ball_to_siegel(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cayley transform from the unit ball of 𝕂ⁿ: ((1 − z_n)/2, z₁, …, z_{n−1})·(1 + z_n)⁻¹."""
    zn = z[-1]
    one = np.array([1.0, 0.0, 0.0, 0.0])
    right = qinv(one + zn)
    w0 = qmul((one - zn) / 2.0, right)
    w = qmul(z[:-1], np.broadcast_to(right, z[:-1].shape))
    return w0, w


def siegel_to_ball(w0: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Inverse Cayley transform (2w, 1 − 2w₀)·(1 + 2w₀)⁻¹."""
    one = np.array([1.0, 0.0, 0.0, 0.0])
    right = qinv(one + 2.0 * w0)
    head = qmul(2.0 * w, np.broadcast_to(right, w.shape))
    tail = qmul(one - 2.0 * w0, right)
    return np.vstack([head, tail[None, :]])


def dist_from_base_point(p: HsPoint) -> float:
    """Distance from (0, 0, 1) via the ball model, where S(0, ρ) is the sphere of radius tanh ρ."""
    w0, w = horospherical_to_siegel(p)
    z = siegel_to_ball(w0, w)
    return math.atanh(min(float(np.linalg.norm(z)), 1.0 - 1e-16))
