"""Divisor-counting sieves over the integers and over imaginary quadratic rings.

The quadratic sieve stores d_K/|O_K^×| (the number of divisor classes) in a 16-bit table laid
out by lattice rows: row = y + Y and col = x + (y·D + S + 1)//2 with S = ⌊√(4B)⌋. The element
k − 1 sits in the same row as k, one column to the left, so band-segmented evaluation needs no
row overlap.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import DomainError, SieveMemoryError
from ..logging_config import get_logger
from .rings import Discriminant, QuadInt, elements_of_norm_at_most, is_canonical, units

logger = get_logger(__name__)

DEFAULT_BAND_BYTES = 512 * 1024 * 1024
_CHUNK_POINTS = 1 << 22
_CELL_BYTES = 2


@dataclass(frozen=True)
class SieveTableZ:
    """counts[k] = d(k) for 1 <= k <= n_max (counts[0] is unused)."""

    n_max: int
    counts: np.ndarray

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.n_max:
            raise IndexError(f"{k} outside 1..{self.n_max}")
        return int(self.counts[k])


def sieve_d(n_max: int) -> SieveTableZ:
    """Number of positive divisors of every k <= n_max.

    Each pair d < k/d with d <= √k is marked twice, square divisors once.

    Args:
        n_max: Upper bound (inclusive)

    Returns:
        The divisor table
    """
    if n_max < 1:
        raise DomainError("n_max must be positive")
    counts = np.zeros(n_max + 1, dtype=np.int32)
    for d in range(1, math.isqrt(n_max) + 1):
        counts[d * d :: d] += 2
        counts[d * d] -= 1
    logger.debug(f"sieve_d: n_max={n_max}")
    return SieveTableZ(n_max=n_max, counts=counts)


def smallest_prime_factors(n_max: int) -> np.ndarray:
    """Smallest prime factor of every k <= n_max (spf[0] = spf[1] = 0)."""
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n_max) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
            spf[p * p :: p] = block
    rest = np.nonzero(spf == 0)[0]
    spf[rest[rest >= 2]] = rest[rest >= 2]
    return spf


def divisors_from_spf(k: int, spf: np.ndarray) -> list[int]:
    """Positive divisors of k using a smallest-prime-factor table."""
    divs = [1]
    while k > 1:
        p = int(spf[k])
        e = 0
        while k % p == 0:
            k //= p
            e += 1
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return divs


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n from an odd-only boolean sieve."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    size = (n - 1) // 2
    is_odd_prime = np.ones(size + 1, dtype=bool)
    is_odd_prime[0] = False  # 1
    for i in range(1, (math.isqrt(n) - 1) // 2 + 1):
        if is_odd_prime[i]:
            p = 2 * i + 1
            is_odd_prime[(p * p - 1) // 2 :: p] = False
    odd = 2 * np.nonzero(is_odd_prime)[0] + 1
    return np.concatenate(([2], odd)).astype(np.int64)


def divisor_sum_rational(n: int) -> int:
    """Exact value of Σ_{k=1}^{n} d(k)·d(k+1).

    Args:
        n: Upper summation bound

    Returns:
        The sum as a Python integer
    """
    if n < 1:
        raise DomainError("n must be positive")
    counts = sieve_d(n + 1).counts.astype(np.int64)
    return int(np.dot(counts[1 : n + 1], counts[2 : n + 2]))


def divisor_sums_rational(bounds: list[int]) -> list[int]:
    """Σ_{k<=K} d(k)·d(k+1) for several K from one sieve."""
    if not bounds:
        return []
    counts = sieve_d(max(bounds) + 1).counts.astype(np.int64)
    prefix = np.concatenate(([0], np.cumsum(counts[1:-1] * counts[2:])))
    return [int(prefix[k]) for k in bounds]


def _sqrt_minus_one(p: int) -> int:
    """A square root of −1 modulo a prime p ≡ 1 (mod 4)."""
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return pow(a, (p - 1) // 4, p)
    raise DomainError(f"-1 is not a square modulo {p}")


def _strip_prime(vals: np.ndarray, counts: np.ndarray, idx: np.ndarray, p: int) -> None:
    sub = vals[idx]
    exps = np.zeros(idx.size, dtype=np.int64)
    mask = sub % p == 0
    while mask.any():
        sub[mask] //= p
        exps[mask] += 1
        mask = sub % p == 0
    vals[idx] = sub
    counts[idx] *= exps + 1


def square_plus_divisor_counts(m_max: int, c: int = 1) -> np.ndarray:
    """d(r² + c) for every 0 <= r <= m_max, with c = 1 or c = 4.

    Sieves the polynomial values over the residue classes of the roots of r² ≡ −c modulo each
    prime up to √(m_max² + c); what is left after that is 1 or a single large prime.

    Args:
        m_max: Largest r
        c: Constant term, 1 or 4

    Returns:
        Array of length m_max + 1
    """
    if c not in (1, 4):
        raise DomainError("only r^2 + 1 and r^2 + 4 are sieved")
    if m_max < 0:
        raise DomainError("m_max must be nonnegative")
    r = np.arange(m_max + 1, dtype=np.int64)
    vals = r * r + c
    counts = np.ones(m_max + 1, dtype=np.int64)
    _strip_prime(vals, counts, np.nonzero(vals % 2 == 0)[0], 2)
    for p in primes_up_to(math.isqrt(m_max * m_max + c))[1:].tolist():
        if p % 4 != 1:
            continue
        root = _sqrt_minus_one(p) * (1 if c == 1 else 2) % p
        for r0 in {root, p - root}:
            if r0 <= m_max:
                _strip_prime(vals, counts, np.arange(r0, m_max + 1, p, dtype=np.int64), p)
    counts[vals > 1] *= 2
    logger.debug(f"square_plus_divisor_counts: m_max={m_max} c={c}")
    return counts


def divisors_of(n: int) -> list[int]:
    """Positive divisors of n by trial division."""
    if n < 1:
        raise DomainError("n must be positive")
    divs = [1]
    for p, e in _factor_int(n).items():
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def dK_direct(x: QuadInt) -> int:
    """Count every nonzero d in the ring dividing x, unit multiples included.

    Enumerates all lattice points of norm at most N(x); meant as an oracle.

    Args:
        x: Nonzero ring element

    Returns:
        d_K(x)
    """
    if not x:
        raise DomainError("d_K(0) is undefined")
    n = x.norm()
    return sum(1 for d in elements_of_norm_at_most(x.disc, n) if d and n % d.norm() == 0 and d.divides(x))


# --- element factorization for principal rings -------------------------------------------------


def _factor_int(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@lru_cache(maxsize=65536)
def _prime_elements_above(disc: Discriminant, p: int) -> tuple[QuadInt, ...]:
    """Canonical prime elements above the rational prime p (principal rings only)."""
    from .rings import elements_of_norm

    above = {e for e in elements_of_norm(disc, p) if is_canonical(e)}
    if not above:
        return (QuadInt(p, 0, disc),)
    return tuple(sorted(above, key=lambda e: (e.y, e.x)))


def element_divisors(x: QuadInt) -> list[QuadInt]:
    """All divisors of x in a principal ring, unit multiples included.

    Factors N(x) over the integers, splits each prime in the ring and reads off the exponents
    of x. Falls back to lattice enumeration when the ring is not principal.

    Args:
        x: Nonzero ring element

    Returns:
        Every divisor (d_K(x) elements)
    """
    if not x:
        raise DomainError("0 has infinitely many divisors")
    disc = x.disc
    if not disc.is_principal or disc.is_rational:
        n = x.norm()
        return [d for d in elements_of_norm_at_most(disc, n) if d and n % d.norm() == 0 and d.divides(x)]
    classes = [QuadInt(1, 0, disc)]
    rest = x
    for p in _factor_int(x.norm()):
        for pi in _prime_elements_above(disc, p):
            e = 0
            while True:
                q = rest.exact_div(pi)
                if q is None:
                    break
                rest = q
                e += 1
            if e:
                powers = [QuadInt(1, 0, disc)]
                for _ in range(e):
                    powers.append(powers[-1] * pi)
                classes = [c * w for c in classes for w in powers]
    if rest.norm() != 1:
        raise DomainError(f"incomplete factorization of {x!r}")
    return [c * u for c in classes for u in units(disc)]


# --- quadratic lattice sieve ---------------------------------------------------------------------


def _isqrt_vec(values: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(values.astype(np.float64))).astype(np.int64)
    r += ((r + 1) * (r + 1) <= values).astype(np.int64)
    r -= (r * r > values).astype(np.int64)
    return r


@dataclass(frozen=True)
class LatticeLayout:
    """Row/column layout of the lattice points of norm <= bound."""

    disc: Discriminant
    bound: int

    @property
    def y_max(self) -> int:
        """Largest |y| with a point inside the disk."""
        return math.isqrt(4 * self.bound // self.disc.abs_d)

    @property
    def span(self) -> int:
        """S = ⌊√(4B)⌋, the bound on |2x + yD|."""
        return math.isqrt(4 * self.bound)

    @property
    def height(self) -> int:
        """Number of rows."""
        return 2 * self.y_max + 1

    @property
    def width(self) -> int:
        """Number of columns."""
        return self.span + 1

    def table_bytes(self, rows: int | None = None) -> int:
        """Bytes of a 16-bit table with the given number of rows."""
        return (self.height if rows is None else rows) * self.width * _CELL_BYTES

    def cell(self, x: int, y: int) -> tuple[int, int]:
        """(row, col) of x + yω."""
        return y + self.y_max, x + (y * self.disc.D + self.span + 1) // 2

    def cells_vec(self, xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized :meth:`cell`."""
        return ys + self.y_max, xs + (ys * self.disc.D + self.span + 1) // 2

    def coords_of_rows(self, row_lo: int, row_hi: int) -> tuple[np.ndarray, np.ndarray]:
        """Grids (x, y) of every cell in rows [row_lo, row_hi)."""
        ys = np.arange(row_lo, row_hi, dtype=np.int64)[:, None] - self.y_max
        cols = np.arange(self.width, dtype=np.int64)[None, :]
        xs = cols - (ys * self.disc.D + self.span + 1) // 2
        return xs, np.broadcast_to(ys, xs.shape)

    def norms(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Vectorized norm."""
        return xs * xs + self.disc.D * xs * ys - self.disc.c0 * ys * ys


def _disk_points(disc: Discriminant, bound: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Lattice points of norm <= bound, in row chunks of bounded size."""
    abs_d = disc.abs_d
    y_max = math.isqrt(4 * bound // abs_d)
    row_len = math.isqrt(4 * bound) + 1
    rows_per_chunk = max(1, _CHUNK_POINTS // row_len)
    for y_lo in range(-y_max, y_max + 1, rows_per_chunk):
        ys = np.arange(y_lo, min(y_lo + rows_per_chunk, y_max + 1), dtype=np.int64)
        rest = 4 * bound - ys * ys * abs_d
        keep = rest >= 0
        ys, rest = ys[keep], rest[keep]
        if ys.size == 0:
            continue
        r = _isqrt_vec(rest)
        yd = ys * disc.D
        u0 = -r + ((-r - yd) % 2)
        cnt = np.where(u0 <= r, (r - u0) // 2 + 1, 0)
        total = int(cnt.sum())
        if total == 0:
            continue
        starts = np.cumsum(cnt) - cnt
        offs = np.arange(total, dtype=np.int64) - np.repeat(starts, cnt)
        u = np.repeat(u0, cnt) + 2 * offs
        yy = np.repeat(ys, cnt)
        xx = (u - np.repeat(yd, cnt)) // 2
        yield xx, yy


def canonical_divisor_candidates(disc: Discriminant, max_norm: int) -> list[QuadInt]:
    """Canonical representatives (modulo units) of all elements of norm <= max_norm."""
    return [q for q in elements_of_norm_at_most(disc, max_norm) if is_canonical(q)]


def _sieve_rows(layout: LatticeLayout, row_lo: int, row_hi: int) -> np.ndarray:
    """Divisor-class counts for rows [row_lo, row_hi) of the layout."""
    disc = layout.disc
    bound = layout.bound
    table = np.zeros((row_hi - row_lo, layout.width), dtype=np.uint16)
    c0, dd = disc.c0, disc.D
    for d in canonical_divisor_candidates(disc, math.isqrt(bound)):
        nd = d.norm()
        for mx, my in _disk_points(disc, bound // nd):
            nm = layout.norms(mx, my)
            inner = nm >= nd
            mx, my, nm = mx[inner], my[inner], nm[inner]
            kx = d.x * mx + d.y * my * c0
            ky = d.x * my + d.y * mx + d.y * my * dd
            rows, cols = layout.cells_vec(kx, ky)
            in_band = (rows >= row_lo) & (rows < row_hi)
            weight = np.where(nm[in_band] > nd, 2, 1).astype(np.uint16)
            # m -> d*m is injective, so the fancy-index update has no repeated cells
            table[rows[in_band] - row_lo, cols[in_band]] += weight
    return table


@dataclass(frozen=True)
class SieveTableK:
    """Divisor counts d_K for all lattice points of norm <= bound."""

    disc: Discriminant
    radius: int
    layout: LatticeLayout
    classes: np.ndarray

    @property
    def units_count(self) -> int:
        """|O_K^×|; every count is a multiple of it."""
        return self.disc.units_count

    def __getitem__(self, q: QuadInt) -> int:
        if q.norm() > self.layout.bound:
            raise KeyError(f"{q!r} outside the sieved disk")
        row, col = self.layout.cell(q.x, q.y)
        return int(self.classes[row, col]) * self.units_count

    def counts(self) -> np.ndarray:
        """d_K over the whole layout as a 32-bit array (0 outside the disk and at 0)."""
        return self.classes.astype(np.uint32) * np.uint32(self.units_count)


def sieve_dK(disc: Discriminant, N: int, band_bytes: int = DEFAULT_BAND_BYTES) -> SieveTableK:
    """d_K(x) for every x with 0 < N(x) <= N².

    Marks every product d·m with d canonical modulo units and N(d) <= N(m), the hyperbola
    trick over the ring, then scales by the number of units.

    Args:
        disc: Imaginary quadratic discriminant
        N: Radius (norm bound N²)
        band_bytes: Memory bound for the table

    Returns:
        The sieve table
    """
    if N < 1:
        raise DomainError("radius must be positive")
    if disc.is_rational:
        raise DomainError("use sieve_d for the integers")
    layout = LatticeLayout(disc, N * N)
    needed = layout.table_bytes()
    if needed > band_bytes:
        rows = max(1, band_bytes // layout.table_bytes(1))
        raise SieveMemoryError(
            f"sieve table needs {needed} bytes (> {band_bytes}); use bands of at most {rows} rows",
            needed_bytes=needed,
            band_rows=rows,
        )
    logger.debug(f"sieve_dK: {disc} N={N} table={layout.height}x{layout.width}")
    return SieveTableK(disc=disc, radius=N, layout=layout, classes=_sieve_rows(layout, 0, layout.height))


def _band_pair_sum(layout: LatticeLayout, row_lo: int, row_hi: int, inner_bound: int, shift: int) -> int:
    table = _sieve_rows(layout, row_lo, row_hi).astype(np.int64)
    xs, ys = layout.coords_of_rows(row_lo, row_hi)
    inner = layout.norms(xs, ys) <= inner_bound
    # d_K(0) is stored as 0, so k = 0 and the k with k + shift = 0 drop out on their own
    if shift < 0:
        k_vals, nb_vals, mask = table[:, 1:], table[:, :-1], inner[:, 1:]
    else:
        k_vals, nb_vals, mask = table[:, :-1], table[:, 1:], inner[:, :-1]
    return int((k_vals * nb_vals)[mask].sum())


def band_rows_for(layout: LatticeLayout, band_bytes: int) -> int:
    """Rows per band so that one band table fits in band_bytes."""
    return max(1, min(layout.height, band_bytes // layout.table_bytes(1)))


def divisor_sum_quadratic(
    disc: Discriminant,
    N: int,
    shift: int = -1,
    band_bytes: int = DEFAULT_BAND_BYTES,
    threads: int = 1,
) -> int:
    """Exact Σ d_K(k)·d_K(k + shift) over k ≠ 0, −shift with N(k) <= N².

    Args:
        disc: Imaginary quadratic discriminant
        N: Radius (N >= 2)
        shift: -1 for the (k, k−1) pairing, +1 for (k, k+1)
        band_bytes: Memory bound per band table
        threads: Number of bands evaluated concurrently

    Returns:
        The sum as a Python integer
    """
    if N < 2:
        raise DomainError("radius must be at least 2")
    if shift not in (-1, 1):
        raise DomainError("shift must be -1 or +1")
    if disc.is_rational:
        raise DomainError("use divisor_sum_rational for the integers")
    layout = LatticeLayout(disc, (N + 1) * (N + 1))
    rows = band_rows_for(layout, band_bytes)
    bands = [(lo, min(lo + rows, layout.height)) for lo in range(0, layout.height, rows)]
    if len(bands) > 1:
        logger.warning(f"sieve for {disc} N={N} split into {len(bands)} bands of {rows} rows")
    logger.debug(f"divisor_sum_quadratic: {disc} N={N} table={layout.height}x{layout.width} threads={threads}")
    if threads > 1 and len(bands) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda b: _band_pair_sum(layout, b[0], b[1], N * N, shift), bands))
    else:
        partials = [_band_pair_sum(layout, lo, hi, N * N, shift) for lo, hi in bands]
    # merge in band order
    total = 0
    for part in partials:
        total += part
    return total * disc.units_count**2


def ideal_divisor_sum(disc: Discriminant, N: int, **kwargs: int) -> int:
    """Divisor-class version of :func:`divisor_sum_quadratic` (divided by |O_K^×|²)."""
    return divisor_sum_quadratic(disc, N, **kwargs) // disc.units_count**2
