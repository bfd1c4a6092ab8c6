"""Hyperbolic geometry over ℝ, ℂ and ℍ."""

from .heisenberg import (
    HeisElement,
    HsPoint,
    cygan_dist,
    cygan_mod_dist,
    dist_to_vertical_axis_K,
    heis_dilate,
    heis_inverse,
    heis_mul,
    horosphere_scaling_check,
    heis_ray_residual,
)
from .real import (
    GeodesicBP,
    PerpResult,
    PointH2,
    PointH3,
    complex_length_h3,
    dist_h2,
    dist_h3,
    dist_point_to_vertical_axis,
    hamenstadt_dist_real,
    hamenstadt_bound_check,
    ray_distance_residual,
    perp_between_geodesics,
    perp_geometric_h3,
    perp_vertical_to_nested,
)
from .xi import xi_constant, xi_constant_spheres, xi_monte_carlo, xi_real

__all__ = [
    "GeodesicBP",
    "HeisElement",
    "HsPoint",
    "PerpResult",
    "PointH2",
    "PointH3",
    "complex_length_h3",
    "cygan_dist",
    "cygan_mod_dist",
    "dist_h2",
    "dist_h3",
    "dist_point_to_vertical_axis",
    "dist_to_vertical_axis_K",
    "hamenstadt_dist_real",
    "heis_dilate",
    "heis_inverse",
    "heis_mul",
    "horosphere_scaling_check",
    "hamenstadt_bound_check",
    "ray_distance_residual",
    "heis_ray_residual",
    "perp_between_geodesics",
    "perp_geometric_h3",
    "perp_vertical_to_nested",
    "xi_constant",
    "xi_constant_spheres",
    "xi_monte_carlo",
    "xi_real",
]
