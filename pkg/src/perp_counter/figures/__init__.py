"""Fundamental-domain folding and figure emission."""

from .catalog import build_figure, delta1_axis, divergent_geodesics, perpendicular_family
from .folding import FoldedPoint, FoldedPolyline, fold_geodesic, fold_point
from .svg import Figure, Window, emit_csv, emit_svg

__all__ = [
    "Figure",
    "FoldedPoint",
    "FoldedPolyline",
    "Window",
    "build_figure",
    "delta1_axis",
    "divergent_geodesics",
    "emit_csv",
    "emit_svg",
    "fold_geodesic",
    "fold_point",
    "perpendicular_family",
]
