"""Deterministic SVG and CSV emission for folded figures.

Everything is drawn with ``path`` elements and six-decimal coordinates so identical inputs give
identical bytes.
"""

from __future__ import annotations

import csv
import io
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Any

from ..errors import DomainError
from .folding import FoldedPolyline, word_str

SVG_WIDTH = 600
# Fixed palette, assigned to series in sorted order
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#e6a817", "#9467bd", "#8c564b", "#17becf", "#7f7f7f")
BOUNDARY_COLOR = "#000000"


@dataclass(frozen=True)
class Window:
    """Half-plane region shown by a figure."""

    x0: float = -0.5
    x1: float = 0.5
    y0: float = 0.0
    y1: float = 2.0

    def __post_init__(self) -> None:
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise DomainError(f"empty window {self!r}")

    def contains(self, z: complex) -> bool:
        """True when z lies in the closed window."""
        return self.x0 <= z.real <= self.x1 and self.y0 <= z.imag <= self.y1


@dataclass
class Figure:
    """Polylines and point markers drawn over the fundamental domain."""

    title: str
    polylines: list[FoldedPolyline] = field(default_factory=list)
    markers: list[tuple[complex, str]] = field(default_factory=list)
    window: Window = field(default_factory=Window)
    meta: dict[str, Any] = field(default_factory=dict)

    def series(self) -> list[str]:
        """Distinct series labels in sorted order."""
        return sorted({line.series for line in self.polylines} | {label for _, label in self.markers})


def _fmt(value: float) -> str:
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


class _Canvas:
    def __init__(self, window: Window) -> None:
        self.window = window
        self.scale = SVG_WIDTH / (window.x1 - window.x0)
        self.height = (window.y1 - window.y0) * self.scale

    def xy(self, z: complex) -> tuple[str, str]:
        return _fmt((z.real - self.window.x0) * self.scale), _fmt((self.window.y1 - z.imag) * self.scale)


def _clip(points: tuple[complex, ...], window: Window) -> list[list[complex]]:
    """Split a polyline into the runs of points inside the window."""
    runs: list[list[complex]] = []
    run: list[complex] = []
    for z in points:
        if window.contains(z):
            run.append(z)
        elif run:
            runs.append(run)
            run = []
    if run:
        runs.append(run)
    return runs


def _boundary_path(canvas: _Canvas) -> str:
    """Vertical sides Re z = ±½ above the corners and the unit-circle arc between them."""
    corner = math.sqrt(3.0) / 2.0
    top = canvas.window.y1
    lx, ly = canvas.xy(complex(-0.5, corner))
    rx, ry = canvas.xy(complex(0.5, corner))
    tlx, tly = canvas.xy(complex(-0.5, top))
    trx, try_ = canvas.xy(complex(0.5, top))
    radius = _fmt(canvas.scale)
    return f"M{tlx} {tly} L{lx} {ly} A{radius} {radius} 0 0 1 {rx} {ry} L{trx} {try_}"


def _marker_path(canvas: _Canvas, z: complex, size: float = 4.0) -> str:
    x, y = canvas.xy(z)
    r = _fmt(size)
    left, right = _fmt(float(x) - size), _fmt(float(x) + size)
    return f"M{left} {y} A{r} {r} 0 1 0 {right} {y} A{r} {r} 0 1 0 {left} {y} Z"


def emit_svg(figure: Figure) -> str:
    """Render a figure as an SVG 1.1 document.

    Args:
        figure: Polylines, markers and window

    Returns:
        The document text; an empty figure still yields the boundary of the domain
    """
    canvas = _Canvas(figure.window)
    colors = {name: PALETTE[i % len(PALETTE)] for i, name in enumerate(figure.series())}
    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=f"{SVG_WIDTH}",
        height=_fmt(canvas.height),
        viewBox=f"0 0 {SVG_WIDTH} {_fmt(canvas.height)}",
    )
    ET.SubElement(root, "title").text = figure.title
    ET.SubElement(
        root, "path", d=_boundary_path(canvas), fill="none", stroke=BOUNDARY_COLOR, **{"stroke-width": "1"}
    )
    for line in figure.polylines:
        for run in _clip(line.points, figure.window):
            if len(run) < 2:
                continue
            coords = [canvas.xy(z) for z in run]
            d = f"M{coords[0][0]} {coords[0][1]} " + " ".join(f"L{x} {y}" for x, y in coords[1:])
            ET.SubElement(
                root,
                "path",
                d=d,
                fill="none",
                stroke=colors[line.series],
                **{"stroke-width": "1.5", "data-series": line.series, "data-word": word_str(line.word)},
            )
    for z, label in figure.markers:
        if figure.window.contains(z):
            ET.SubElement(root, "path", d=_marker_path(canvas, z), fill=colors[label], **{"data-series": label})
    return ET.tostring(root, encoding="unicode") + "\n"


def emit_csv(figure: Figure) -> str:
    """Folded samples as CSV with columns series, polyline, index, x, y, word."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["series", "polyline", "index", "x", "y", "word"])
    for n, line in enumerate(figure.polylines):
        for i, z in enumerate(line.points):
            writer.writerow([line.series, n, i, repr(z.real), repr(z.imag), word_str(line.word)])
    return buffer.getvalue()
