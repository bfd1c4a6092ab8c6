"""Tests for folding into the modular fundamental domain and the figure emitters."""

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_sl2z
from perp_counter.arith.matrices import Mat2
from perp_counter.errors import DomainError
from perp_counter.figures.catalog import (
    axis_endpoints,
    build_figure,
    divergent_geodesics,
    divergent_rationals,
    perpendicular_family,
)
from perp_counter.figures.folding import (
    apply_matrix,
    fold_geodesic,
    fold_point,
    geodesic_points,
    word_matrix,
    word_str,
)
from perp_counter.figures.svg import Figure, Window, emit_csv, emit_svg
from perp_counter.models.base import FigureKind
from perp_counter.services.ambiguous import double_perp

SVG_NS = "{http://www.w3.org/2000/svg}"
P = Mat2(2, 1, 3, 2)
FAMILY = Mat2(23, 25, 11, 12)


def _in_domain(z: complex) -> bool:
    return -0.5 <= z.real < 0.5 and abs(z) >= 1.0 - 1e-12


def test_fold_translate():
    folded = fold_point(3 + 2j)
    assert folded.z == 2j
    assert folded.word == (("T", -3),)
    assert apply_matrix(word_matrix(folded.word), 3 + 2j) == pytest.approx(2j)


def test_fold_lands_in_domain_with_consistent_word(rng):
    for _ in range(200):
        z = complex(rng.uniform(-5, 5), rng.uniform(0.01, 2.0))
        folded = fold_point(z)
        assert _in_domain(folded.z)
        assert apply_matrix(folded.matrix, z) == pytest.approx(folded.z, abs=1e-8)


def test_fold_is_invariant_under_the_group(rng):
    z = 0.2 + 1.7j
    for _ in range(20):
        m = random_sl2z(rng)
        assert fold_point(apply_matrix(m, z)).z == pytest.approx(z, abs=1e-9)


def test_fold_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        fold_point(0.3 - 1j)


def test_word_str():
    assert word_str(()) == "1"
    assert word_str((("T", -3), ("S", 1))) == "T^-3 S"


def test_geodesic_points_lie_on_the_circle():
    pts = geodesic_points((-1.0, 3.0), np.linspace(-2.0, 2.0, 9))
    assert np.allclose(np.abs(pts - 1.0), 2.0)
    assert pts[4] == pytest.approx(1.0 + 2.0j)
    vertical = geodesic_points((0.5, None), np.array([0.0, 1.0]))
    assert vertical[1] == pytest.approx(0.5 + 1j * math.e)
    with pytest.raises(DomainError):
        geodesic_points((None, None), np.array([0.0]))


def test_vertical_geodesic_through_orbit_of_i():
    # 3/10 + i/10 is S·T³ applied to i
    t = math.log(0.1)
    lines = fold_geodesic((0.3, None), (t - 0.01, t + 0.01), 101, "x")
    closest = min(abs(z - 1j) for line in lines for z in line.points)
    assert closest < 1e-3
    assert all(line.series == "x" for line in lines)


def test_fold_geodesic_rejects_bad_sampling():
    with pytest.raises(DomainError):
        fold_geodesic((0.0, None), (-1.0, 1.0), 1)
    with pytest.raises(DomainError):
        fold_geodesic((0.0, None), (1.0, -1.0), 8)


def test_window():
    assert Window().contains(0.5j + 0.1)
    with pytest.raises(DomainError):
        Window(x0=1.0, x1=0.0)


def test_svg_is_byte_stable_and_parses():
    first = emit_svg(divergent_geodesics(max_den=3, samples=64))
    second = emit_svg(divergent_geodesics(max_den=3, samples=64))
    assert first == second
    assert first.endswith("\n")
    root = ET.fromstring(first)
    assert root.tag == f"{SVG_NS}svg"
    assert len(root.findall(f"{SVG_NS}path")) > 1


def test_empty_figure_draws_the_boundary():
    root = ET.fromstring(emit_svg(Figure(title="empty")))
    assert len(root.findall(f"{SVG_NS}path")) == 1
    assert root.find(f"{SVG_NS}title").text == "empty"


def test_csv_rows_follow_the_polylines():
    figure = divergent_geodesics(rationals=[Fraction(3, 8)], samples=16)
    lines = emit_csv(figure).splitlines()
    assert lines[0] == "series,polyline,index,x,y,word"
    assert len(lines) == 1 + 16
    assert all(row.startswith("3/8,") for row in lines[1:])


def test_divergent_rationals():
    assert divergent_rationals(3) == [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    with pytest.raises(DomainError):
        divergent_rationals(0)


def test_axis_endpoints():
    lo, hi = sorted(axis_endpoints(P))
    assert lo == pytest.approx(-1 / math.sqrt(3))
    assert hi == pytest.approx(1 / math.sqrt(3))


def test_perpendicular_family_contains_the_two_kind_example():
    figure = perpendicular_family(samples=32)
    assert (23, 25, 11, 12) in figure.meta["elements"]
    for a, b, c, d in figure.meta["elements"]:
        assert a * d - b * c == 1
        assert b * c <= 300
        assert 2.05 <= math.sqrt(a * b / (c * d)) <= 2.1
    assert figure.polylines
    assert all(line.series == "ambiguous" for line in figure.polylines)
    with pytest.raises(DomainError):
        perpendicular_family(lo=2.1, hi=2.0)


def test_perpendicular_family_axis_matches_doubled_element():
    lo, hi = sorted(axis_endpoints(double_perp(FAMILY)))
    r = math.sqrt(575 / 132)
    assert lo == pytest.approx(-r)
    assert hi == pytest.approx(r)


def test_build_ambiguous_figure():
    figure = build_figure(FigureKind.AMBIGUOUS, samples=32)
    assert figure.series() == ["delta", "delta1", "i", "p", "p'"]
    assert figure.meta["elements"] == {"p": (2, 1, 3, 2), "p'": (3, 8, 1, 3)}



def test_fold_fixed_points_and_idempotence(rng):
    assert fold_point(1j).z == 1j
    assert fold_point(1j).word == ()
    folded = fold_point(0.1 + 0.2j)
    assert _in_domain(folded.z)
    assert apply_matrix(folded.matrix.inverse(), folded.z) == pytest.approx(0.1 + 0.2j, abs=1e-9)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 1.0))
        once = fold_point(z)
        assert fold_point(once.z).word == ()


def test_imaginary_axis_folds_onto_the_segment_above_i():
    lines = fold_geodesic((0.0, None), (-2.0, 2.0), 65)
    points = [z for line in lines for z in line.points]
    assert all(abs(z.real) < 1e-12 and z.imag >= 1.0 - 1e-12 for z in points)
