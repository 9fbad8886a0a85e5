from fractions import Fraction as F

import pytest
from conftest import rationals
from hypothesis import assume, given, strategies as st

from bll_equality.errors import PreconditionError, UnboundedIntersectionError
from bll_equality.linear_forms import LinearForm
from bll_equality.polygeom import ConvexPolygon, HalfPlane, area, intersect_halfplanes, strip, support

from oracles import polygon_area_by_vertices

X, Y, XY = LinearForm(1, 0), LinearForm(0, 1), LinearForm(1, 1)


def sym(L, w):
    return strip(L, -w, w)


def test_square():
    P = intersect_halfplanes([*sym(X, 1), *sym(Y, 1)])
    assert set(P.vertices) == {(1, 1), (-1, 1), (-1, -1), (1, -1)}
    assert area(P) == 4
    assert support(P, X) == 1
    assert support(P, XY) == 2


def test_hexagon():
    P = intersect_halfplanes([*sym(X, 1), *sym(Y, 1), *sym(XY, 1)])
    assert len(P.vertices) == 6
    assert area(P) == 3 == polygon_area_by_vertices([(1, 0, -1, 1), (0, 1, -1, 1), (1, 1, -1, 1)])
    assert support(P, LinearForm(1, -1)) == 2


def test_single_strip_is_unbounded():
    with pytest.raises(UnboundedIntersectionError):
        intersect_halfplanes(sym(X, 1))


def test_degenerate_outputs():
    seg = intersect_halfplanes([*sym(X, 0), *sym(Y, 1)])
    assert seg.vertices == ((0, -1), (0, 1))
    pt = intersect_halfplanes([*sym(X, 0), *sym(Y, 0)])
    assert pt.vertices == ((0, 0),)
    empty = intersect_halfplanes([*strip(X, 3, 4), *sym(Y, 1), *sym(XY, 1)])
    assert empty.is_empty and area(empty) == 0
    assert area(ConvexPolygon(())) == 0
    with pytest.raises(PreconditionError):
        support(empty, X)


def test_vertices_counterclockwise():
    P = intersect_halfplanes([*sym(X, 1), *sym(Y, 1), *sym(XY, 1)])
    v = P.vertices
    twice = sum(v[i][0] * v[(i + 1) % 6][1] - v[(i + 1) % 6][0] * v[i][1] for i in range(6))
    assert twice > 0


@st.composite
def strip_lists(draw, balanced=False):
    n = draw(st.integers(2, 5))
    out = []
    dirs = set()
    for _ in range(n):
        a, b = draw(st.integers(-3, 3)), draw(st.integers(-3, 3))
        assume(a or b)
        w = draw(rationals(0, 3, 6))
        lo = -w if balanced else draw(rationals(-3, 3, 6))
        hi = w if balanced else lo + draw(rationals(0, 3, 6))
        out.append((a, b, lo, hi))
        dirs.add(F(a, b) if b else None)
    assume(len(dirs) >= 2)
    return out


def _hp(rows):
    hs = []
    for a, b, lo, hi in rows:
        hs.extend(strip(LinearForm(a, b), lo, hi))
    return hs


@given(strip_lists())
def test_area_matches_vertex_enumeration(rows):
    P = intersect_halfplanes(_hp(rows))
    assert area(P) == polygon_area_by_vertices(rows)
    for v in P.vertices:
        assert all(h.residual(v) <= 0 for h in _hp(rows))
    assert len(P.vertices) <= 2 * len(rows)


@given(strip_lists(balanced=True))
def test_balanced_strips_give_symmetric_polygon(rows):
    P = intersect_halfplanes(_hp(rows))
    vs = set(P.vertices)
    assert vs == {(-x, -y) for x, y in vs}


@given(strip_lists(), st.integers(-3, 3), st.integers(-3, 3), rationals(-3, 3, 4))
def test_area_monotone_under_extra_halfplane(rows, a, b, c):
    assume(a or b)
    P = intersect_halfplanes(_hp(rows))
    Q = intersect_halfplanes(_hp(rows) + [HalfPlane(LinearForm(a, b), c)])
    assert area(Q) <= area(P)


@given(strip_lists(balanced=True), rationals(1, 4, 4))
def test_support_scales_with_bounds(rows, lam):
    P = intersect_halfplanes(_hp(rows))
    assume(not P.is_empty)
    Q = intersect_halfplanes(_hp([(a, b, lam * lo, lam * hi) for a, b, lo, hi in rows]))
    L = LinearForm(1, 2)
    assert support(Q, L) == lam * support(P, L)
