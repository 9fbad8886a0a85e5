"""Exact convex polygons cut out by rational half-planes.

Intersections are computed by Sutherland-Hodgman clipping of a box known
to contain every vertex of the answer.  Inputs are tiny (a few dozen
half-planes), so the quadratic cost is irrelevant and exactness is free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from gmpy2 import mpq

from .errors import PreconditionError, UnboundedIntersectionError
from .linear_forms import LinearForm, Point

__all__ = ["HalfPlane", "ConvexPolygon", "strip", "intersect_halfplanes", "area", "support"]


@dataclass(frozen=True)
class HalfPlane:
    """``form(x, y) <= bound``."""

    form: LinearForm
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))

    def residual(self, p: Point) -> Fraction:
        return self.form(*p) - self.bound


def strip(form: LinearForm, lo, hi) -> tuple[HalfPlane, HalfPlane]:
    """The closed strip ``lo <= form <= hi`` as two half-planes."""
    return HalfPlane(form, hi), HalfPlane(form.scaled(-1), -Fraction(lo))


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise vertices; 0, 1 or 2 vertices encode empty, point, segment."""

    vertices: tuple[Point, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def bounding_box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


# Internals run on gmpy2.mpq triples (a, b, c) meaning a x + b y <= c.

def _recession_direction(hs):
    # A nonzero recession cone has a boundary ray perpendicular to some normal.
    if not hs:
        return (1, 0)
    for a, b, _ in hs:
        for dx, dy in ((-b, a), (b, -a)):
            if all(g[0] * dx + g[1] * dy <= 0 for g in hs):
                return dx, dy
    return None


def _clip(poly, h):
    a, b, c = h
    out = []
    if not poly:
        return out
    prev = poly[-1]
    r_prev = a * prev[0] + b * prev[1] - c
    for cur in poly:
        r_cur = a * cur[0] + b * cur[1] - c
        if r_cur <= 0:
            if r_prev > 0:
                out.append(_crossing(prev, cur, r_prev, r_cur))
            out.append(cur)
        elif r_prev < 0:
            out.append(_crossing(prev, cur, r_prev, r_cur))
        prev, r_prev = cur, r_cur
    return out


def _crossing(p, q, rp, rq):
    s = rp / (rp - rq)
    return (p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1]))


def _canonical(points):
    pts = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if not pts:
        return []
    if len(pts) >= 3 and any(_cross(pts[0], pts[i], pts[i + 1]) != 0
                             for i in range(1, len(pts) - 1)):
        changed = True
        while changed and len(pts) > 3:
            changed = False
            for i in range(len(pts)):
                if _cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) == 0:
                    del pts[i]
                    changed = True
                    break
        return pts
    # all collinear: a point or a segment
    lo, hi = min(pts), max(pts)
    return [lo] if lo == hi else [lo, hi]


def _q(x) -> mpq:
    x = Fraction(x)
    return mpq(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def intersect_halfplanes(hs: Iterable[HalfPlane]) -> ConvexPolygon:
    """Exact intersection of half-planes that cut out a bounded region.

    Raises :class:`UnboundedIntersectionError` when the half-planes leave a
    direction of recession (e.g. a single strip).
    """
    hs = [(_q(h.form.a), _q(h.form.b), _q(h.bound)) for h in hs]
    if _recession_direction(hs) is not None:
        raise UnboundedIntersectionError("half-plane intersection is unbounded")
    xs, ys = [], []
    for (a1, b1, c1), (a2, b2, c2) in combinations(hs, 2):
        d = a1 * b2 - a2 * b1
        if d != 0:
            xs.append((c1 * b2 - c2 * b1) / d)
            ys.append((a1 * c2 - a2 * c1) / d)
    # every vertex of the answer is one of these corners, so their box contains it
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    poly = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    for h in hs:
        poly = _clip(poly, h)
        if not poly:
            break
    return ConvexPolygon(tuple((_frac(x), _frac(y)) for x, y in _canonical(poly)))


def area(P: ConvexPolygon) -> Fraction:
    v = P.vertices
    if len(v) < 3:
        return Fraction(0)
    twice = sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1]
                for i in range(len(v)))
    return abs(Fraction(twice)) / 2


def support(P: ConvexPolygon, L: LinearForm) -> Fraction:
    """``max |L(v)|`` over the polygon (attained at a vertex)."""
    if P.is_empty:
        raise PreconditionError("support of an empty polygon")
    return max(abs(L(*v)) for v in P.vertices)
