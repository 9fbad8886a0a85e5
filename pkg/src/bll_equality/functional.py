"""Exact evaluation of the multilinear functional by a breakpoint sweep.

In normal form the functional is ``c * ∫_{E_0} F(x) dx`` with the slice
function ``F(x) = |∩_{j>=1} (E_j - t_j x)|``.  ``F`` is affine between
consecutive collisions of translated endpoints, so the trapezoid rule over
those breakpoints (plus the endpoints of ``E_0``) is exact.

The sweep runs on :class:`gmpy2.mpq` for speed; inputs and outputs are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .errors import PreconditionError
from .interval_sets import affine_image, intersection_measure, symmetrized_set
from .linear_forms import Problem, is_normal_form, to_normal_form
from .polygeom import area, intersect_halfplanes, strip

__all__ = [
    "SweepPlan",
    "sweep_plan",
    "slice_measure",
    "evaluate",
    "evaluate_normal",
    "evaluate_symmetrized",
    "symmetrized_problem",
    "deficit",
    "mc_estimate",
]


def _q(x) -> mpq:
    return mpq(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class SweepPlan:
    """Breakpoints of the slice function with its values there.

    ``inside[i]`` tells whether the segment ``[breakpoints[i], breakpoints[i+1]]``
    lies in ``E_0``; the slice is affine on every segment.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    inside: tuple[bool, ...]

    def integral(self) -> Fraction:
        b, v = self.breakpoints, self.values
        return sum(((v[i] + v[i + 1]) / 2 * (b[i + 1] - b[i])
                    for i, inside in enumerate(self.inside) if inside), Fraction(0))


def _slice(x, shifted: Sequence[tuple[mpq, list[tuple[mpq, mpq]]]]):
    t, comps = shifted[0]
    cur = [(lo - t * x, hi - t * x) for lo, hi in comps]
    for t, comps in shifted[1:]:
        d = t * x
        nxt = []
        i = j = 0
        while i < len(cur) and j < len(comps):
            lo1, hi1 = cur[i]
            lo2, hi2 = comps[j][0] - d, comps[j][1] - d
            lo = lo1 if lo1 > lo2 else lo2
            hi = hi1 if hi1 < hi2 else hi2
            if lo < hi:
                nxt.append((lo, hi))
            if hi1 < hi2:
                i += 1
            else:
                j += 1
        if not nxt:
            return mpq(0)
        cur = nxt
    return sum((hi - lo for lo, hi in cur), mpq(0))


def _sweep(Pn: Problem):
    """Breakpoints, slice values and E_0-membership flags, all in mpq."""
    e0 = [(_q(c.lo), _q(c.hi)) for c in Pn.sets[0]]
    others = [(_q(L.a), [(_q(c.lo), _q(c.hi)) for c in E])
              for L, E in zip(Pn.system.forms[1:], Pn.sets[1:])]
    if not e0 or any(not comps for _, comps in others):
        return [], [], []

    # x-range where the hulls of all translated sets still meet
    xlo, xhi = e0[0][0], e0[-1][1]
    for a, (tj, cj) in enumerate(others):
        for b, (tk, ck) in enumerate(others):
            if a == b:
                continue
            # lo_j - tj x <= hi_k - tk x  <=>  (tk - tj) x <= hi_k - lo_j
            coef, rhs = tk - tj, ck[-1][1] - cj[0][0]
            if coef > 0:
                xhi = min(xhi, rhs / coef)
            else:
                xlo = max(xlo, rhs / coef)
    if xlo >= xhi:
        return [], [], []

    pts = {xlo, xhi}
    for lo, hi in e0:
        for e in (lo, hi):
            if xlo < e < xhi:
                pts.add(e)
    for a in range(len(others)):
        tj, cj = others[a]
        ej = [e for c in cj for e in c]
        for b in range(a + 1, len(others)):
            tk, ck = others[b]
            inv = 1 / (tj - tk)
            for p in ej:
                for q in (e for c in ck for e in c):
                    x = (p - q) * inv
                    if xlo < x < xhi:
                        pts.add(x)
    bps = sorted(pts)

    inside = []
    k = 0
    for x0, x1 in zip(bps, bps[1:]):
        mid = (x0 + x1) / 2
        while k < len(e0) and e0[k][1] < mid:
            k += 1
        inside.append(k < len(e0) and e0[k][0] <= mid)
    need = [False] * len(bps)
    for i, flag in enumerate(inside):
        if flag:
            need[i] = need[i + 1] = True
    vals = [_slice(x, others) if need[i] else None for i, x in enumerate(bps)]
    return bps, vals, inside


def _check_normal(Pn: Problem) -> None:
    if not is_normal_form(Pn.system):
        raise PreconditionError("problem is not in normal form (L_0 = x, L_j = t_j x + y)")


def sweep_plan(Pn: Problem) -> SweepPlan:
    _check_normal(Pn)
    bps, vals, inside = _sweep(Pn)
    values = tuple(_frac(v) if v is not None else slice_measure(Pn, _frac(x))
                   for x, v in zip(bps, vals))
    return SweepPlan(tuple(_frac(x) for x in bps), values, tuple(inside))


def slice_measure(Pn: Problem, x) -> Fraction:
    """``|∩_{j>=1} (E_j - t_j x)|`` for a normal-form problem."""
    _check_normal(Pn)
    x = Fraction(x)
    translated = [affine_image(E, 1, -L.a * x) for L, E in zip(Pn.system.forms[1:], Pn.sets[1:])]
    return intersection_measure(translated)


def evaluate_normal(Pn: Problem) -> Fraction:
    """``∫_{E_0} F`` for a problem already in normal form (no Jacobian factor)."""
    _check_normal(Pn)
    bps, vals, inside = _sweep(Pn)
    total = mpq(0)
    for i, flag in enumerate(inside):
        if flag:
            total += (vals[i] + vals[i + 1]) * (bps[i + 1] - bps[i])
    return _frac(total / 2)


def evaluate(P: Problem) -> Fraction:
    """Exact area of ``{X : L_j(X) ∈ E_j for all j}``."""
    if any(m == 0 for m in P.measures):
        return Fraction(0)
    nf, Pn = to_normal_form(P, 0, 1)
    return nf.c * evaluate_normal(Pn)


def symmetrized_problem(P: Problem) -> Problem:
    return Problem(P.system, tuple(symmetrized_set(E) for E in P.sets))


def evaluate_symmetrized(P: Problem) -> Fraction:
    return evaluate(symmetrized_problem(P))


def deficit(P: Problem) -> Fraction:
    return evaluate_symmetrized(P) - evaluate(P)


def _hull_polygon(P: Problem):
    hs = []
    for L, E in zip(P.system, P.sets):
        hull = E.hull
        hs.extend(strip(L, hull.lo, hull.hi))
    return intersect_halfplanes(hs)


def mc_estimate(P: Problem, samples: int, seed: int, chunk: int = 1 << 16) -> tuple[float, float]:
    """Rejection-sampling estimate of :func:`evaluate` with its standard error.

    Points are drawn uniformly from the bounding box of the intersection of
    the hull strips.  Deterministic for a fixed ``seed``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if any(not E.components or E.measure == 0 for E in P.sets):
        return 0.0, 0.0
    poly = _hull_polygon(P)
    if area(poly) == 0:
        return 0.0, 0.0
    x0, x1, y0, y1 = (float(v) for v in poly.bounding_box())
    box = (x1 - x0) * (y1 - y0)
    forms = [(float(L.a), float(L.b)) for L in P.system]
    ends = [np.array([float(e) for c in E for e in (c.lo, c.hi)]) for E in P.sets]

    rng = np.random.default_rng(seed)
    hits = 0
    left = samples
    while left > 0:
        m = min(chunk, left)
        xs = rng.uniform(x0, x1, m)
        ys = rng.uniform(y0, y1, m)
        ok = np.ones(m, dtype=bool)
        for (a, b), e in zip(forms, ends):
            idx = np.searchsorted(e, a * xs + b * ys, side="right")
            ok &= (idx % 2) == 1
        hits += int(ok.sum())
        left -= m
    p = hits / samples
    return box * p, box * math.sqrt(p * (1 - p) / samples)
