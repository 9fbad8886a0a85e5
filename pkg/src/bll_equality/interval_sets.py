"""Exact algebra of finite unions of closed intervals on the real line.

Every endpoint is a :class:`fractions.Fraction`; nothing in this module
touches floating point.  An :class:`IntervalSet` is always kept in normal
form: components sorted, pairwise separated by gaps of positive length,
each of positive length.  The single exception is the point set ``{0}``,
which is what :func:`symmetrize` produces for a null set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "Interval",
    "IntervalSet",
    "measure",
    "normalize",
    "intersect",
    "union",
    "set_difference",
    "symmetric_difference",
    "intersection_measure",
    "affine_image",
    "symmetrize",
    "symmetrized_set",
    "cdf_left",
    "tail_right",
    "truncate",
    "is_interval_mod_null",
]


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval ``[lo, hi]``; ``lo == hi`` is a single point."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval with lo > hi: [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def center(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class IntervalSet:
    """A normalized finite union of closed intervals.

    Build one with :func:`normalize` (or :meth:`from_pairs`); the
    constructor only validates, it does not repair.
    """

    components: tuple[Interval, ...] = ()

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if comps == (Interval(0, 0),):
            return
        for c in comps:
            if c.lo == c.hi:
                raise ValueError("zero-length component in a normalized IntervalSet")
        for left, right in zip(comps, comps[1:]):
            if not left.hi < right.lo:
                raise ValueError("components must be sorted with positive gaps")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[Rational]]) -> "IntervalSet":
        return normalize(Interval(lo, hi) for lo, hi in pairs)

    @classmethod
    def point_zero(cls) -> "IntervalSet":
        """The rearrangement ``{0}`` of a null set."""
        return cls((Interval(0, 0),))

    def pairs(self) -> list[tuple[Fraction, Fraction]]:
        return [(c.lo, c.hi) for c in self.components]

    @property
    def measure(self) -> Fraction:
        return sum((c.length for c in self.components), Fraction(0))

    @property
    def hull(self) -> Interval | None:
        if not self.components:
            return None
        return Interval(self.components[0].lo, self.components[-1].hi)

    def contains(self, x: Rational) -> bool:
        return any(c.contains(x) for c in self.components)

    def translate(self, shift: Rational) -> "IntervalSet":
        return affine_image(self, 1, shift)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __repr__(self) -> str:
        body = ", ".join(f"[{c.lo}, {c.hi}]" for c in self.components)
        return f"IntervalSet({{{body}}})"


def measure(E: IntervalSet) -> Fraction:
    return E.measure


def normalize(intervals: Iterable[Interval]) -> IntervalSet:
    """Sort, merge overlapping or touching intervals, and drop null pieces."""
    ivs = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals]
    merged: list[list[Fraction]] = []
    for iv in sorted(ivs):
        if merged and iv.lo <= merged[-1][1]:
            if iv.hi > merged[-1][1]:
                merged[-1][1] = iv.hi
        else:
            merged.append([iv.lo, iv.hi])
    # closed pieces that touch were merged above; only now drop points
    return IntervalSet(tuple(Interval(lo, hi) for lo, hi in merged if lo < hi))


def _pairwise_intersection(A: IntervalSet, B: IntervalSet) -> list[Interval]:
    out = []
    a, b = A.components, B.components
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i].lo, b[j].lo)
        hi = min(a[i].hi, b[j].hi)
        if lo < hi:
            out.append(Interval(lo, hi))
        if a[i].hi < b[j].hi:
            i += 1
        else:
            j += 1
    return out


def intersect(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    return normalize(_pairwise_intersection(A, B))


def union(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    return normalize(A.components + B.components)


def set_difference(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    """``A \\ B`` up to endpoints (the result is closed, so it is exact mod null)."""
    out = []
    for c in A.components:
        lo = c.lo
        for d in B.components:
            if d.hi <= lo or d.lo >= c.hi:
                continue
            if d.lo > lo:
                out.append(Interval(lo, d.lo))
            lo = max(lo, d.hi)
            if lo >= c.hi:
                break
        if lo < c.hi:
            out.append(Interval(lo, c.hi))
    return normalize(out)


def symmetric_difference(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    return union(set_difference(A, B), set_difference(B, A))


def intersection_measure(sets: Sequence[IntervalSet]) -> Fraction:
    if not sets:
        raise ValueError("intersection_measure needs at least one set")
    return reduce(intersect, sets).measure


def affine_image(E: IntervalSet, p: Rational, q: Rational) -> IntervalSet:
    """Image of ``E`` under ``x -> p*x + q``; ``p < 0`` reflects."""
    p, q = Fraction(p), Fraction(q)
    if p == 0:
        raise ValueError("affine_image needs p != 0")
    if E.components == (Interval(0, 0),):
        return IntervalSet((Interval(q, q),)) if q == 0 else IntervalSet()
    if p > 0:
        comps = [Interval(p * c.lo + q, p * c.hi + q) for c in E.components]
    else:
        comps = [Interval(p * c.hi + q, p * c.lo + q) for c in reversed(E.components)]
    return IntervalSet(tuple(comps))


def symmetrize(E: IntervalSet) -> Interval:
    """The closed centered interval of the same measure (``[0, 0]`` if null)."""
    half = E.measure / 2
    return Interval(-half, half)


def symmetrized_set(E: IntervalSet) -> IntervalSet:
    iv = symmetrize(E)
    if iv.lo == iv.hi:
        return IntervalSet.point_zero()
    return IntervalSet((iv,))


def cdf_left(E: IntervalSet, x: Rational) -> Fraction:
    """``|E ∩ (-inf, x]|``."""
    total = Fraction(0)
    for c in E.components:
        if x <= c.lo:
            break
        total += min(c.hi, x) - c.lo
    return total


def tail_right(E: IntervalSet, x: Rational) -> Fraction:
    """``|E ∩ [x, inf)|``."""
    return E.measure - cdf_left(E, x)


def truncate(E: IntervalSet, alpha: Rational, beta: Rational):
    """Trim mass ``alpha`` from the left and ``beta`` from the right.

    Returns ``(E ∩ [a, b], a, b)`` where ``a`` is the least point with
    ``cdf_left(E, a) == alpha`` and ``b`` the greatest with
    ``tail_right(E, b) == beta``.  ``alpha == 0`` gives ``a = min E`` and
    ``beta == 0`` gives ``b = max E``.  When ``alpha + beta == |E|`` the
    returned set is null and normalizes to the empty set.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or beta < 0:
        raise ValueError("truncation amounts must be nonnegative")
    total = E.measure
    if alpha + beta > total:
        raise ValueError(f"alpha + beta = {alpha + beta} exceeds |E| = {total}")
    if not E.components:
        return IntervalSet(), Fraction(0), Fraction(0)

    acc = Fraction(0)
    for c in E.components:
        if acc + c.length >= alpha:
            a = c.lo + (alpha - acc)
            break
        acc += c.length
    acc = Fraction(0)
    for c in reversed(E.components):
        if acc + c.length >= beta:
            b = c.hi - (beta - acc)
            break
        acc += c.length

    clipped = [Interval(max(c.lo, a), min(c.hi, b)) for c in E.components
               if c.hi > a and c.lo < b]
    return normalize(clipped), a, b


def is_interval_mod_null(E: IntervalSet) -> Fraction | None:
    """Center of the interval ``E`` agrees with up to a null set, else ``None``.

    Null sets count as the point ``{0}``.
    """
    if len(E.components) > 1:
        return None
    if not E.components or E.measure == 0:
        return Fraction(0)
    return E.components[0].center
