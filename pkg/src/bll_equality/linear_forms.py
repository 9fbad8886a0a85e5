"""Rational linear forms on the plane, form systems, and problem tuples.

Also hosts the coordinate changes the rest of the engine leans on: the
reduction to normal form ``L_0 = x``, ``L_j = y + t_j x`` and general
affine symmetries of a problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DegenerateSystemError
from .interval_sets import IntervalSet, Rational, affine_image

Matrix2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class LinearForm:
    """``L(x, y) = a*x + b*y`` with ``(a, b) != (0, 0)``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0 and self.b == 0:
            raise ValueError("the zero form is not surjective")

    def __call__(self, x: Rational, y: Rational) -> Fraction:
        return self.a * x + self.b * y

    def det(self, other: "LinearForm") -> Fraction:
        return self.a * other.b - other.a * self.b

    def scaled(self, s: Rational) -> "LinearForm":
        return LinearForm(self.a * s, self.b * s)

    def compose(self, m: Matrix2) -> "LinearForm":
        """The form ``x -> L(M x)``."""
        (m11, m12), (m21, m22) = m
        return LinearForm(self.a * m11 + self.b * m21, self.a * m12 + self.b * m22)


def is_nondegenerate(forms: Sequence[LinearForm]) -> tuple[bool, tuple[int, int] | None]:
    """Check every pair of forms is a bijection of the plane.

    Returns ``(True, None)`` or ``(False, (i, j))`` for the first parallel pair.
    """
    for i, j in combinations(range(len(forms)), 2):
        if forms[i].det(forms[j]) == 0:
            return False, (i, j)
    return True, None


@dataclass(frozen=True)
class FormSystem:
    forms: tuple[LinearForm, ...]

    def __post_init__(self):
        forms = tuple(f if isinstance(f, LinearForm) else LinearForm(*f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if len(forms) < 3:
            raise ValueError("a form system needs at least three forms")
        ok, pair = is_nondegenerate(forms)
        if not ok:
            raise DegenerateSystemError(f"forms {pair[0]} and {pair[1]} are parallel", pair)

    @classmethod
    def of(cls, *pairs: Sequence[Rational]) -> "FormSystem":
        return cls(tuple(LinearForm(a, b) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.forms)

    def __getitem__(self, i: int) -> LinearForm:
        return self.forms[i]

    def __iter__(self):
        return iter(self.forms)


SUM_FORM = FormSystem.of((1, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class Problem:
    """A form system with one interval set per form."""

    system: FormSystem
    sets: tuple[IntervalSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        if len(self.sets) != len(self.system):
            raise ValueError(
                f"{len(self.system)} forms but {len(self.sets)} sets")

    @classmethod
    def build(cls, forms, sets) -> "Problem":
        """Convenience constructor from ``[[a, b], ...]`` and lists of pairs."""
        system = forms if isinstance(forms, FormSystem) else FormSystem.of(*forms)
        return cls(system, tuple(s if isinstance(s, IntervalSet) else IntervalSet.from_pairs(s)
                                 for s in sets))

    @property
    def measures(self) -> tuple[Fraction, ...]:
        return tuple(s.measure for s in self.sets)

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class NormalForm:
    """Data of the reduction ``I(P) = c * I(P')``.

    ``order[k]`` is the original index placed at position ``k`` of ``P'``;
    ``set_maps[k] = (p, q)`` maps the original set to the new one by
    ``x -> p*x + q``; ``coord_map`` sends original coordinates to ``(u, v)``.
    """

    c: Fraction
    t: tuple[Fraction, ...]
    order: tuple[int, ...]
    set_maps: tuple[tuple[Fraction, Fraction], ...]
    coord_map: Matrix2


def is_normal_form(system: FormSystem) -> bool:
    """True when ``L_0 = x`` and ``L_j = t_j x + y`` for ``j >= 1``."""
    f0 = system[0]
    return f0.a == 1 and f0.b == 0 and all(f.b == 1 for f in system.forms[1:])


def to_normal_form(P: Problem, outer: int = 0, inner: int | None = None):
    """Change variables so that ``I(P) = c * I(P')`` with ``P'`` in normal form.

    New coordinates are ``u = L_outer``, ``v = L_inner``; each remaining form
    becomes ``beta_j (v + t_j u)`` and its set is divided by ``beta_j``.
    ``c = 1/|det(L_outer, L_inner)|``.  Index 0 of ``P'`` is ``outer``; the
    other indices keep their original relative order.
    """
    n = len(P)
    if inner is None:
        inner = 1 if outer != 1 else 0
    if not (0 <= outer < n and 0 <= inner < n) or outer == inner:
        raise ValueError(f"bad pivot indices ({outer}, {inner})")
    fo, fi = P.system[outer], P.system[inner]
    D = fo.det(fi)
    if D == 0:
        raise DegenerateSystemError("pivot forms are parallel", (outer, inner))

    order = (outer,) + tuple(j for j in range(n) if j != outer)
    t: list[Fraction] = []
    maps = [(Fraction(1), Fraction(0))]
    forms = [LinearForm(1, 0)]
    sets = [P.sets[outer]]
    for j in order[1:]:
        fj = P.system[j]
        alpha = fj.det(fi) / D
        beta = fo.det(fj) / D
        t.append(alpha / beta)
        maps.append((1 / beta, Fraction(0)))
        forms.append(LinearForm(alpha / beta, 1))
        sets.append(affine_image(P.sets[j], 1 / beta, 0))
    nf = NormalForm(
        c=1 / abs(D),
        t=tuple(t),
        order=order,
        set_maps=tuple(maps),
        coord_map=((fo.a, fo.b), (fi.a, fi.b)),
    )
    return nf, Problem(FormSystem(tuple(forms)), tuple(sets))


def transform_problem(P: Problem, matrix: Matrix2, shift: Point = (0, 0),
                      maps: Sequence[tuple[Rational, Rational]] | None = None) -> Problem:
    """Apply ``Phi(x) = M x + shift`` on the plane and ``Psi_j(s) = p_j s + q_j``.

    The returned problem has forms ``p_j * (L_j o M)`` and sets
    ``Psi_j(E_j) - a_j`` where ``a_j = p_j L_j(shift) + q_j`` is the constant
    part of ``Psi_j o L_j o Phi``.  With that choice
    ``I(new) = I(P) / |det M|`` exactly.
    """
    m = tuple(tuple(Fraction(v) for v in row) for row in matrix)
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 0:
        raise ValueError("Phi must be invertible")
    if maps is None:
        maps = [(1, 0)] * len(P)
    if len(maps) != len(P):
        raise ValueError("one 1-D map per set is required")
    sx, sy = Fraction(shift[0]), Fraction(shift[1])
    forms, sets = [], []
    for L, E, (p, q) in zip(P.system, P.sets, maps):
        p, q = Fraction(p), Fraction(q)
        if p == 0:
            raise ValueError("each Psi_j must be invertible")
        forms.append(L.compose(m).scaled(p))
        a_j = p * L(sx, sy) + q
        sets.append(affine_image(E, p, q - a_j))
    return Problem(FormSystem(tuple(forms)), tuple(sets))


def solve_pair(f: LinearForm, g: LinearForm, cf: Rational, cg: Rational) -> Point:
    """The unique point with ``f = cf`` and ``g = cg``."""
    D = f.det(g)
    if D == 0:
        raise DegenerateSystemError("parallel forms have no unique common point")
    x = (cf * g.b - cg * f.b) / D
    y = (f.a * cg - g.a * cf) / D
    return Fraction(x), Fraction(y)


def coherent_center(system: FormSystem, centers: Sequence[Rational],
                    anchors: tuple[int, int] = (0, 1)) -> Point | None:
    """Point ``z`` with ``L_j(z) = centers[j]`` for every ``j``, or ``None``."""
    if len(centers) != len(system):
        raise ValueError("one center per form is required")
    i, j = anchors
    z = solve_pair(system[i], system[j], Fraction(centers[i]), Fraction(centers[j]))
    if all(L(*z) == c for L, c in zip(system, centers)):
        return z
    return None
