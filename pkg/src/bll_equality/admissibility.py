"""Admissibility of measure tuples through strip containment.

For widths ``w_j = |E_j|/2`` let ``K_k`` be the intersection of the strips
``|L_j| <= w_j`` over ``j != k`` and ``s_k = max_{K_k} |L_k|``.  Strip ``k``
contains ``K_k`` iff ``s_k <= w_k`` and contains a neighbourhood of it iff
``s_k < w_k``.  Everything is decided on exact vertex values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import CertificateError, PreconditionError
from .interval_sets import IntervalSet, Rational
from .linear_forms import FormSystem, LinearForm, Problem
from .polygeom import ConvexPolygon, intersect_halfplanes, strip, support

__all__ = [
    "Verdict",
    "StripSystem",
    "AdmissibilityReport",
    "strip_polytope",
    "slacks",
    "check",
    "check_problem",
    "burchard_check",
    "stability_margin",
    "nonuniqueness_witness",
    "first_failure",
]


class Verdict(str, Enum):
    STRICT = "strictly_admissible"
    NONSTRICT = "admissible_not_strict"
    INADMISSIBLE = "inadmissible"

    @property
    def admissible(self) -> bool:
        return self is not Verdict.INADMISSIBLE


@dataclass(frozen=True)
class StripSystem:
    forms: FormSystem
    half_widths: tuple[Fraction, ...]

    def __post_init__(self):
        widths = tuple(Fraction(w) for w in self.half_widths)
        object.__setattr__(self, "half_widths", widths)
        if len(widths) != len(self.forms):
            raise ValueError("one half-width per form is required")
        if any(w < 0 for w in widths):
            raise ValueError("half-widths must be nonnegative")

    @classmethod
    def from_measures(cls, forms: FormSystem, measures: Sequence[Rational]) -> "StripSystem":
        return cls(forms, tuple(Fraction(m) / 2 for m in measures))

    @property
    def measures(self) -> tuple[Fraction, ...]:
        return tuple(2 * w for w in self.half_widths)


@dataclass(frozen=True)
class AdmissibilityReport:
    verdict: Verdict
    slacks: tuple[Fraction, ...]
    supports: tuple[Fraction, ...]
    witnesses: tuple[int, ...]  # indices whose strip contains the others' intersection

    def to_json(self) -> dict:
        from .serialize import format_rational
        return {
            "verdict": self.verdict.value,
            "slacks": [format_rational(s) for s in self.slacks],
            "supports": [format_rational(s) for s in self.supports],
            "witnesses": list(self.witnesses),
        }


def _polytope(forms: Sequence[LinearForm], widths: Sequence[Fraction], exclude: int) -> ConvexPolygon:
    hs = []
    for j, (L, w) in enumerate(zip(forms, widths)):
        if j != exclude:
            hs.extend(strip(L, -w, w))
    return intersect_halfplanes(hs)


def strip_polytope(S: StripSystem, exclude: int) -> ConvexPolygon:
    """``K_k``: intersection of all strips except ``exclude``."""
    return _polytope(S.forms.forms, S.half_widths, exclude)


def slacks(forms: Sequence[LinearForm], widths: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Supports ``s_k`` and slacks ``s_k - w_k``; zero widths are allowed."""
    sup = [support(_polytope(forms, widths, k), forms[k]) for k in range(len(forms))]
    return sup, [s - w for s, w in zip(sup, widths)]


def _verdict(sl: Sequence[Fraction]) -> Verdict:
    if any(s < 0 for s in sl):
        return Verdict.INADMISSIBLE
    if any(s == 0 for s in sl):
        return Verdict.NONSTRICT
    return Verdict.STRICT


def check(S: StripSystem) -> AdmissibilityReport:
    if any(w <= 0 for w in S.half_widths):
        raise PreconditionError("admissibility needs strictly positive measures")
    sup, sl = slacks(S.forms.forms, S.half_widths)
    return AdmissibilityReport(_verdict(sl), tuple(sl), tuple(sup),
                               tuple(k for k, s in enumerate(sl) if s <= 0))


def check_problem(P: Problem) -> AdmissibilityReport:
    return check(StripSystem.from_measures(P.system, P.measures))


def burchard_check(measures: Sequence[Rational]) -> tuple[str, ...]:
    """Classify each index by ``|E_i|`` against the sum of the others.

    ``"strict"`` (<), ``"non-strict"`` (=) or ``"fails"`` (>).
    """
    ms = [Fraction(m) for m in measures]
    total = sum(ms)
    out = []
    for m in ms:
        rest = total - m
        out.append("strict" if m < rest else "non-strict" if m == rest else "fails")
    return tuple(out)


# --- exact first failure along an affine path of widths --------------------

def _events(forms: Sequence[LinearForm], w0: Sequence[Fraction], w1: Sequence[Fraction],
            tmax: Fraction) -> list[Fraction]:
    """Parameters in ``(0, tmax)`` where three boundary lines are concurrent.

    Between consecutive events the combinatorics of every ``K_k`` is frozen
    and all slacks are affine in the parameter.
    """
    n = len(forms)
    out = set()
    for i, j in combinations(range(n), 2):
        D = forms[i].det(forms[j])
        for l in range(n):
            if l in (i, j):
                continue
            # L_l = lam L_i + mu L_j
            lam = forms[l].det(forms[j]) / D
            mu = forms[i].det(forms[l]) / D
            for si, sj in product((1, -1), repeat=2):
                # third sign fixed to +1; flipping all three gives the same root
                g0 = lam * si * w0[i] + mu * sj * w0[j] - w0[l]
                g1 = lam * si * w1[i] + mu * sj * w1[j] - w1[l]
                if g1 != 0:
                    r = -g0 / g1
                    if 0 < r < tmax:
                        out.add(r)
    return sorted(out)


def first_failure(forms: Sequence[LinearForm], w0: Sequence[Rational], w1: Sequence[Rational],
                  tmax: Rational, indices: Sequence[int] | None = None):
    """Least ``tau`` in ``(0, tmax]`` at which the path stops being strictly admissible.

    Widths follow ``w_j(tau) = w0_j + w1_j * tau``.  Strictness at ``tau``
    means every width is positive and ``slack_k(tau) > 0`` for ``k`` in
    ``indices`` (default: all).  Each slack is concave in ``tau``, so the
    failing set is an interval ``[tau*, tmax]``; ``tau*`` is located by
    binary search over the exact event list and linear interpolation on the
    last affine piece.

    Returns ``(tau*, failing_indices)``; the tuple is empty when ``tau*`` is
    only caused by a width reaching zero.
    """
    w0 = [Fraction(w) for w in w0]
    w1 = [Fraction(w) for w in w1]
    tmax = Fraction(tmax)
    idx = list(range(len(forms))) if indices is None else list(indices)

    def widths(t):
        return [a + b * t for a, b in zip(w0, w1)]

    def slack_at(t):
        ws = widths(t)
        return {k: support(_polytope(forms, ws, k), forms[k]) - ws[k] for k in idx}, ws

    def strict(t):
        sl, ws = slack_at(t)
        return all(w > 0 for w in ws) and all(s > 0 for s in sl.values())

    if not strict(Fraction(0)):
        raise PreconditionError("path does not start strictly admissible")
    cands = _events(forms, w0, w1, tmax) + [tmax]
    lo, hi = -1, len(cands) - 1  # strict at cands[lo] (or 0), fails at cands[hi]
    if strict(cands[hi]):
        raise CertificateError("strictness survived to the end of the path")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if strict(cands[mid]):
            lo = mid
        else:
            hi = mid
    a = cands[lo] if lo >= 0 else Fraction(0)
    b = cands[hi]
    sa, _ = slack_at(a)
    sb, wb = slack_at(b)
    roots = {}
    for k in idx:
        if sb[k] <= 0:
            roots[k] = a + sa[k] * (b - a) / (sa[k] - sb[k])
    if not roots:
        # only a width reached zero
        if not any(w <= 0 for w in wb):
            raise CertificateError("no failing index at the located event")
        return b, ()
    tau = min(roots.values())
    sl, _ = slack_at(tau)
    failing = tuple(k for k in idx if sl[k] <= 0)
    if not failing or any(sl[k] < 0 for k in failing):
        raise CertificateError(f"interpolated root {tau} is not an exact zero of the slack")
    return tau, failing


def stability_margin(S: StripSystem) -> Fraction:
    """Supremum ``eps`` with every ``||E_j| - |F_j|| < eps`` strictly admissible.

    For index ``k`` the worst perturbation raises ``|E_k|`` by ``eps`` and
    lowers every other measure by ``eps``; the margin is the least root over
    ``k``, capped by the smallest measure (beyond it a set may become null).
    """
    if check(S).verdict is not Verdict.STRICT:
        raise PreconditionError("stability margin needs a strictly admissible tuple")
    forms = S.forms.forms
    ws = S.half_widths
    cap = 2 * min(ws)
    best = cap
    for k in range(len(forms)):
        w1 = [Fraction(1, 2) if j == k else Fraction(-1, 2) for j in range(len(forms))]
        tmax = min(2 * w for j, w in enumerate(ws) if j != k)
        eps_k, _ = first_failure(forms, ws, w1, tmax, indices=[k])
        best = min(best, eps_k)
    return best


def nonuniqueness_witness(system: FormSystem, measures: Sequence[Rational], k: int) -> Problem:
    """Equality case with a non-interval set, for an inadmissible tuple.

    Sets ``j != k`` are centred intervals; set ``k`` is the smallest centred
    interval whose strip contains ``K_k`` plus a far-away piece carrying the
    remaining mass.
    """
    ms = [Fraction(m) for m in measures]
    S = StripSystem.from_measures(system, ms)
    if not 0 <= k < len(ms):
        raise PreconditionError(f"index {k} out of range")
    if any(w <= 0 for w in S.half_widths):
        raise PreconditionError("measures must be positive")
    s_k = support(strip_polytope(S, k), system[k])
    if not s_k < S.half_widths[k]:
        raise PreconditionError(f"index {k} is not an inadmissibility witness")
    far = 10 * sum(ms)
    rest = ms[k] - 2 * s_k
    sets = []
    for j, m in enumerate(ms):
        if j == k:
            sets.append(IntervalSet.from_pairs([(-s_k, s_k), (far, far + rest)]))
        else:
            sets.append(IntervalSet.from_pairs([(-m / 2, m / 2)]))
    return Problem(system, tuple(sets))

