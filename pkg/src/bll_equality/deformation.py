"""Truncation flow, the critical parameter ``r_bar``, and the equality analyzer.

Work in normal form (``L_0 = x``, ``L_j = y + t_j x``), index 0 privileged.
The flow keeps ``E_0`` and trims ``r/2`` of mass from both ends of every
other set, so the strip half-widths are ``w_0 = |E_0|/2`` and
``w_j(r) = (|E_j| - r)/2``.  ``r_bar`` is the first ``r`` at which the tuple
stops being strictly admissible; it is computed twice, by exact event
enumeration and by an exact bisection/extrapolation scheme, and the two must
agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .admissibility import (
    AdmissibilityReport,
    StripSystem,
    Verdict,
    _polytope,
    check,
    check_problem,
    first_failure,
)
from .errors import CertificateError, PreconditionError
from .functional import deficit, evaluate, evaluate_symmetrized
from .interval_sets import IntervalSet, Rational, is_interval_mod_null, truncate
from .linear_forms import FormSystem, Point, Problem, coherent_center, is_normal_form
from .polygeom import support

PROBE = Fraction(1, 2**20)

__all__ = [
    "DeformationState",
    "RBarResult",
    "EqualityVerdict",
    "TraceStep",
    "InductionTrace",
    "sets_at",
    "half_widths_at",
    "find_rbar",
    "rbar_by_bisection",
    "equality_analysis",
    "construct_maximizer",
    "induction_trace",
]


@dataclass(frozen=True)
class DeformationState:
    base: Problem
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        rmax = min(self.base.measures[1:])
        if not 0 <= self.r <= rmax:
            raise PreconditionError(f"r = {self.r} outside [0, {rmax}]")


def sets_at(state: DeformationState) -> tuple[IntervalSet, ...]:
    half = state.r / 2
    sets = state.base.sets
    return (sets[0],) + tuple(truncate(E, half, half)[0] for E in sets[1:])


def half_widths_at(measures: Sequence[Rational], r: Rational) -> tuple[Fraction, ...]:
    ms = [Fraction(m) for m in measures]
    r = Fraction(r)
    return (ms[0] / 2,) + tuple((m - r) / 2 for m in ms[1:])


def _flow(measures: Sequence[Fraction]):
    w0 = [m / 2 for m in measures]
    w1 = [Fraction(0)] + [Fraction(-1, 2)] * (len(measures) - 1)
    return w0, w1, min(measures[1:])


def rbar_by_bisection(system: FormSystem, measures: Sequence[Rational], max_steps: int = 2000) -> Fraction:
    """``r_bar`` without event enumeration.

    Bisect on the exact strictness predicate.  Once the three latest strict
    points see a failing slack as collinear, extrapolate its root; concavity
    of the slack makes an exact zero at the extrapolated point a proof that
    it is the root.
    """
    forms = system.forms
    ms = [Fraction(m) for m in measures]
    rmax = min(ms[1:])
    n = len(forms)

    def slack_vec(r):
        ws = half_widths_at(ms, r)
        return [support(_polytope(forms, ws, k), forms[k]) - ws[k] for k in range(n)], ws

    def strict(sl, ws):
        return all(w > 0 for w in ws) and all(s > 0 for s in sl)

    sl0, ws0 = slack_vec(Fraction(0))
    if not strict(sl0, ws0):
        raise PreconditionError("flow does not start strictly admissible")
    lo, hi = Fraction(0), rmax
    hi_sl, _ = slack_vec(hi)
    history = [(lo, sl0)]
    for _ in range(max_steps):
        failing = [k for k in range(n) if hi_sl[k] <= 0]
        if not failing:
            # slacks positive at both ends stay positive between (concavity)
            return hi
        if len(history) >= 3:
            (r1, s1), (r2, s2), (r3, s3) = history[-3:]
            roots = []
            for k in failing:
                slope = (s3[k] - s2[k]) / (r3 - r2)
                if slope >= 0 or s1[k] != s2[k] - slope * (r2 - r1):
                    break
                rho = r3 - s3[k] / slope
                if rho > hi or slack_vec(rho)[0][k] != 0:
                    break
                roots.append(rho)
            else:
                return min(roots)
        mid = (lo + hi) / 2
        sl, ws = slack_vec(mid)
        if strict(sl, ws):
            lo = mid
            history.append((mid, sl))
        else:
            hi, hi_sl = mid, sl
    raise CertificateError("bisection did not certify r_bar")


@dataclass(frozen=True)
class RBarResult:
    r_bar: Fraction
    report_at_rbar: AdmissibilityReport
    containment_index: int
    pre_rbar_probe: AdmissibilityReport
    r_bar_bisection: Fraction

    def to_json(self) -> dict:
        from .serialize import format_rational
        return {
            "r_bar": format_rational(self.r_bar),
            "r_bar_bisection": format_rational(self.r_bar_bisection),
            "containment_index": self.containment_index,
            "report_at_rbar": self.report_at_rbar.to_json(),
            "pre_rbar_probe": self.pre_rbar_probe.to_json(),
        }


def find_rbar(P: Problem) -> RBarResult:
    """Critical flow parameter of a strictly admissible normal-form problem.

    Certifies ``0 < r_bar < min_{j>=1} |E_j|``, admissibility at ``r_bar``,
    that strip 0 alone contains the others' intersection there, and strict
    admissibility at ``r_bar * (1 - 2**-20)``.
    """
    if not is_normal_form(P.system):
        raise PreconditionError("find_rbar needs a normal-form problem")
    ms = list(P.measures)
    if any(m <= 0 for m in ms):
        raise PreconditionError("measures must be positive")
    if check_problem(P).verdict is not Verdict.STRICT:
        raise PreconditionError("find_rbar needs a strictly admissible tuple")
    forms = P.system.forms
    w0, w1, rmax = _flow(ms)
    r_bar, failing = first_failure(forms, w0, w1, rmax)
    r_bis = rbar_by_bisection(P.system, ms)
    if r_bis != r_bar:
        raise CertificateError(f"event enumeration gives {r_bar}, bisection gives {r_bis}")
    if not 0 < r_bar < rmax:
        raise CertificateError(f"r_bar = {r_bar} not inside (0, {rmax})")
    at = check(StripSystem(P.system, half_widths_at(ms, r_bar)))
    below = check(StripSystem(P.system, half_widths_at(ms, r_bar * (1 - PROBE))))
    if not at.verdict.admissible:
        raise CertificateError("tuple is inadmissible at r_bar")
    if at.witnesses != (0,) or failing != (0,):
        raise CertificateError(f"containment at r_bar for indices {at.witnesses}, expected (0,)")
    if below.verdict is not Verdict.STRICT:
        raise CertificateError("tuple is not strictly admissible just below r_bar")
    return RBarResult(r_bar, at, 0, below, r_bis)


@dataclass(frozen=True)
class EqualityVerdict:
    is_maximizer: bool
    deficit: Fraction
    centers: tuple[Fraction, ...] | None = None
    z: Point | None = None
    theorem_violation: str | None = None

    def to_json(self) -> dict:
        from .serialize import format_rational
        out = {"is_maximizer": self.is_maximizer, "deficit": format_rational(self.deficit)}
        if self.centers is not None:
            out["centers"] = [format_rational(c) for c in self.centers]
        if self.z is not None:
            out["z"] = [format_rational(c) for c in self.z]
        if self.theorem_violation is not None:
            out["theorem_violation"] = self.theorem_violation
        return out


def _require_admissible(system: FormSystem, measures: Sequence[Fraction]) -> AdmissibilityReport:
    if any(m <= 0 for m in measures):
        raise PreconditionError("measures must be positive")
    report = check(StripSystem.from_measures(system, measures))
    if not report.verdict.admissible:
        raise PreconditionError("measures are inadmissible; equality cases are not unique")
    return report


def equality_analysis(P: Problem) -> EqualityVerdict:
    """Decide whether ``P`` is a maximizer and, if so, exhibit its structure.

    For admissible input a zero deficit must come with interval sets whose
    centres are ``L_j(z)`` for one point ``z``; anything else is returned as
    a ``theorem_violation`` diagnostic rather than trusted.
    """
    _require_admissible(P.system, P.measures)
    d = deficit(P)
    if d < 0:
        return EqualityVerdict(False, d, theorem_violation="negative deficit")
    if d > 0:
        return EqualityVerdict(False, d)
    centers = [is_interval_mod_null(E) for E in P.sets]
    if any(c is None for c in centers):
        return EqualityVerdict(True, d, theorem_violation="maximizer with a non-interval set")
    z = coherent_center(P.system, centers)
    if z is None:
        return EqualityVerdict(True, d, tuple(centers),
                               theorem_violation="maximizer with incoherent centers")
    return EqualityVerdict(True, d, tuple(centers), z)


def construct_maximizer(system: FormSystem, measures: Sequence[Rational], z: Point) -> Problem:
    """Intervals of the given measures centred at ``L_j(z)``."""
    ms = [Fraction(m) for m in measures]
    _require_admissible(system, ms)
    zx, zy = Fraction(z[0]), Fraction(z[1])
    sets = []
    for L, m in zip(system, ms):
        c = L(zx, zy)
        sets.append(IntervalSet.from_pairs([(c - m / 2, c + m / 2)]))
    return Problem(system, tuple(sets))


@dataclass(frozen=True)
class TraceStep:
    r: Fraction
    verdict: Verdict
    problem: Problem
    value: Fraction
    symmetrized: Fraction


@dataclass(frozen=True)
class InductionTrace:
    """One deformation step and the three links of the inequality chain.

    ``lhs <= truncated_rhs <= rearranged_rhs`` and ``rearranged_rhs == rhs`` where
    ``truncated_rhs = r_bar |E_0| + I(E_0, E~)``, ``rearranged_rhs = r_bar |E_0| + I(E_0*, E~*)``.
    """

    rbar: RBarResult
    steps: tuple[TraceStep, ...]
    lhs: Fraction
    truncated_rhs: Fraction
    rearranged_rhs: Fraction
    rhs: Fraction
    truncation_ok: bool = field(init=False)
    rearrangement_ok: bool = field(init=False)
    identity_ok: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "truncation_ok", self.lhs <= self.truncated_rhs)
        object.__setattr__(self, "rearrangement_ok", self.truncated_rhs <= self.rearranged_rhs)
        object.__setattr__(self, "identity_ok", self.rearranged_rhs == self.rhs)

    @property
    def holds(self) -> bool:
        return self.truncation_ok and self.rearrangement_ok and self.identity_ok

    def to_json(self) -> list[dict]:
        from .serialize import format_rational as f
        chain = {"lhs": f(self.lhs), "truncated_rhs": f(self.truncated_rhs),
                 "rearranged_rhs": f(self.rearranged_rhs), "rhs": f(self.rhs),
                 "truncation_ok": self.truncation_ok, "rearrangement_ok": self.rearrangement_ok,
                 "identity_ok": self.identity_ok}
        out = []
        for step in self.steps:
            entry = {"r": f(step.r), "verdict": step.verdict.value,
                     "value": f(step.value), "symmetrized": f(step.symmetrized)}
            if step.r:
                entry["chain"] = chain
            out.append(entry)
        return out


def induction_trace(P: Problem) -> InductionTrace:
    """Run one flow step to ``r_bar`` and evaluate every term of the chain exactly."""
    rb = find_rbar(P)
    r = rb.r_bar
    reduced = Problem(P.system, sets_at(DeformationState(P, r)))
    m0 = P.measures[0]
    lhs, rhs = evaluate(P), evaluate_symmetrized(P)
    red_val, red_sym = evaluate(reduced), evaluate_symmetrized(reduced)
    steps = (
        TraceStep(Fraction(0), Verdict.STRICT, P, lhs, rhs),
        TraceStep(r, rb.report_at_rbar.verdict, reduced, red_val, red_sym),
    )
    return InductionTrace(rb, steps, lhs, r * m0 + red_val, r * m0 + red_sym, rhs)


