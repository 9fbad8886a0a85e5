"""Seeded random instances and the property suites the fuzz command runs.

Every instance draws from its own ``random.Random`` derived from the master
seed and the instance number, so results do not depend on scheduling.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .admissibility import StripSystem, Verdict, burchard_check, check, nonuniqueness_witness
from .deformation import construct_maximizer, equality_analysis, find_rbar
from .errors import BLLError
from .functional import deficit
from .interval_sets import Interval, IntervalSet, affine_image, intersection_measure, is_interval_mod_null, truncate
from .linear_forms import SUM_FORM, FormSystem, LinearForm, Problem, coherent_center, is_nondegenerate
from .serialize import dump_problem, format_rational

MAX_DEN = 16
MAX_COMPONENTS = 4


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = MAX_DEN) -> Fraction:
    d = rng.randint(1, max_den)
    k_lo, k_hi = math.ceil(lo * d), math.floor(hi * d)
    return Fraction(rng.randint(k_lo, k_hi), d)


def random_interval_set(rng: random.Random, max_components: int = MAX_COMPONENTS,
                        span: int = 3, max_den: int = MAX_DEN) -> IntervalSet:
    """Up to ``max_components`` disjoint pieces with endpoints in ``[-span, span]``."""
    c = rng.randint(1, max_components)
    d = rng.randint(2, max_den)
    grid = rng.sample(range(-span * d, span * d + 1), 2 * c)
    pts = sorted(Fraction(k, d) for k in grid)
    return IntervalSet(tuple(Interval(pts[2 * i], pts[2 * i + 1]) for i in range(c)))


def random_interval(rng: random.Random, span: int = 3, max_den: int = MAX_DEN) -> IntervalSet:
    return random_interval_set(rng, 1, span, max_den)


def random_form_system(rng: random.Random, size: int, coef: int = 3) -> FormSystem:
    while True:
        forms = []
        for _ in range(size):
            a, b = rng.randint(-coef, coef), rng.randint(-coef, coef)
            if a or b:
                forms.append(LinearForm(a, b))
        if len(forms) == size and is_nondegenerate(forms)[0]:
            return FormSystem(tuple(forms))


def random_normal_system(rng: random.Random, size: int) -> FormSystem:
    ts: set[Fraction] = set()
    while len(ts) < size - 1:
        ts.add(random_rational(rng, Fraction(-3), Fraction(3), 4))
    ts_list = sorted(ts)
    rng.shuffle(ts_list)
    return FormSystem((LinearForm(1, 0),) + tuple(LinearForm(t, 1) for t in ts_list))


def random_measures(rng: random.Random, size: int) -> list[Fraction]:
    return [random_rational(rng, Fraction(1, 4), Fraction(4), 8) for _ in range(size)]


def random_problem(rng: random.Random, size: int, system: FormSystem | None = None) -> Problem:
    system = system or random_form_system(rng, size)
    return Problem(system, tuple(random_interval_set(rng) for _ in range(size)))


def verdict_of(system: FormSystem, measures) -> Verdict:
    return check(StripSystem.from_measures(system, measures)).verdict


def _hull_widths(rng: random.Random, system: FormSystem) -> list[Fraction]:
    """Half-widths of the tightest strips around a random symmetric polygon.

    Every ``K_k`` contains the polygon, so these widths are always admissible
    and, for a generic polygon, usually strictly so.
    """
    pts = [(random_rational(rng, Fraction(-2), Fraction(2), 8),
            random_rational(rng, Fraction(-2), Fraction(2), 8)) for _ in range(rng.randint(2, 5))]
    ws = [max(abs(L(*p)) for p in pts) for L in system]
    if any(w == 0 for w in ws):
        return []
    jitter = [1 + random_rational(rng, Fraction(0), Fraction(1, 8), 16) for _ in ws]
    return [w * f for w, f in zip(ws, jitter)]


def admissible_measures(rng: random.Random, system: FormSystem, strict: bool = False,
                        tries: int = 10_000) -> list[Fraction]:
    """Rejection sampling, falling back to polygon-tangent strips for large systems."""
    ok = {Verdict.STRICT} if strict else {Verdict.STRICT, Verdict.NONSTRICT}
    for i in range(tries):
        if i < 3:
            ms = random_measures(rng, len(system))
        else:
            ws = _hull_widths(rng, system)
            if not ws:
                continue
            ms = [2 * w for w in ws]
        if verdict_of(system, ms) in ok:
            return ms
    raise RuntimeError("could not draw admissible measures")


def random_set_with_measure(rng: random.Random, m: Fraction, intervals_only: bool = False) -> IntervalSet:
    E = random_interval(rng) if intervals_only else random_interval_set(rng)
    return affine_image(E, m / E.measure, random_rational(rng, Fraction(-2), Fraction(2)))


# --- suites: each returns (passed, reproducer) ------------------------------

def _size(rng, n_range):
    return rng.randint(*n_range)


def suite_bll(rng, n_range):
    P = random_problem(rng, _size(rng, n_range))
    d = deficit(P)
    return d >= 0, {"problem": dump_problem(P), "deficit": format_rational(d)}


def suite_converse(rng, n_range):
    system = random_form_system(rng, _size(rng, n_range))
    ms = admissible_measures(rng, system)
    z = (random_rational(rng, Fraction(-3), Fraction(3)), random_rational(rng, Fraction(-3), Fraction(3)))
    P = construct_maximizer(system, ms, z)
    d = deficit(P)
    return d == 0, {"problem": dump_problem(P), "deficit": format_rational(d)}


def random_forward_instance(rng, n_range) -> Problem:
    """Admissible problem that is not a coherent tuple of intervals."""
    while True:
        system = random_form_system(rng, _size(rng, n_range))
        ms = admissible_measures(rng, system)
        intervals_only = rng.random() < 0.5
        sets = [random_set_with_measure(rng, m, intervals_only) for m in ms]
        centers = [is_interval_mod_null(E) for E in sets]
        if all(c is not None for c in centers) and coherent_center(system, centers) is not None:
            continue
        return Problem(system, tuple(sets))


def suite_forward(rng, n_range):
    P = random_forward_instance(rng, n_range)
    v = equality_analysis(P)
    ok = v.deficit > 0 and not v.is_maximizer and v.theorem_violation is None
    return ok, {"problem": dump_problem(P), "deficit": format_rational(v.deficit)}


def random_sum_form_measures(rng) -> list[Fraction]:
    ms = [random_rational(rng, Fraction(1, 8), Fraction(4), 8) for _ in range(3)]
    if rng.random() < 0.3:
        i = rng.randrange(3)
        ms[i] = sum(ms) - ms[i]  # land exactly on the boundary
    return ms


def suite_sum_form(rng, n_range):
    ms = random_sum_form_measures(rng)
    report = check(StripSystem.from_measures(SUM_FORM, ms))
    geometric = tuple("strict" if s > 0 else "non-strict" if s == 0 else "fails" for s in report.slacks)
    return geometric == burchard_check(ms), {"measures": [format_rational(m) for m in ms]}


def random_truncation_instance(rng, intervals_only: bool):
    """``(sets, alpha, beta)`` with a truncated intersection of positive measure."""
    while True:
        k = rng.randint(1, 4)
        make = random_interval if intervals_only else random_interval_set
        sets = [make(rng) for _ in range(k)]
        cap = min(E.measure for E in sets)
        alpha = random_rational(rng, Fraction(0), cap / 2)
        beta = random_rational(rng, Fraction(0), cap / 2)
        if alpha <= 0 or beta <= 0 or alpha + beta > cap:
            continue
        truncs = [truncate(E, alpha, beta) for E in sets]
        if intervals_only:
            if max(t[1] for t in truncs) > min(t[2] for t in truncs):
                continue
        elif intersection_measure([t[0] for t in truncs]) == 0:
            continue
        return sets, alpha, beta, [t[0] for t in truncs]


def suite_truncation(rng, n_range, intervals_only: bool = False):
    sets, alpha, beta, truncs = random_truncation_instance(rng, intervals_only)
    lhs = intersection_measure(sets)
    rhs = alpha + beta + intersection_measure(truncs)
    ok = lhs == rhs if intervals_only else lhs <= rhs
    return ok, {"sets": [[[format_rational(c.lo), format_rational(c.hi)] for c in E] for E in sets],
                "alpha": format_rational(alpha), "beta": format_rational(beta)}


def random_strict_normal_problem(rng, n_range) -> Problem:
    system = random_normal_system(rng, _size(rng, n_range))
    ms = admissible_measures(rng, system, strict=True)
    return Problem(system, tuple(IntervalSet.from_pairs([(-m / 2, m / 2)]) for m in ms))


def suite_rbar(rng, n_range):
    P = random_strict_normal_problem(rng, n_range)
    rep = {"problem": dump_problem(P)}
    try:
        rb = find_rbar(P)
    except BLLError as exc:
        rep["error"] = str(exc)
        return False, rep
    rep["r_bar"] = format_rational(rb.r_bar)
    ok = (0 < rb.r_bar < min(P.measures[1:]) and rb.report_at_rbar.verdict.admissible
          and rb.pre_rbar_probe.verdict is Verdict.STRICT and rb.containment_index == 0
          and rb.r_bar == rb.r_bar_bisection)
    return ok, rep


def random_inadmissible(rng, n_range):
    while True:
        system = random_form_system(rng, _size(rng, n_range))
        ms = random_measures(rng, len(system))
        S = StripSystem.from_measures(system, ms)
        report = check(S)
        ks = [k for k, s in enumerate(report.slacks) if s < 0]
        if ks:
            return system, ms, rng.choice(ks)


def suite_witness(rng, n_range):
    system, ms, k = random_inadmissible(rng, n_range)
    P = nonuniqueness_witness(system, ms, k)
    d = deficit(P)
    ok = d == 0 and is_interval_mod_null(P.sets[k]) is None
    return ok, {"problem": dump_problem(P), "index": k, "deficit": format_rational(d)}


SUITES: dict[str, Callable] = {
    "bll": suite_bll,
    "converse": suite_converse,
    "forward": suite_forward,
    "sum-form": suite_sum_form,
    "truncation": suite_truncation,
    "truncation-equality": lambda rng, n_range: suite_truncation(rng, n_range, intervals_only=True),
    "rbar": suite_rbar,
    "witness": suite_witness,
}


@dataclass
class FuzzSummary:
    suite: str
    checked: int = 0
    violations: int = 0
    reproducers: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"suite": self.suite, "checked": self.checked, "violations": self.violations,
                "reproducers": self.reproducers}


def _run_chunk(args):
    suite, seed, start, stop, n_range = args
    fn = SUITES[suite]
    bad = []
    for i in range(start, stop):
        ok, rep = fn(instance_rng(seed, i), n_range)
        if not ok:
            bad.append(dict(rep, instance=i))
    return stop - start, bad


def run_suite(suite: str, instances: int, seed: int = 0, n_range: tuple[int, int] = (3, 6),
              jobs: int = 1, max_reproducers: int = 10) -> FuzzSummary:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if instances < 1:
        raise ValueError("instances must be >= 1")
    step = max(1, instances // (4 * jobs)) if jobs > 1 else instances
    chunks = [(suite, seed, a, min(a + step, instances), n_range) for a in range(0, instances, step)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_chunk, chunks))
    else:
        results = [_run_chunk(c) for c in chunks]
    summary = FuzzSummary(suite)
    for checked, bad in results:
        summary.checked += checked
        summary.violations += len(bad)
        summary.reproducers.extend(bad)
    summary.reproducers.sort(key=lambda r: r["instance"])
    del summary.reproducers[max_reproducers:]
    return summary
