import random
from fractions import Fraction as F

import pytest
from conftest import S, rationals, systems
from hypothesis import given, strategies as st

from bll_equality.admissibility import StripSystem, Verdict, check
from bll_equality.deformation import (
    PROBE,
    DeformationState,
    construct_maximizer,
    equality_analysis,
    find_rbar,
    half_widths_at,
    induction_trace,
    rbar_by_bisection,
    sets_at,
)
from bll_equality.errors import PreconditionError
from bll_equality.functional import deficit, evaluate
from bll_equality.fuzz import admissible_measures, random_normal_system
from bll_equality.linear_forms import SUM_FORM, FormSystem, Problem

from oracles import rbar_scan_sum_form


def centered(*ms):
    return Problem(SUM_FORM, tuple(S((-F(m) / 2, F(m) / 2)) for m in ms))


def test_sets_at_examples():
    P = Problem(SUM_FORM, (S((0, 2)), S((-1, 1)), S((0, 1), (2, 4))))
    assert sets_at(DeformationState(P, 0)) == P.sets
    out = sets_at(DeformationState(P, 1))
    assert out[0] == P.sets[0]
    assert out[1] == S((F(-1, 2), F(1, 2)))
    assert out[2] == S((F(1, 2), 1), (2, F(7, 2)))
    with pytest.raises(PreconditionError):
        DeformationState(P, 3)


def test_half_widths_examples():
    assert half_widths_at((2, 2, 2), 0) == (1, 1, 1)
    assert half_widths_at((2, 2, 2), 1) == (1, F(1, 2), F(1, 2))
    assert half_widths_at((2, 3, 2), 2) == (1, F(1, 2), 0)


def test_rbar_examples():
    rb = find_rbar(centered(2, 2, 2))
    assert rb.r_bar == 1 == rbar_scan_sum_form((2, 2, 2))
    assert rb.report_at_rbar.verdict is Verdict.NONSTRICT
    assert rb.containment_index == 0 and rb.report_at_rbar.witnesses == (0,)
    assert rb.pre_rbar_probe.verdict is Verdict.STRICT
    assert find_rbar(centered(2, 4, 4)).r_bar == 3 == rbar_scan_sum_form((2, 4, 4))
    with pytest.raises(PreconditionError):
        find_rbar(centered(2, 1, 1))


def test_rbar_needs_normal_form():
    P = Problem(FormSystem.of((1, 1), (1, -1), (1, 0)), (S((-1, 1)),) * 3)
    with pytest.raises(PreconditionError):
        find_rbar(P)


@pytest.mark.parametrize("ms", [(2, 2, 2), (3, 2, 2), (F(5, 2), 3, F(7, 4)), (1, 3, 3), (F(7, 8), 1, 1)])
def test_rbar_against_scan(ms):
    r = find_rbar(centered(*ms)).r_bar
    hit = rbar_scan_sum_form(ms)
    assert hit - F(1, 2**10) < r <= hit


def test_rbar_depends_only_on_measures():
    A = Problem(SUM_FORM, (S((0, 2)), S((-1, 0), (1, 2)), S((5, 7))))
    assert find_rbar(A).r_bar == find_rbar(centered(2, 2, 2)).r_bar


@given(st.integers(0, 2**32), st.integers(3, 6))
def test_rbar_certificate(seed, n):
    rng = random.Random(seed)
    system = random_normal_system(rng, n)
    ms = admissible_measures(rng, system, strict=True)
    P = Problem(system, tuple(S((-m / 2, m / 2)) for m in ms))
    rb = find_rbar(P)
    assert 0 < rb.r_bar < min(ms[1:])
    assert rb.r_bar == rbar_by_bisection(system, ms)
    above = min(rb.r_bar * (1 + PROBE), min(ms[1:]))
    ws = half_widths_at(ms, above)
    if all(w > 0 for w in ws):
        assert check(StripSystem(system, ws)).verdict is not Verdict.STRICT


def test_equality_analysis_examples():
    v = equality_analysis(Problem(SUM_FORM, (S((0, 2)), S((1, 3)), S((1, 5)))))
    assert v.is_maximizer and v.centers == (1, 2, 3) and v.z == (1, 2) and v.theorem_violation is None
    assert v.to_json() == {"is_maximizer": True, "deficit": "0", "centers": ["1", "2", "3"], "z": ["1", "2"]}
    v = equality_analysis(Problem(SUM_FORM, (S((-1, 1)), S((-1, 1)), S((0, 2)))))
    assert not v.is_maximizer and v.deficit == 1
    v = equality_analysis(Problem(SUM_FORM, (S((-1, 1)), S((-1, 1)), S((-1, 0), (1, 2)))))
    assert not v.is_maximizer and v.deficit > 0
    with pytest.raises(PreconditionError):
        equality_analysis(centered(3, 1, 1))


def test_construct_maximizer_examples():
    P = construct_maximizer(SUM_FORM, (2, 2, 2), (0, 0))
    assert P == centered(2, 2, 2) and deficit(P) == 0
    P = construct_maximizer(SUM_FORM, (2, 2, 4), (1, 2))
    assert P.sets == (S((0, 2)), S((1, 3)), S((1, 5)))
    assert evaluate(P) == 4 and deficit(P) == 0
    P = construct_maximizer(SUM_FORM, (1, 1, 1), (5, -5))
    assert deficit(P) == 0
    with pytest.raises(PreconditionError):
        construct_maximizer(SUM_FORM, (3, 1, 1), (0, 0))


@given(systems(), st.integers(0, 2**32), rationals(), rationals())
def test_converse(system, seed, zx, zy):
    ms = admissible_measures(random.Random(seed), system)
    P = construct_maximizer(system, ms, (zx, zy))
    v = equality_analysis(P)
    assert v.is_maximizer and v.z == (zx, zy)


def test_trace_maximizer():
    tr = induction_trace(centered(2, 2, 2))
    assert tr.rbar.r_bar == 1
    assert tr.lhs == tr.truncated_rhs == tr.rearranged_rhs == tr.rhs == 3
    assert tr.holds
    js = tr.to_json()
    assert [s["r"] for s in js] == ["0", "1"]
    assert js[1]["chain"]["identity_ok"] is True


def test_trace_non_maximizer():
    tr = induction_trace(Problem(SUM_FORM, (S((-1, 1)), S((-1, 1)), S((0, 2)))))
    assert (tr.lhs, tr.truncated_rhs, tr.rearranged_rhs, tr.rhs) == (2, F(5, 2), 3, 3)
    assert tr.rhs - tr.lhs == 1
    assert tr.lhs < tr.truncated_rhs and tr.holds


@given(st.integers(0, 2**32), st.integers(3, 5))
def test_trace_chain_random(seed, n):
    rng = random.Random(seed)
    system = random_normal_system(rng, n)
    ms = admissible_measures(rng, system, strict=True)
    sets = []
    for m in ms:
        lo = rationals_from(rng)
        if rng.random() < 0.5:
            sets.append(S((lo, lo + m)))
        else:
            sets.append(S((lo, lo + m / 3), (lo + m, lo + m + 2 * m / 3)))
    tr = induction_trace(Problem(system, tuple(sets)))
    assert tr.holds


def rationals_from(rng):
    return F(rng.randint(-16, 16), rng.randint(1, 8))
