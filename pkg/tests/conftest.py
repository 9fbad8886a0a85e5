import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import assume, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from bll_equality.interval_sets import Interval, IntervalSet  # noqa: E402
from bll_equality.linear_forms import FormSystem, LinearForm, Problem, is_nondegenerate  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def rationals(draw, lo=-4, hi=4, max_den=8):
    d = draw(st.integers(1, max_den))
    k = draw(st.integers(lo * d, hi * d))
    return Fraction(k, d)


@st.composite
def interval_sets(draw, max_components=4, allow_empty=False):
    n = draw(st.integers(0 if allow_empty else 1, max_components))
    d = draw(st.integers(1, 8))
    pts = draw(st.lists(st.integers(-4 * d, 4 * d), min_size=2 * n, max_size=2 * n, unique=True))
    pts = sorted(Fraction(p, d) for p in pts)
    return IntervalSet(tuple(Interval(pts[2 * i], pts[2 * i + 1]) for i in range(n)))


@st.composite
def raw_intervals(draw, max_len=6):
    out = []
    for _ in range(draw(st.integers(0, max_len))):
        a, b = draw(rationals()), draw(rationals())
        out.append(Interval(min(a, b), max(a, b)))
    return out


def S(*pairs) -> IntervalSet:
    return IntervalSet.from_pairs(pairs)


@st.composite
def systems(draw, size=None):
    n = size or draw(st.integers(3, 5))
    forms = draw(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=n, max_size=n))
    forms = [LinearForm(a, b) for a, b in forms if a or b]
    assume(len(forms) == n and is_nondegenerate(forms)[0])
    return FormSystem(tuple(forms))


@st.composite
def problems(draw, max_components=2):
    system = draw(systems())
    sets = tuple(draw(interval_sets(max_components=max_components)) for _ in system)
    return Problem(system, sets)
