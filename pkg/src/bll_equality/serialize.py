"""JSON encoding of exact rationals, interval sets and problem documents.

Rationals travel as JSON integers or strings ``"p/q"`` (also ``"p"``);
output always uses the string form with ``q > 0`` and ``gcd(p, q) = 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from .interval_sets import Interval, IntervalSet, normalize
from .linear_forms import FormSystem, LinearForm, Problem

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


class ParseError(ValueError):
    """A problem document is malformed."""


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.fullmatch(value)
        if m is None:
            raise ParseError(f"not a rational: {value!r}")
        p, q = int(m.group(1)), int(m.group(2) or 1)
        if q == 0:
            raise ParseError(f"zero denominator in {value!r}")
        return Fraction(p, q)
    raise ParseError(f"rationals must be integers or 'p/q' strings, got {value!r}")


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_interval_set(value: Any) -> IntervalSet:
    if not isinstance(value, list):
        raise ParseError("an interval set is a list of [lo, hi] pairs")
    ivs = []
    for pair in value:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"bad interval {pair!r}")
        lo, hi = parse_rational(pair[0]), parse_rational(pair[1])
        if lo > hi:
            raise ParseError(f"interval with lo > hi: {pair!r}")
        ivs.append(Interval(lo, hi))
    return normalize(ivs)


def dump_interval_set(E: IntervalSet) -> list[list[str]]:
    return [[format_rational(c.lo), format_rational(c.hi)] for c in E]


def parse_forms(value: Any) -> list[LinearForm]:
    """Parse ``[[a, b], ...]``; nondegeneracy is checked by :class:`FormSystem`."""
    if not isinstance(value, list):
        raise ParseError("'forms' must be a list of [a, b] pairs")
    forms = []
    for pair in value:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"bad form {pair!r}")
        a, b = parse_rational(pair[0]), parse_rational(pair[1])
        if a == 0 and b == 0:
            raise ParseError("the zero form is not allowed")
        forms.append(LinearForm(a, b))
    return forms


def dump_forms(system: FormSystem) -> list[list[str]]:
    return [[format_rational(L.a), format_rational(L.b)] for L in system]


def parse_document(doc: Any):
    """Return ``(system, sets or None, measures)`` from a problem document.

    A document carries ``forms`` and either ``sets`` or bare ``measures``.
    Raises :class:`ParseError` for malformed input and
    :class:`~bll_equality.errors.DegenerateSystemError` for parallel forms.
    """
    if not isinstance(doc, dict) or "forms" not in doc:
        raise ParseError("document must be an object with a 'forms' key")
    forms = parse_forms(doc["forms"])
    if len(forms) < 3:
        raise ParseError("at least three forms are required")
    system = FormSystem(tuple(forms))
    if "sets" in doc:
        if not isinstance(doc["sets"], list) or len(doc["sets"]) != len(forms):
            raise ParseError("'sets' must hold one interval set per form")
        sets = tuple(parse_interval_set(s) for s in doc["sets"])
        return system, sets, tuple(E.measure for E in sets)
    if "measures" in doc:
        ms = doc["measures"]
        if not isinstance(ms, list) or len(ms) != len(forms):
            raise ParseError("'measures' must hold one value per form")
        measures = tuple(parse_rational(m) for m in ms)
        if any(m < 0 for m in measures):
            raise ParseError("measures must be nonnegative")
        return system, None, measures
    raise ParseError("document needs 'sets' or 'measures'")


def parse_problem(doc: Any) -> Problem:
    system, sets, _ = parse_document(doc)
    if sets is None:
        raise ParseError("this command needs explicit 'sets'")
    return Problem(system, sets)


def dump_problem(P: Problem) -> dict:
    return {"forms": dump_forms(P.system), "sets": [dump_interval_set(E) for E in P.sets]}
