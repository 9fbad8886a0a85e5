"""Command-line front end: ``bll-equality <command> --file problem.json``.

Every command prints one JSON document on stdout.  Rationals are exact
``"p/q"`` strings; the only floats are the sampling fields under ``"mc"``.
On error nothing is printed on stdout and the exit code names the failure:

    1  fuzz found violations
    2  malformed input
    3  degenerate form system
    4  precondition not met (e.g. inadmissible measures)
    5  internal certificate failure
"""

from __future__ import annotations

import argparse
import json
import sys

from .admissibility import StripSystem, check, nonuniqueness_witness
from .deformation import equality_analysis, find_rbar, induction_trace
from .errors import BLLError, CertificateError, DegenerateSystemError, PreconditionError
from .functional import evaluate, evaluate_symmetrized, mc_estimate
from .fuzz import SUITES, run_suite
from .interval_sets import IntervalSet
from .linear_forms import Problem, to_normal_form
from .serialize import ParseError, dump_problem, format_rational, parse_document, parse_problem

EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_PRECONDITION = 4
EXIT_CERTIFICATE = 5


def _load(path: str | None):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _centered(measures) -> tuple[IntervalSet, ...]:
    return tuple(IntervalSet.from_pairs([(-m / 2, m / 2)]) if m else IntervalSet.point_zero()
                 for m in measures)


def _problem_or_centered(doc) -> Problem:
    system, sets, measures = parse_document(doc)
    return Problem(system, sets if sets is not None else _centered(measures))


def cmd_eval(args) -> dict:
    P = parse_problem(_load(args.file))
    value, sym = evaluate(P), evaluate_symmetrized(P)
    out = {"value": format_rational(value), "symmetrized": format_rational(sym),
           "deficit": format_rational(sym - value)}
    if args.samples:
        est, err = mc_estimate(P, args.samples, args.seed)
        out["mc"] = {"estimate": est, "stderr": err, "samples": args.samples, "seed": args.seed}
    return out


def cmd_admissible(args) -> dict:
    system, _, measures = parse_document(_load(args.file))
    return check(StripSystem.from_measures(system, measures)).to_json()


def cmd_deform(args) -> dict:
    P = _problem_or_centered(_load(args.file))
    if not 0 <= args.index < len(P):
        raise PreconditionError(f"index {args.index} out of range")
    nf, Pn = to_normal_form(P, args.index, None)
    out = {"normal_form": {"c": format_rational(nf.c), "t": [format_rational(t) for t in nf.t],
                           "order": list(nf.order)}}
    if args.trace:
        tr = induction_trace(Pn)
        out.update(tr.rbar.to_json())
        out["trace"] = tr.to_json()
    else:
        out.update(find_rbar(Pn).to_json())
    return out


def cmd_analyze(args) -> dict:
    return equality_analysis(parse_problem(_load(args.file))).to_json()


def cmd_witness(args) -> dict:
    system, _, measures = parse_document(_load(args.file))
    k = args.index
    if k is None:
        report = check(StripSystem.from_measures(system, measures))
        bad = [i for i, s in enumerate(report.slacks) if s < 0]
        if not bad:
            raise PreconditionError("measures are admissible; no witness index exists")
        k = bad[0]
    return dump_problem(nonuniqueness_witness(system, measures, k))


def _n_range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition("-")
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'LO-HI', got {text!r}")
    if not 3 <= lo <= hi:
        raise argparse.ArgumentTypeError("need 3 <= LO <= HI")
    return lo, hi


def cmd_fuzz(args) -> dict:
    if args.instances < 1:
        raise ParseError("--instances must be >= 1")
    return run_suite(args.suite, args.instances, args.seed, args.n_range, args.jobs).to_json()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bll-equality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("eval", cmd_eval, "exact value, symmetrized value and deficit")
    p.add_argument("--file")
    p.add_argument("--samples", type=int, default=0, help="also run a Monte Carlo estimate")
    p.add_argument("--seed", type=int, default=0)

    p = add("admissible", cmd_admissible, "admissibility report for the measures")
    p.add_argument("--file")

    p = add("deform", cmd_deform, "critical flow parameter r_bar in normal form")
    p.add_argument("--file")
    p.add_argument("--index", type=int, default=0, help="privileged index (default 0)")
    p.add_argument("--trace", action="store_true", help="also run one induction step")

    p = add("analyze", cmd_analyze, "decide whether the problem is a maximizer")
    p.add_argument("--file")

    p = add("witness", cmd_witness, "equality case with a non-interval set")
    p.add_argument("--file")
    p.add_argument("--index", type=int, default=None)

    p = add("fuzz", cmd_fuzz, "run a seeded property suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="bll")
    p.add_argument("--instances", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-range", type=_n_range, default=(3, 6))
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.fn(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, exc)
    except DegenerateSystemError as exc:
        return _fail(EXIT_DEGENERATE, exc)
    except PreconditionError as exc:
        return _fail(EXIT_PRECONDITION, exc)
    except (CertificateError, BLLError) as exc:
        return _fail(EXIT_CERTIFICATE, exc)
    json.dump(out, sys.stdout, sort_keys=False)
    sys.stdout.write("\n")
    if args.command == "fuzz" and out["violations"]:
        return EXIT_VIOLATIONS
    return 0


def _fail(code: int, exc: Exception) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
