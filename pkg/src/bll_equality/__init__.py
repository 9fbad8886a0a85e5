"""Exact evaluation and equality analysis for rank-one multilinear functionals on the plane.

``I(E_1, ..., E_n)`` is the area of ``{X : L_j(X) ∈ E_j for all j}`` for
rational linear forms ``L_j`` and finite unions of closed intervals ``E_j``.
Everything is computed in exact rational arithmetic.
"""

from .admissibility import (
    AdmissibilityReport,
    StripSystem,
    Verdict,
    burchard_check,
    check,
    check_problem,
    nonuniqueness_witness,
    stability_margin,
)
from .deformation import (
    EqualityVerdict,
    InductionTrace,
    RBarResult,
    construct_maximizer,
    equality_analysis,
    find_rbar,
    induction_trace,
)
from .errors import BLLError, CertificateError, DegenerateSystemError, PreconditionError
from .functional import deficit, evaluate, evaluate_symmetrized, mc_estimate
from .interval_sets import Interval, IntervalSet, normalize, symmetrized_set, truncate
from .linear_forms import SUM_FORM, FormSystem, LinearForm, Problem, to_normal_form
from .serialize import dump_problem, parse_problem

__version__ = "0.1.0"
