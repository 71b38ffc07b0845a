"""Exact-arithmetic zero-half cut toolkit.

Submodules:

* ``core``     instance / multiplier / cut model and shared checks
* ``graphs``   exact min-cut and shortest-path kernels
* ``oracle``   brute-force enumeration references
* ``colsep``   primal separation for systems with <= 2 odd entries per column
* ``rowsep``   primal separation for systems with <= 2 odd entries per row
* ``simplex``  exact rational LP solver
* ``closure``  bounded-support closure approximation
* ``matching`` primal cutting-plane maximum-weight matching
* ``generate`` seeded random test-case generators
* ``cli``      text front end
"""

from .core import (
    Cut,
    IlpInstance,
    Multipliers,
    Point,
    Rational,
    SeparationContext,
    ZeroHalfError,
    as_point,
    compute_context,
    derive_cut,
    extended_slack,
    is_tight_nontrivial,
    parity_profile,
    violation,
)
from .closure import ApproxParams, approx_optimize, monotone_presolve
from .colsep import primal_separate_col
from .matching import WeightedGraph, solve_matching
from .oracle import (
    brute_closure_optimize,
    brute_max_matching,
    brute_primal_separate,
    brute_standard_separate,
)
from .rowsep import primal_separate_row

__all__ = [
    "ApproxParams",
    "Cut",
    "IlpInstance",
    "Multipliers",
    "Point",
    "Rational",
    "SeparationContext",
    "WeightedGraph",
    "ZeroHalfError",
    "approx_optimize",
    "as_point",
    "brute_closure_optimize",
    "brute_max_matching",
    "brute_primal_separate",
    "brute_standard_separate",
    "compute_context",
    "derive_cut",
    "extended_slack",
    "is_tight_nontrivial",
    "monotone_presolve",
    "parity_profile",
    "primal_separate_col",
    "primal_separate_row",
    "solve_matching",
    "violation",
]
