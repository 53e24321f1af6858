"""Exact equations for Quot schemes of length-n quotients of O^p on P^r.

The package is layered:

* :mod:`quotfit.polyring` - sparse polynomials over Q with text and JSON forms
* :mod:`quotfit.grobner` - Buchberger bases, membership, ideal equality, radicals
* :mod:`quotfit.exactla` - polynomial matrices, determinants, minors, ranks
* :mod:`quotfit.macaulay` - Macaulay representations and the bound n^<d>
* :mod:`quotfit.quotcore` - Grassmannian charts, Fitting strata, stabilization
* :mod:`quotfit.cli` - the ``quotfit`` command line tool
"""

from .errors import ParseError, QuotfitError, ResourceError, RingMismatchError
from .exactla import (
    PolyMatrix,
    all_minors,
    det_bareiss,
    det_laplace,
    determinant,
    eliminate_unit_pivots,
    minors,
    rank_at_point,
    rational_rank,
)
from .grobner import (
    Ideal,
    buchberger,
    ideal_contains,
    ideal_equal,
    normal_form,
    radical_member,
)
from .macaulay import MacaulayRep, macaulay_growth, macaulay_rep, monomial_basis
from .polyring import (
    PolyRing,
    Polynomial,
    TermOrder,
    format_polynomial,
    normalize_primitive,
    parse_polynomial,
    poly_evaluate,
    polynomial_from_json,
)
from .quotcore import (
    NOT_STABILIZED,
    ConeModule,
    FittingStratum,
    GrassmannChart,
    ModuleElement,
    QuotProblem,
    QuotResult,
    chart_kernel,
    chart_report,
    cone_component_generators,
    cumulative_equations,
    fiber_dimension_check,
    fitting_contained,
    fitting_ideal,
    fitting_stratum,
    homogenize_chart_ideal,
    presentation_matrix,
    quot_equations,
    radical_stability_check,
    stabilization_offset,
)

__version__ = "0.1.0"

__all__ = [
    "ConeModule",
    "FittingStratum",
    "GrassmannChart",
    "Ideal",
    "MacaulayRep",
    "ModuleElement",
    "NOT_STABILIZED",
    "ParseError",
    "PolyMatrix",
    "PolyRing",
    "Polynomial",
    "QuotProblem",
    "QuotResult",
    "QuotfitError",
    "ResourceError",
    "RingMismatchError",
    "TermOrder",
    "all_minors",
    "buchberger",
    "chart_kernel",
    "chart_report",
    "cone_component_generators",
    "cumulative_equations",
    "det_bareiss",
    "det_laplace",
    "determinant",
    "eliminate_unit_pivots",
    "fiber_dimension_check",
    "fitting_contained",
    "fitting_ideal",
    "fitting_stratum",
    "format_polynomial",
    "homogenize_chart_ideal",
    "ideal_contains",
    "ideal_equal",
    "macaulay_growth",
    "macaulay_rep",
    "minors",
    "monomial_basis",
    "normal_form",
    "normalize_primitive",
    "parse_polynomial",
    "poly_evaluate",
    "polynomial_from_json",
    "presentation_matrix",
    "quot_equations",
    "radical_member",
    "radical_stability_check",
    "rank_at_point",
    "rational_rank",
    "stabilization_offset",
]
