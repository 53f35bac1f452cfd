"""curvinv: exact symbolic curvature-scalar engine.

Computes curvature invariants of coordinate-chart metrics (optionally with
torsion), checks the null/normal/non-diverging congruence criterion for
scalar-degenerate geometries, detects phantom metric functions, and runs the
torsion-probe discrimination between geometries sharing a curvature-scalar
class.
"""

from . import _poly
from .errors import (
    ChartMismatchError,
    CurvinvError,
    DegenerateMetricError,
    DimensionError,
    KundtConstraintError,
    ParseError,
    PreconditionError,
    SignatureMismatchError,
    SlotError,
    SubstitutionError,
    UnboundSymbolError,
    UndecidedZeroError,
    UnknownCoordinateError,
)
from .expr import (
    Expr,
    constant,
    coordinate,
    coordinates,
    cos,
    differentiate,
    exp,
    free_functions,
    function_symbol,
    integer,
    is_zero,
    log,
    numeric_value,
    rational,
    render,
    simplify,
    sin,
    sqrt,
    substitute,
    sum_exprs,
)
from .tensors import Chart, Metric, Tensor, contract_network, kronecker, levi_civita
from .curvature import (
    Connection,
    CurvatureBundle,
    Torsion,
    check_identities,
    christoffel,
    connection_with_torsion,
    covariant_derivative,
    riemann,
    torsion_gradient_ansatz,
    torsion_levicivita_ansatz,
    torsion_of_connection,
)
from .invariants import (
    InvariantRecipe,
    InvariantReport,
    ProbeResult,
    beltrami_first,
    detect_phantom_functions,
    discriminate_with_torsion,
    evaluate_invariants,
    standard_invariant_set,
)
from .criterion import (
    ClassificationReport,
    CriterionReport,
    VectorField,
    check_theorem_criterion,
    classify_geometry,
    construct_kundt_metric,
    geodesic_flags,
    is_geodesic,
    is_nondiverging,
    is_normal,
    is_null,
    kundt_form_check,
    lie_annihilates,
    search_null_congruence,
)
from . import catalog

__version__ = "0.1.0"


def kernel_runtime() -> dict:
    """Which arithmetic backend the import system selected."""
    return {"compiled": bool(_poly.COMPILED), "module": _poly.__file__}
