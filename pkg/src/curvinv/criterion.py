"""The covariant criterion: null, normal, non-diverging congruences.

A geometry that escapes characterization by curvature scalars must admit a
non-diverging, normal, null vector field; in adapted coordinates the metric
takes the Kundt normal form

    2 du (A du + dv + B_k dx^k) + gamma_ij dx^i dx^j,   d(det gamma)/dv = 0,

whose field d/dv realizes all three properties.  This module implements the
per-field flags, the normal-form constructor/recognizer, a documented
sound-but-incomplete existence search, and the two-step classification.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .curvature import CurvatureBundle, christoffel, covariant_derivative
from .errors import KundtConstraintError, UndecidedZeroError
from .expr import Expr, differentiate, is_zero
from .invariants import (
    InvariantReport,
    detect_phantom_functions,
    evaluate_invariants,
    standard_invariant_set,
)
from .tensors import Chart, DOWN, Metric, Tensor

_ZERO = Expr.from_int(0)
_ONE = Expr.from_int(1)

CANDIDATE_DEGENERATE = "CANDIDATE-DEGENERATE"
NEGATIVE = "NEGATIVE"
SCALAR_CHARACTERIZABLE = "SCALAR-CHARACTERIZABLE"


class VectorField:
    """Contravariant vector field on a chart."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps):
        comps = tuple(c if isinstance(c, Expr) else Expr.from_fraction(Fraction(c))
                      for c in comps)
        if len(comps) != chart.n:
            raise ValueError("component count does not match chart dimension")
        self.chart = chart
        self.comps = comps

    def is_zero_field(self):
        return all(c.is_zero_struct for c in self.comps)

    def scale(self, s):
        return VectorField(self.chart, tuple(s * c for c in self.comps))

    def __repr__(self):
        return "VectorField(" + ", ".join(str(c) for c in self.comps) + ")"

    def describe(self):
        """Human-readable form, as a combination of coordinate fields."""
        parts = []
        for name, c in zip(self.chart.names, self.comps):
            if c.is_zero_struct:
                continue
            cs = str(c)
            parts.append(f"d/d{name}" if cs == "1" else f"({cs})*d/d{name}")
        return " + ".join(parts) if parts else "0"


def _lowered(N: VectorField, g: Metric):
    n = g.n
    return [sum((g.matrix[a][b] * N.comps[b] for b in range(n)), _ZERO)
            for a in range(n)]


def is_null(N: VectorField, g: Metric) -> bool:
    """g_ab N^a N^b = 0 (exact)."""
    n = g.n
    s = _ZERO
    for a in range(n):
        for b in range(n):
            s = s + g.matrix[a][b] * N.comps[a] * N.comps[b]
    return is_zero(s)


def is_normal(N: VectorField, g: Metric, connection=None) -> bool:
    """N_[a nabla_b N_c] = 0 with the torsion-free connection (exact)."""
    conn = connection if connection is not None else christoffel(g)
    low = _lowered(N, g)
    nt = Tensor(g.chart, (DOWN,), low)
    dn = covariant_derivative(nt, conn)  # slots (c, b): nabla_b n_c
    n = g.n
    comps = [low[a] * dn[(c, b)]
             for a, b, c in itertools.product(range(n), repeat=3)]
    t = Tensor(g.chart, (DOWN,) * 3, comps).antisymmetrize((0, 1, 2))
    return t.is_zero_tensor()


def normal_form_check(N: VectorField, g: Metric) -> bool:
    """Independent cross-check n ^ dn = 0 via bare partials."""
    low = _lowered(N, g)
    n = g.n
    coords = g.chart.coords
    comps = [low[a] * (differentiate(low[c], coords[b]) -
                       differentiate(low[b], coords[c]))
             for a, b, c in itertools.product(range(n), repeat=3)]
    t = Tensor(g.chart, (DOWN,) * 3, comps).antisymmetrize((0, 1, 2))
    return t.is_zero_tensor()


def is_nondiverging(N: VectorField, g: Metric, connection=None) -> bool:
    """nabla_a N^a = 0 (exact)."""
    conn = connection if connection is not None else christoffel(g)
    n = g.n
    coords = g.chart.coords
    s = _ZERO
    for a in range(n):
        s = s + differentiate(N.comps[a], coords[a])
    gam = conn.gamma
    for a in range(n):
        for m in range(n):
            c = gam[(a, m, a)]
            if c.is_zero_struct or N.comps[m].is_zero_struct:
                continue
            s = s + c * N.comps[m]
    return is_zero(s)


def geodesic_flags(N: VectorField, g: Metric, connection=None):
    """(strict, projective): N^b nabla_b N^a = 0, or = lambda N^a for a scalar.

    An affine reparametrization turns a projective geodesic into a strict one,
    so projective truth plus rescaling equals strict truth.
    """
    conn = connection if connection is not None else christoffel(g)
    n = g.n
    coords = g.chart.coords
    gam = conn.gamma
    acc = []
    for a in range(n):
        s = _ZERO
        for b in range(n):
            if N.comps[b].is_zero_struct:
                continue
            s = s + N.comps[b] * differentiate(N.comps[a], coords[b])
            for m in range(n):
                c = gam[(a, m, b)]
                if c.is_zero_struct or N.comps[m].is_zero_struct:
                    continue
                s = s + N.comps[b] * c * N.comps[m]
        acc.append(s)
    strict = all(c.is_zero_struct for c in acc)
    if strict:
        return True, True
    pivot = None
    for i in range(n):
        if not N.comps[i].is_zero_struct:
            pivot = i
            break
    if pivot is None:
        return strict, False
    lam = acc[pivot] / N.comps[pivot]
    projective = all(is_zero(acc[a] - lam * N.comps[a]) for a in range(n))
    return strict, projective


def is_geodesic(N: VectorField, g: Metric, projective: bool = False) -> bool:
    """Strict geodesic flag by default; ``projective=True`` asks instead
    whether N^b nabla_b N^a is proportional to N^a."""
    strict, proj = geodesic_flags(N, g)
    return proj if projective else strict


def lie_annihilates(N: VectorField, report: InvariantReport) -> bool:
    """Lie_N(phi) = 0 for every computed invariant phi (truncation recorded)."""
    coords = N.chart.coords
    for val in report.values.values():
        s = _ZERO
        for a in range(N.chart.n):
            if N.comps[a].is_zero_struct:
                continue
            s = s + N.comps[a] * differentiate(val, coords[a])
        if not is_zero(s):
            return False
    return True


class CriterionReport:
    """Flags of the covariant criterion for one candidate field."""

    def __init__(self, field, null, normal, nondiverging,
                 geodesic_strict, geodesic_projective,
                 annihilation=None, order=None):
        self.field = field
        self.null = null
        self.normal = normal
        self.nondiverging = nondiverging
        self.geodesic_strict = geodesic_strict
        self.geodesic_projective = geodesic_projective
        self.annihilation = annihilation
        self.order = order

    @property
    def verdict(self):
        if self.null and self.normal and self.nondiverging:
            return CANDIDATE_DEGENERATE
        return NEGATIVE

    def to_json_dict(self):
        return {
            "field": [str(c) for c in self.field.comps],
            "null": self.null,
            "normal": self.normal,
            "non_diverging": self.nondiverging,
            "geodesic": self.geodesic_strict,
            "geodesic_projective": self.geodesic_projective,
            "annihilates_invariants": self.annihilation,
            "invariant_order": self.order,
            "verdict": self.verdict,
        }


def check_theorem_criterion(g: Metric, N: VectorField,
                            invariant_report: InvariantReport = None,
                            order: int = None) -> CriterionReport:
    """Aggregate the null/normal/non-diverging flags (plus informational
    geodesic flags and, when an invariant set is supplied or an order given,
    the annihilation flag)."""
    if N.chart != g.chart:
        raise ValueError("field and metric live on different charts")
    if N.is_zero_field():
        raise ValueError("the zero field is rejected as a criterion candidate")
    conn = christoffel(g)
    null = is_null(N, g)
    normal = is_normal(N, g, conn)
    nondiv = is_nondiverging(N, g, conn)
    strict, projective = geodesic_flags(N, g, conn)
    annih = None
    rep = invariant_report
    if rep is None and order is not None:
        bundle = CurvatureBundle(g, conn, order=order)
        rep = evaluate_invariants(standard_invariant_set(order, g.n), bundle)
    if rep is not None:
        annih = lie_annihilates(N, rep)
    return CriterionReport(N, null, normal, nondiv, strict, projective,
                           annih, rep.order if rep is not None else None)


# --------------------------------------------------------------------------
# Existence search (heuristic: sound, not complete)
# --------------------------------------------------------------------------

def _proportional(N1: VectorField, N2: VectorField) -> bool:
    n = N1.chart.n
    for a in range(n):
        for b in range(a + 1, n):
            if not (N1.comps[a] * N2.comps[b]
                    - N1.comps[b] * N2.comps[a]).is_zero_struct:
                return False
    return True


def search_null_congruence(g: Metric) -> list:
    """Heuristic candidates passing all three flags exactly.

    Searched families: coordinate basis fields, constant integer combinations
    (when the metric components are all constant), and single-coordinate
    gradient fields.  An empty result is NOT a proof of non-existence; a
    returned field is certified (no false positives).  Candidates whose zero
    tests leave the decidable class are dropped.
    """
    p, q = g.signature
    if p == 0 or q == 0:
        return []
    n = g.n
    conn = christoffel(g)
    raw = []
    for a in range(n):
        raw.append(tuple(_ONE if i == a else _ZERO for i in range(n)))
    if all(c.as_fraction() is not None for row in g.matrix for c in row):
        seen = set()
        for vec in itertools.product(range(-2, 3), repeat=n):
            if all(v == 0 for v in vec):
                continue
            # normalize direction: first nonzero positive, content 1
            nz = next(v for v in vec if v != 0)
            sgn = 1 if nz > 0 else -1
            from math import gcd
            content = 0
            for v in vec:
                content = gcd(content, abs(v))
            norm = tuple(sgn * v // content for v in vec)
            if norm in seen:
                continue
            seen.add(norm)
            raw.append(tuple(Expr.from_int(v) for v in norm))
    inv = g.inverse_matrix()
    for c in range(n):
        raw.append(tuple(inv[a][c] for a in range(n)))
    found = []
    for comps in raw:
        N = VectorField(g.chart, comps)
        if N.is_zero_field():
            continue
        try:
            if not (is_null(N, g) and is_normal(N, g, conn)
                    and is_nondiverging(N, g, conn)):
                continue
        except UndecidedZeroError:
            continue
        if any(_proportional(N, M) for M in found):
            continue
        found.append(N)
    return found


# --------------------------------------------------------------------------
# Kundt normal form
# --------------------------------------------------------------------------

def construct_kundt_metric(A: Expr, B, gamma, chart: Chart = None) -> Metric:
    """Build 2du(A du + dv + B_k dx^k) + gamma_ij dx^i dx^j.

    ``B`` is a sequence of n-2 expressions, ``gamma`` a symmetric
    non-degenerate (n-2)x(n-2) matrix of expressions whose determinant must
    not depend on the second chart coordinate v.
    """
    B = tuple(B)
    gamma = tuple(tuple(r) for r in gamma)
    m = len(B)
    if len(gamma) != m or any(len(r) != m for r in gamma):
        raise ValueError("gamma shape does not match the number of B components")
    n = m + 2
    if chart is None:
        names = ["u", "v"] + [f"x{i+1}" for i in range(m)]
        chart = Chart(names)
    if chart.n != n:
        raise ValueError("chart dimension does not match the data")
    v = chart.coords[1]
    det_gamma = _submatrix_det(gamma)
    if not is_zero(differentiate(det_gamma, v)):
        raise KundtConstraintError(
            "d/dv det(gamma) must vanish exactly for the Kundt normal form")
    zero = _ZERO
    rows = []
    rows.append([2 * A, _ONE] + list(B))
    rows.append([_ONE, zero] + [zero] * m)
    for i in range(m):
        rows.append([B[i], zero] + list(gamma[i]))
    return Metric(chart, rows, (n - 1, 1))


def _submatrix_det(matrix):
    from .tensors import _det_expr
    return _det_expr([[c for c in row] for row in matrix])


def kundt_form_check(g: Metric) -> bool:
    """True iff the metric matches the Kundt pattern exactly on its chart
    (first two coordinates playing u and v)."""
    n = g.n
    mat = g.matrix
    if not (mat[0][1] - _ONE).is_zero_struct:
        return False
    if not mat[1][1].is_zero_struct:
        return False
    for j in range(2, n):
        if not mat[1][j].is_zero_struct:
            return False
    gamma = [[mat[i][j] for j in range(2, n)] for i in range(2, n)]
    if n > 2:
        det_gamma = _submatrix_det(gamma)
        if not is_zero(differentiate(det_gamma, g.chart.coords[1])):
            return False
    return True


# --------------------------------------------------------------------------
# Two-step classification
# --------------------------------------------------------------------------

class ClassificationReport:
    """Outcome of the two-step procedure (existence search, then phantoms)."""

    def __init__(self, verdict, candidates, phantoms, order,
                 invariant_report, note):
        self.verdict = verdict
        self.candidates = list(candidates)
        self.phantoms = frozenset(phantoms)
        self.order = order
        self.invariant_report = invariant_report
        self.note = note

    def to_json_dict(self):
        return {
            "verdict": self.verdict,
            "candidates": [[str(c) for c in N.comps] for N in self.candidates],
            "phantoms_up_to_order": sorted(self.phantoms),
            "order": self.order,
            "invariants": (self.invariant_report.to_json_dict()
                           if self.invariant_report else None),
            "note": self.note,
        }


def classify_geometry(g: Metric, order: int = 2) -> ClassificationReport:
    """Search for a null/normal/non-diverging field; on success evaluate the
    invariant set and report phantom functions up to the truncation order."""
    candidates = search_null_congruence(g)
    if not candidates:
        return ClassificationReport(
            SCALAR_CHARACTERIZABLE, [], frozenset(), order, None,
            "no candidate found by the heuristic search (sound but not "
            "complete: this is not a proof of non-existence)")
    bundle = CurvatureBundle(g, order=order)
    report = evaluate_invariants(standard_invariant_set(order, g.n), bundle)
    phantoms = detect_phantom_functions(g, report)
    if phantoms:
        verdict = CANDIDATE_DEGENERATE
        note = (f"candidate fields exist and {len(phantoms)} metric "
                f"function(s) are missing from every invariant up to order {order}")
    else:
        verdict = SCALAR_CHARACTERIZABLE
        note = ("candidate fields exist but every metric function appears in "
                f"some invariant up to order {order}")
    return ClassificationReport(verdict, candidates, phantoms, order,
                                report, note)
