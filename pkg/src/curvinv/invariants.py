"""Curvature-scalar generation and evaluation, phantom detection, torsion probe.

The scalar class is infinite; this module evaluates a curated, documented
recipe list per (derivative order, dimension).  Duplicates arising from
dimensionally dependent identities are tolerated.  Every report carries its
truncation order.
"""

from __future__ import annotations

from .curvature import (
    CurvatureBundle,
    connection_with_torsion,
    torsion_gradient_ansatz,
    torsion_levicivita_ansatz,
)
from .errors import (
    DimensionError,
    SignatureMismatchError,
    UndecidedZeroError,
)
from .expr import Expr, differentiate, free_functions, function_symbol, is_zero
from .tensors import Metric, Tensor, UP, contract_network

_ZERO = Expr.from_int(0)

GRADIENT = "gradient"
LEVICIVITA = "levicivita"


class InvariantRecipe:
    """One fully contracted scalar: named ingredients plus a slot pairing.

    ``operands`` is a list of (ingredient key, index labels); every label
    appears exactly twice across the list, once on an up slot and once on a
    down slot (explicit inverse-metric factors do the raising).
    """

    __slots__ = ("name", "order", "operands", "description")

    def __init__(self, name, order, operands, description):
        self.name = name
        self.order = order
        self.operands = tuple(operands)
        self.description = description

    def __repr__(self):
        return f"InvariantRecipe({self.name}, order={self.order})"


def _ingredient(bundle: CurvatureBundle, key: str):
    if key == "g":
        return bundle.metric.tensor()
    if key == "ginv":
        return bundle.metric.inverse_tensor()
    if key == "eps":
        return bundle.epsilon
    if key == "riem":
        return bundle.riemann_low
    if key == "ricci":
        return bundle.ricci
    if key == "weyl":
        return bundle.weyl_low
    if key == "nabla_riem":
        return bundle.nabla_riemann_low(1)
    if key == "nabla2_riem":
        return bundle.nabla_riemann_low(2)
    if key == "nabla_rs":
        return bundle.nabla_ricci_scalar()
    if key == "nabla2_rs":
        return bundle.nabla2_ricci_scalar()
    raise KeyError(f"unknown ingredient {key!r}")


def standard_invariant_set(order: int, n: int) -> list:
    """Curated scalar recipes up to the given derivative order in dimension n.

    Epsilon recipes are emitted only where the full contraction is
    dimensionally possible; Weyl-squared is dropped for n <= 3 where the Weyl
    tensor vanishes identically.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    recipes = [
        InvariantRecipe("ricci_scalar", 0, [("rs", "")], "R"),
        InvariantRecipe("ricci_sq", 0,
                        [("ricci", "ab"), ("ginv", "ac"), ("ginv", "bd"),
                         ("ricci", "cd")],
                        "R_ab R^ab"),
        InvariantRecipe("ricci_sq_swap", 0,
                        [("ricci", "ab"), ("ginv", "ac"), ("ginv", "bd"),
                         ("ricci", "dc")],
                        "R_ab R^ba (detects the antisymmetric Ricci part)"),
        InvariantRecipe("ricci_cube", 0,
                        [("ricci", "ab"), ("ginv", "bp"), ("ricci", "pc"),
                         ("ginv", "cq"), ("ricci", "qr"), ("ginv", "ra")],
                        "R_a^b R_b^c R_c^a"),
        InvariantRecipe("kretschmann", 0,
                        [("riem", "abcd"), ("ginv", "ae"), ("ginv", "bf"),
                         ("ginv", "cg"), ("ginv", "dh"), ("riem", "efgh")],
                        "R_abcd R^abcd"),
        InvariantRecipe("riemann_cube", 0,
                        [("riem", "abcd"), ("ginv", "ce"), ("ginv", "df"),
                         ("riem", "efgh"), ("ginv", "gi"), ("ginv", "hj"),
                         ("riem", "ijkl"), ("ginv", "ka"), ("ginv", "lb")],
                        "R^ab_cd R^cd_ef R^ef_ab"),
    ]
    if n >= 4:
        recipes.append(InvariantRecipe(
            "weyl_sq", 0,
            [("weyl", "abcd"), ("ginv", "ae"), ("ginv", "bf"),
             ("ginv", "cg"), ("ginv", "dh"), ("weyl", "efgh")],
            "C_abcd C^abcd"))
    if n == 4:
        recipes.append(InvariantRecipe(
            "eps_riemann", 0,
            [("eps", "abcd"), ("ginv", "ap"), ("ginv", "bq"), ("ginv", "cr"),
             ("ginv", "ds"), ("riem", "pqmn"), ("ginv", "me"), ("ginv", "nf"),
             ("riem", "rsef")],
            "eps^abcd R_ab^ef R_cdef (parity-odd)"))
    if order >= 1:
        recipes.append(InvariantRecipe(
            "beltrami_rs", 1,
            [("nabla_rs", "a"), ("ginv", "ab"), ("nabla_rs", "b")],
            "Delta_1(R,R) = g^ab grad_a R grad_b R (first Beltrami)"))
        recipes.append(InvariantRecipe(
            "nabla_riem_sq", 1,
            [("nabla_riem", "abcde"), ("ginv", "ap"), ("ginv", "bq"),
             ("ginv", "cr"), ("ginv", "ds"), ("ginv", "et"),
             ("nabla_riem", "pqrst")],
            "nabla_e R_abcd nabla^e R^abcd"))
    if order >= 2:
        recipes.append(InvariantRecipe(
            "box_rs", 2,
            [("nabla2_rs", "ab"), ("ginv", "ab")],
            "box R"))
        recipes.append(InvariantRecipe(
            "nabla2_riem_riem", 2,
            [("nabla2_riem", "abcdef"), ("ginv", "ef"), ("ginv", "ap"),
             ("ginv", "bq"), ("ginv", "cr"), ("ginv", "ds"), ("riem", "pqrs")],
            "g^ef nabla_e nabla_f R_abcd R^abcd"))
    return recipes


class InvariantReport:
    """Evaluated invariants with exact zero flags and function-symbol content.

    ``zero_flags[name]`` is True/False, or None when the exact zero test left
    the decidable class (reported, never silently false).
    """

    def __init__(self, values, zero_flags, order):
        self.values = dict(values)
        self.zero_flags = dict(zero_flags)
        self.order = order

    @property
    def names(self):
        return list(self.values)

    @property
    def functions(self) -> frozenset:
        out = set()
        for v in self.values.values():
            out |= free_functions(v)
        return frozenset(out)

    def all_zero(self) -> bool:
        return all(f is True for f in self.zero_flags.values())

    def to_json_dict(self):
        return {
            "order": self.order,
            "invariants": [
                {"name": n, "value": str(v),
                 "zero": self.zero_flags[n]}
                for n, v in self.values.items()
            ],
            "functions": sorted(self.functions),
        }


def evaluate_invariants(recipes, bundle: CurvatureBundle) -> InvariantReport:
    """Evaluate each recipe on the bundle; exact zero flags.

    A recipe whose derivative order exceeds the bundle order is a caller
    error and is reported by recipe name.
    """
    values = {}
    flags = {}
    for rec in recipes:
        if rec.order > bundle.order:
            raise ValueError(
                f"recipe {rec.name!r} needs derivative order {rec.order}, "
                f"bundle was built with order {bundle.order}")
        if rec.operands and rec.operands[0][0] == "rs":
            val = bundle.ricci_scalar
        else:
            ops = [( labels, _ingredient(bundle, key))
                   for key, labels in rec.operands]
            val = contract_network([(lab, t) for lab, t in ops])
        values[rec.name] = val
        try:
            flags[rec.name] = is_zero(val)
        except UndecidedZeroError:
            flags[rec.name] = None
    return InvariantReport(values, flags, bundle.order)


def beltrami_first(phi: Expr, g: Metric) -> Expr:
    """Delta_1(phi, phi) = g^ab (grad_a phi)(grad_b phi)."""
    inv = g.inverse_matrix()
    n = g.n
    dphi = [differentiate(phi, c) for c in g.chart.coords]
    total = _ZERO
    for a in range(n):
        for b in range(n):
            if inv[a][b].is_zero_struct:
                continue
            total = total + inv[a][b] * dphi[a] * dphi[b]
    return total


def metric_functions(g: Metric) -> frozenset:
    out = set()
    for row in g.matrix:
        for c in row:
            out |= free_functions(c)
    return frozenset(out)


def detect_phantom_functions(g: Metric, report: InvariantReport) -> frozenset:
    """Function symbols of the metric absent from every computed invariant.

    Exact for the computed set; the truncation order travels with the report.
    """
    return frozenset(metric_functions(g) - report.functions)


# --------------------------------------------------------------------------
# Torsion-probe discrimination
# --------------------------------------------------------------------------

DISTINGUISHED = "DISTINGUISHED"
INCONCLUSIVE = "INCONCLUSIVE"


class ProbeResult:
    """Outcome of the torsion-probe comparison.

    DISTINGUISHED is claimed only on (a) an exact zero/nonzero split of the
    same invariant, or (b) a difference in which non-test function symbols
    enter the torsional invariants (the phantom-revelation signature).  The
    verdict never claims equivalence; the fallback names the truncation order.
    """

    def __init__(self, verdict, order, ansatz, reason, witness,
                 report_a, report_b, test_symbols):
        self.verdict = verdict
        self.order = order
        self.ansatz = ansatz
        self.reason = reason
        self.witness = witness
        self.report_a = report_a
        self.report_b = report_b
        self.test_symbols = tuple(test_symbols)

    @property
    def distinguished(self):
        return self.verdict == DISTINGUISHED

    @property
    def verdict_label(self):
        if self.distinguished:
            return DISTINGUISHED
        return f"{INCONCLUSIVE}-AT-ORDER-{self.order}"

    def to_json_dict(self):
        return {
            "verdict": self.verdict_label,
            "ansatz": self.ansatz,
            "order": self.order,
            "reason": self.reason,
            "witness": self.witness,
            "test_symbols": list(self.test_symbols),
            "first": self.report_a.to_json_dict(),
            "second": self.report_b.to_json_dict(),
        }


def _fresh_name(base, taken):
    name = base
    k = 1
    while name in taken:
        name = f"{base}{k}"
        k += 1
    return name


def torsional_bundle(g: Metric, ansatz: str, test_name: str, order: int):
    """Bundle of (g, test torsion); returns (bundle, test symbol names)."""
    chart = g.chart
    n = g.n
    if ansatz == GRADIENT:
        psi = function_symbol(test_name, chart.coords)
        torsion = torsion_gradient_ansatz(psi, chart)
        names = [test_name]
    elif ansatz == LEVICIVITA:
        if n < 3:
            raise DimensionError("the Levi-Civita ansatz needs n >= 3")
        if n == 3:
            psi = function_symbol(test_name, chart.coords)
            torsion = torsion_levicivita_ansatz(psi, g)
            names = [test_name]
        else:
            names = []
            comps = {}
            import itertools as _it
            rank = n - 3
            for idx in _it.combinations(range(n), rank):
                nm = test_name + "_" + "".join(chart.names[i] for i in idx)
                comps[idx] = function_symbol(nm, chart.coords)
                names.append(nm)
            flat = []
            for idx in _it.product(range(n), repeat=rank):
                s = sorted(range(rank), key=lambda i: idx[i])
                sidx = tuple(idx[i] for i in s)
                if len(set(sidx)) != rank:
                    flat.append(_ZERO)
                    continue
                sign = _perm_parity([sidx.index(v) for v in idx])
                base = comps[sidx]
                flat.append(base if sign > 0 else -base)
            form = Tensor(chart, (UP,) * rank, flat)
            torsion = torsion_levicivita_ansatz(form, g)
    else:
        raise ValueError(f"unknown ansatz {ansatz!r}")
    conn = connection_with_torsion(g, torsion)
    return CurvatureBundle(g, conn, order=order), names


def _perm_parity(perm):
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def discriminate_with_torsion(g1: Metric, g2: Metric, ansatz: str = GRADIENT,
                              order: int = 0) -> ProbeResult:
    """Compare two geometries through curvature scalars of test-torsion bundles."""
    if g1.n != g2.n:
        raise DimensionError(
            f"dimension mismatch: {g1.n} vs {g2.n}")
    if g1.signature != g2.signature:
        raise SignatureMismatchError(
            f"signature mismatch: {g1.signature} vs {g2.signature}")
    taken = set(metric_functions(g1) | metric_functions(g2))
    test_name = _fresh_name("tpsi", taken)
    b1, names1 = torsional_bundle(g1, ansatz, test_name, order)
    b2, names2 = torsional_bundle(g2, ansatz, test_name, order)
    recipes = standard_invariant_set(order, g1.n)
    rep1 = evaluate_invariants(recipes, b1)
    rep2 = evaluate_invariants(recipes, b2)
    test_syms = set(names1) | set(names2)
    for rec in recipes:
        z1 = rep1.zero_flags[rec.name]
        z2 = rep2.zero_flags[rec.name]
        if (z1 is True and z2 is False) or (z1 is False and z2 is True):
            return ProbeResult(DISTINGUISHED, order, ansatz,
                               "exact zero/nonzero split", rec.name,
                               rep1, rep2, sorted(test_syms))
    f1 = rep1.functions - test_syms
    f2 = rep2.functions - test_syms
    if f1 != f2:
        witness = sorted(f1 ^ f2)
        return ProbeResult(DISTINGUISHED, order, ansatz,
                           "metric functions enter the torsional invariants "
                           "of one geometry only", ",".join(witness),
                           rep1, rep2, sorted(test_syms))
    return ProbeResult(INCONCLUSIVE, order, ansatz,
                       "no invariant separates the geometries at this order",
                       None, rep1, rep2, sorted(test_syms))
