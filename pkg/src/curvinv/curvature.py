"""Connections (Christoffel and torsion-augmented), curvature, identities.

Index conventions, fixed once:

* connection coefficients ``gamma[a][b][c]`` mean the 1-form expansion
  Gamma^a_b = gamma^a_{b c} dx^c, so the *middle* index is the differentiated
  slot and the *last* index is the direction;
* covariant derivatives append the new (down) direction slot last;
* ``R^a_{bcd} = d_c gamma^a_{bd} - d_d gamma^a_{bc}
  + gamma^a_{mc} gamma^m_{bd} - gamma^a_{md} gamma^m_{bc}``;
* Ricci is the (0,2) trace ``R_{bd} = R^a_{bad}``.

In the coordinate frame the structure functions vanish and the torsional
connection is ``gamma_{amn} = 1/2[(g_{am,n} + g_{an,m} - g_{mn,a})
- (tau_{amn} + tau_{mna} - tau_{nam})]``; metricity holds by construction and
the first structure equation gives back ``tau^a_{mn} = gamma^a_{nm} -
gamma^a_{mn}``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import ChartMismatchError, DimensionError, SlotError
from .expr import Expr, differentiate, sum_exprs
from .tensors import (
    DOWN,
    UP,
    Metric,
    Tensor,
    contract_network,
    levi_civita,
)

_ZERO = Expr.from_int(0)
_HALF = Expr.from_fraction(Fraction(1, 2))


class Torsion:
    """Torsion components tau^a_{bc}, antisymmetric in the last two slots."""

    __slots__ = ("chart", "tensor")

    def __init__(self, tensor: Tensor):
        if tensor.variance != (UP, DOWN, DOWN):
            raise SlotError("torsion must have variance (u,d,d)")
        n = tensor.chart.n
        for b in range(n):
            for c in range(b, n):
                for a in range(n):
                    if not (tensor[(a, b, c)] + tensor[(a, c, b)]).is_zero_struct:
                        raise ValueError(
                            "torsion is not antisymmetric in its last two slots")
        self.chart = tensor.chart
        self.tensor = tensor

    @staticmethod
    def zero(chart):
        return Torsion(Tensor.zero(chart, (UP, DOWN, DOWN)))

    def is_zero(self):
        return self.tensor.is_zero_tensor()


class Connection:
    """Linear connection in the coordinate frame."""

    __slots__ = ("chart", "gamma", "torsion_free", "metric")

    def __init__(self, gamma: Tensor, torsion_free: bool, metric: Metric = None):
        if gamma.variance != (UP, DOWN, DOWN):
            raise SlotError("connection coefficients must have variance (u,d,d)")
        if torsion_free:
            n = gamma.chart.n
            for a in range(n):
                for b in range(n):
                    for c in range(b + 1, n):
                        if not (gamma[(a, b, c)] - gamma[(a, c, b)]).is_zero_struct:
                            raise ValueError("torsion-free connection is not "
                                             "symmetric in its lower slots")
        self.chart = gamma.chart
        self.gamma = gamma
        self.torsion_free = torsion_free
        self.metric = metric


def _lowered_christoffel(g: Metric) -> list:
    """gamma_{amn} = 1/2 (g_{am,n} + g_{an,m} - g_{mn,a})."""
    n = g.n
    coords = g.chart.coords
    dg = [[[differentiate(g.matrix[a][m], coords[c]) for c in range(n)]
           for m in range(n)] for a in range(n)]
    low = [[[_HALF * (dg[a][m][nn] + dg[a][nn][m] - dg[m][nn][a])
             for nn in range(n)] for m in range(n)] for a in range(n)]
    return low


def _raise_first(low, g: Metric) -> Tensor:
    n = g.n
    inv = g.inverse_matrix()
    comps = []
    for a in range(n):
        for m in range(n):
            for c in range(n):
                comps.append(sum_exprs(
                    inv[a][b] * low[b][m][c] for b in range(n)
                    if not (inv[a][b].is_zero_struct
                            or low[b][m][c].is_zero_struct)))
    return Tensor(g.chart, (UP, DOWN, DOWN), comps)


def christoffel(g: Metric) -> Connection:
    """Levi-Civita connection of the metric."""
    return Connection(_raise_first(_lowered_christoffel(g), g),
                      torsion_free=True, metric=g)


def connection_with_torsion(g: Metric, torsion: Torsion) -> Connection:
    """Metric connection with the prescribed torsion.

    Torsion generally contributes to the symmetric part as well; only a fully
    antisymmetric (lowered) torsion leaves the Christoffel part untouched.
    """
    if torsion.chart != g.chart:
        raise ChartMismatchError("torsion lives on a different chart")
    if torsion.is_zero():
        return christoffel(g)
    n = g.n
    tau_low = torsion.tensor.lower_index(0, g)
    low = _lowered_christoffel(g)
    full = [[[low[a][m][c]
              - _HALF * (tau_low[(a, m, c)] + tau_low[(m, c, a)] - tau_low[(c, a, m)])
              for c in range(n)] for m in range(n)] for a in range(n)]
    conn = Connection(_raise_first(full, g), torsion_free=False, metric=g)
    back = torsion_of_connection(conn)
    if not (back.tensor - torsion.tensor).is_zero_tensor():
        raise ArithmeticError("torsion reconstruction failed; convention bug")
    return conn


def torsion_of_connection(conn: Connection) -> Torsion:
    """tau^a_{mn} = gamma^a_{nm} - gamma^a_{mn} (first structure equation)."""
    n = conn.chart.n
    g = conn.gamma
    comps = []
    for a in range(n):
        for m in range(n):
            for c in range(n):
                comps.append(g[(a, c, m)] - g[(a, m, c)])
    return Torsion(Tensor(conn.chart, (UP, DOWN, DOWN), comps))


def torsion_gradient_ansatz(psi: Expr, chart) -> Torsion:
    """tau^a_{bc} = delta^a_b psi_{,c} - delta^a_c psi_{,b}."""
    n = chart.n
    dpsi = [differentiate(psi, chart.coords[c]) for c in range(n)]
    comps = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = _ZERO
                if a == b:
                    v = v + dpsi[c]
                if a == c:
                    v = v - dpsi[b]
                comps.append(v)
    return Torsion(Tensor(chart, (UP, DOWN, DOWN), comps))


def torsion_levicivita_ansatz(psi, g: Metric) -> Torsion:
    """tau^a_{bc} = 1/(n-3)! eps^a_{bc i_1..i_{n-3}} Psi^{i_1..i_{n-3}}.

    ``psi`` is a scalar Expr for n=3, otherwise a fully antisymmetric
    contravariant Tensor of rank n-3.  The lowered torsion is fully
    antisymmetric, so geodesics keep their functional form.
    """
    n = g.n
    if n < 3:
        raise DimensionError("the Levi-Civita ansatz needs n >= 3")
    eps = levi_civita(g).raise_index(0, g)
    if n == 3:
        if not isinstance(psi, Expr):
            raise TypeError("for n=3 the test object is a scalar expression")
        t = eps.scale(psi)
    else:
        if not isinstance(psi, Tensor) or psi.variance != (UP,) * (n - 3):
            raise SlotError(f"test form must be a rank-{n-3} contravariant tensor")
        anti = psi.antisymmetrize(tuple(range(n - 3)))
        if not (anti - psi).is_zero_tensor():
            raise ValueError("test form must be fully antisymmetric")
        labels = "".join(chr(105 + i) for i in range(n - 3))  # i, j, ...
        t = contract_network([("abc" + labels, eps), (labels, psi)])
        fact = 1
        for k in range(2, n - 2):
            fact *= k
        if fact != 1:
            t = t.scale(Expr.from_fraction(Fraction(1, fact)))
    return Torsion(t)


def covariant_derivative(t: Tensor, conn: Connection) -> Tensor:
    """nabla T with the new direction slot appended last."""
    if t.chart != conn.chart:
        raise ChartMismatchError("tensor and connection live on different charts")
    n = t.chart.n
    rank = t.rank
    coords = t.chart.coords
    out_var = t.variance + (DOWN,)
    acc = [None] * (n ** (rank + 1))

    def flat(idx):
        f = 0
        for i in idx:
            f = f * n + i
        return f

    def push(f, term):
        if acc[f] is None:
            acc[f] = [term]
        else:
            acc[f].append(term)

    for idx, val in t.items():
        if val.is_zero_struct:
            continue
        base = flat(idx) * n
        for m in range(n):
            d = differentiate(val, coords[m])
            if not d.is_zero_struct:
                push(base + m, d)
    # connection terms, scattered from the source components
    gam = conn.gamma
    by_mid = [[] for _ in range(n)]   # b -> [(a, c, coeff)]
    by_up = [[] for _ in range(n)]    # a -> [(b, c, coeff)]
    for (a, b, c), coeff in gam.nonzero_items():
        by_mid[b].append((a, c, coeff))
        by_up[a].append((b, c, coeff))
    for idx, val in t.items():
        if val.is_zero_struct:
            continue
        for k in range(rank):
            zk = idx[k]
            if t.variance[k] == UP:
                # + gamma^a_{z m} T^{..z..}
                for a, m, coeff in by_mid[zk]:
                    push(flat(idx[:k] + (a,) + idx[k + 1:] + (m,)),
                         coeff * val)
            else:
                # - gamma^z_{b m} T_{..z..}
                for b, m, coeff in by_up[zk]:
                    push(flat(idx[:k] + (b,) + idx[k + 1:] + (m,)),
                         -(coeff * val))
    out = [_ZERO if lst is None else sum_exprs(lst) for lst in acc]
    return Tensor(t.chart, out_var, out)


def riemann(conn: Connection) -> Tensor:
    """R^a_{bcd} from the second structure equation."""
    n = conn.chart.n
    coords = conn.chart.coords
    gam = conn.gamma
    dgam = {}
    for (a, b, c), coeff in gam.nonzero_items():
        for e in range(n):
            d = differentiate(coeff, coords[e])
            if not d.is_zero_struct:
                dgam[(a, b, c, e)] = d
    acc = [None] * (n ** 4)

    def flat(a, b, c, d):
        return ((a * n + b) * n + c) * n + d

    def push(f, term):
        if acc[f] is None:
            acc[f] = [term]
        else:
            acc[f].append(term)

    for (a, b, c, e), d in dgam.items():
        # d_e gamma^a_{bc} enters R^a_{b e c} with + and R^a_{b c e} with -
        push(flat(a, b, e, c), d)
        push(flat(a, b, c, e), -d)
    by_mid = [[] for _ in range(n)]
    for (a, b, c), coeff in gam.nonzero_items():
        by_mid[b].append((a, c, coeff))
    for (m, b, d), coeff in gam.nonzero_items():
        # gamma^m_{bd}: pair with gamma^a_{mc}
        for a, c, coeff2 in by_mid[m]:
            term = coeff2 * coeff
            push(flat(a, b, c, d), term)
            push(flat(a, b, d, c), -term)
    comps = [_ZERO if lst is None else sum_exprs(lst) for lst in acc]
    return Tensor(conn.chart, (UP, DOWN, DOWN, DOWN), comps)


class CurvatureBundle:
    """Metric + connection + curvature tensors + iterated nabla Riemann."""

    def __init__(self, metric: Metric, connection: Connection = None, order: int = 0):
        self.metric = metric
        self.connection = connection if connection is not None else christoffel(metric)
        if self.connection.chart != metric.chart:
            raise ChartMismatchError("connection chart differs from metric chart")
        self.order = order
        self._cache = {}

    @property
    def chart(self):
        return self.metric.chart

    @property
    def torsion_free(self):
        return self.connection.torsion_free

    def _get(self, key, builder):
        v = self._cache.get(key)
        if v is None:
            v = builder()
            self._cache[key] = v
        return v

    @property
    def riemann(self) -> Tensor:
        return self._get("riemann", lambda: riemann(self.connection))

    @property
    def riemann_low(self) -> Tensor:
        return self._get("riemann_low",
                         lambda: self.riemann.lower_index(0, self.metric))

    @property
    def ricci(self) -> Tensor:
        return self._get("ricci", lambda: self.riemann.contract(0, 2))

    @property
    def ricci_scalar(self) -> Expr:
        def build():
            return contract_network([("ab", self.metric.inverse_tensor()),
                                     ("ab", self.ricci)])
        return self._get("ricci_scalar", build)

    @property
    def weyl_low(self) -> Tensor:
        """Trace-free part of the lowered Riemann tensor (standard coefficients)."""
        def build():
            n = self.metric.n
            if n < 3:
                raise DimensionError("the Weyl tensor needs n >= 3")
            g = self.metric.matrix
            R = self.riemann_low
            ric = self.ricci
            rs = self.ricci_scalar
            c1 = Expr.from_fraction(Fraction(1, n - 2))
            c2 = Expr.from_fraction(Fraction(1, (n - 1) * (n - 2)))
            comps = []
            for a, b, c, d in itertools.product(range(n), repeat=4):
                v = R[(a, b, c, d)] \
                    - c1 * (g[a][c] * ric[(b, d)] - g[a][d] * ric[(b, c)]
                            + g[b][d] * ric[(a, c)] - g[b][c] * ric[(a, d)]) \
                    + rs * c2 * (g[a][c] * g[b][d] - g[a][d] * g[b][c])
                comps.append(v)
            return Tensor(self.chart, (DOWN,) * 4, comps)
        return self._get("weyl", build)

    @property
    def epsilon(self) -> Tensor:
        return self._get("epsilon", lambda: levi_civita(self.metric))

    def nabla_riemann_low(self, k: int) -> Tensor:
        """k-th iterated covariant derivative of the lowered Riemann tensor."""
        if k == 0:
            return self.riemann_low
        key = ("nabla_riemann", k)

        def build():
            return covariant_derivative(self.nabla_riemann_low(k - 1), self.connection)
        return self._get(key, build)

    def nabla_ricci_scalar(self) -> Tensor:
        def build():
            coords = self.chart.coords
            rs = self.ricci_scalar
            return Tensor(self.chart, (DOWN,),
                          [differentiate(rs, c) for c in coords])
        return self._get("nabla_rs", build)

    def nabla2_ricci_scalar(self) -> Tensor:
        def build():
            return covariant_derivative(self.nabla_ricci_scalar(), self.connection)
        return self._get("nabla2_rs", build)


# --------------------------------------------------------------------------
# Identity checks
# --------------------------------------------------------------------------

class IdentityReport:
    """Exact pass/fail report of the structure-equation identities."""

    def __init__(self, results):
        self.results = dict(results)  # name -> bool

    def all_pass(self):
        return all(self.results.values())

    def __getitem__(self, key):
        return self.results[key]

    def __repr__(self):
        body = ", ".join(f"{k}={'pass' if v else 'FAIL'}"
                         for k, v in self.results.items())
        return f"IdentityReport({body})"


def metricity_check(bundle: CurvatureBundle) -> bool:
    nabla_g = covariant_derivative(bundle.metric.tensor(), bundle.connection)
    return nabla_g.is_zero_tensor()


def first_bianchi_check(bundle: CurvatureBundle) -> bool:
    """Torsion-free: R^a_{[bcd]} = 0.  Torsional: the Jacobi set
    d T + Gamma ^ T = Omega ^ theta, compared component-wise."""
    R = bundle.riemann
    if bundle.torsion_free:
        return R.antisymmetrize((1, 2, 3)).is_zero_tensor()
    chart = bundle.chart
    n = chart.n
    coords = chart.coords
    tau = torsion_of_connection(bundle.connection).tensor
    gam = bundle.connection.gamma
    comps = []
    for a in range(n):
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    terms = [differentiate(tau[(a, q, r)], coords[p])]
                    for b in range(n):
                        gv = gam[(a, b, p)]
                        tv = tau[(b, q, r)]
                        if gv.is_zero_struct or tv.is_zero_struct:
                            continue
                        terms.append(gv * tv)
                    comps.append(sum_exprs(terms))
    lhs = Tensor(chart, (UP, DOWN, DOWN, DOWN), comps).antisymmetrize((1, 2, 3))
    rhs_comps = [R[(a, r, p, q)]
                 for a, p, q, r in itertools.product(range(n), repeat=4)]
    rhs = Tensor(chart, (UP, DOWN, DOWN, DOWN), rhs_comps).antisymmetrize((1, 2, 3))
    return (lhs - rhs).is_zero_tensor()


def second_bianchi_check(bundle: CurvatureBundle) -> bool:
    """Form version d Omega + Gamma ^ Omega - Omega ^ Gamma = 0, valid for any
    metric connection; for torsion-free connections this is Alt nabla R = 0."""
    chart = bundle.chart
    n = chart.n
    coords = chart.coords
    R = bundle.riemann
    gam = bundle.connection.gamma
    comps = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    for e in range(n):
                        terms = [differentiate(R[(a, b, c, d)], coords[e])]
                        for z in range(n):
                            g1 = gam[(z, b, e)]
                            if not g1.is_zero_struct:
                                r1 = R[(a, z, c, d)]
                                if not r1.is_zero_struct:
                                    terms.append(-(g1 * r1))
                            g2 = gam[(a, z, e)]
                            if not g2.is_zero_struct:
                                r2 = R[(z, b, c, d)]
                                if not r2.is_zero_struct:
                                    terms.append(g2 * r2)
                        comps.append(sum_exprs(terms))
    t = Tensor(chart, (UP, DOWN, DOWN, DOWN, DOWN), comps)
    return t.antisymmetrize((2, 3, 4)).is_zero_tensor()


def second_bianchi_nabla_check(bundle: CurvatureBundle) -> bool:
    """nabla_{[e} R^a_{|b|cd]} = 0 (torsion-free form)."""
    nr = covariant_derivative(bundle.riemann, bundle.connection)
    return nr.antisymmetrize((2, 3, 4)).is_zero_tensor()


def check_identities(bundle: CurvatureBundle) -> IdentityReport:
    """Metricity, first Bianchi (or its torsional Jacobi generalization) and
    second Bianchi; torsion-free bundles use the nabla form of the latter,
    torsional bundles the structure-equation form."""
    results = {
        "metricity": metricity_check(bundle),
        "bianchi_first": first_bianchi_check(bundle),
    }
    if bundle.torsion_free:
        results["bianchi_second"] = second_bianchi_nabla_check(bundle)
    else:
        results["bianchi_second"] = second_bianchi_check(bundle)
    return IdentityReport(results)
