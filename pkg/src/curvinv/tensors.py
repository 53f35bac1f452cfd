"""Charts, metrics, and dense component tensors with index variance.

Everything is immutable and exact.  Components are stored densely (the paper's
examples are 3-5 dimensional); structural zeros are skipped during loops, which
is exact because the kernel's canonical form makes zero structural.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import (
    ChartMismatchError,
    DegenerateMetricError,
    SlotError,
)
from .expr import Expr, coordinates, is_zero, sqrt, sum_exprs

UP = "u"
DOWN = "d"

_ZERO = Expr.from_int(0)
_ONE = Expr.from_int(1)


class Chart:
    """Ordered coordinate names; n >= 2, names unique."""

    __slots__ = ("names", "coords", "n")

    def __init__(self, names):
        if isinstance(names, str):
            names = names.split()
        names = tuple(names)
        if len(names) < 2:
            raise ValueError("a chart needs at least two coordinates")
        if len(set(names)) != len(names):
            raise ValueError("coordinate names must be unique")
        self.names = names
        self.coords = coordinates(names)
        self.n = len(names)

    def __eq__(self, other):
        return isinstance(other, Chart) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Chart({' '.join(self.names)})"

    def index(self, name):
        return self.names.index(name)


def _check_chart(a, b):
    if a != b:
        raise ChartMismatchError(f"charts differ: {a!r} vs {b!r}")


class Tensor:
    """Dense tensor of Expr components with an up/down variance signature."""

    __slots__ = ("chart", "variance", "comps", "_nonzero")

    def __init__(self, chart, variance, comps):
        self.chart = chart
        self.variance = tuple(variance)
        for v in self.variance:
            if v not in (UP, DOWN):
                raise SlotError(f"bad variance tag {v!r}")
        comps = tuple(comps)
        if len(comps) != chart.n ** len(self.variance):
            raise ValueError("component count does not match rank")
        self.comps = comps
        self._nonzero = None

    # -- construction -------------------------------------------------------

    @staticmethod
    def zero(chart, variance):
        return Tensor(chart, variance, (_ZERO,) * (chart.n ** len(variance)))

    @staticmethod
    def from_function(chart, variance, fn):
        n = chart.n
        rank = len(variance)
        comps = [fn(idx) for idx in itertools.product(range(n), repeat=rank)]
        return Tensor(chart, variance, comps)

    # -- indexing -----------------------------------------------------------

    @property
    def rank(self):
        return len(self.variance)

    def _flat(self, idx):
        n = self.chart.n
        f = 0
        for i in idx:
            f = f * n + i
        return f

    def __getitem__(self, idx):
        if isinstance(idx, int):
            idx = (idx,)
        return self.comps[self._flat(idx)]

    def items(self):
        n = self.chart.n
        return zip(itertools.product(range(n), repeat=self.rank), self.comps)

    def nonzero_items(self):
        if self._nonzero is None:
            self._nonzero = [(idx, c) for idx, c in self.items()
                             if not c.is_zero_struct]
        return self._nonzero

    def is_zero_tensor(self):
        """Exact: canonical components make zero structural."""
        return not self.nonzero_items()

    def map(self, fn):
        return Tensor(self.chart, self.variance, tuple(fn(c) for c in self.comps))

    # -- algebra --------------------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        return Tensor(self.chart, self.variance,
                      tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        self._compat(other)
        return Tensor(self.chart, self.variance,
                      tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return self.map(lambda c: -c)

    def scale(self, s):
        return self.map(lambda c: c * s)

    def _compat(self, other):
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        _check_chart(self.chart, other.chart)
        if self.variance != other.variance:
            raise SlotError("variance signatures differ")

    def tensor_product(self, other):
        _check_chart(self.chart, other.chart)
        n = self.chart.n
        sparse = {}
        for i1, c1 in self.nonzero_items():
            for i2, c2 in other.nonzero_items():
                sparse[i1 + i2] = c1 * c2
        variance = self.variance + other.variance
        rank = len(variance)
        comps = [_ZERO] * (n ** rank)
        t = Tensor(self.chart, variance, comps)
        out = list(comps)
        for idx, val in sparse.items():
            out[t._flat(idx)] = val
        return Tensor(self.chart, variance, out)

    def contract(self, i, j):
        rank = self.rank
        if not (0 <= i < rank and 0 <= j < rank) or i == j:
            raise SlotError(f"bad contraction slots ({i}, {j})")
        if {self.variance[i], self.variance[j]} != {UP, DOWN}:
            raise SlotError("contraction requires one up and one down slot")
        n = self.chart.n
        lo, hi = (i, j) if i < j else (j, i)
        new_var = tuple(v for k, v in enumerate(self.variance) if k not in (i, j))
        acc = {}
        for idx, val in self.nonzero_items():
            if idx[i] != idx[j]:
                continue
            key = idx[:lo] + idx[lo + 1:hi] + idx[hi + 1:]
            acc.setdefault(key, []).append(val)
        out = Tensor.zero(self.chart, new_var)
        comps = list(out.comps)
        for idx, vals in acc.items():
            comps[out._flat(idx)] = sum_exprs(vals)
        return Tensor(self.chart, new_var, comps)

    def raise_index(self, slot, metric):
        return self._move_index(slot, metric, UP)

    def lower_index(self, slot, metric):
        return self._move_index(slot, metric, DOWN)

    def _move_index(self, slot, metric, target):
        if not 0 <= slot < self.rank:
            raise SlotError(f"slot {slot} out of range")
        if self.variance[slot] == target:
            raise SlotError("slot already has the requested variance")
        _check_chart(self.chart, metric.chart)
        g = metric.inverse_matrix() if target == UP else metric.matrix
        n = self.chart.n
        new_var = self.variance[:slot] + (target,) + self.variance[slot + 1:]
        out = Tensor.zero(self.chart, new_var)
        acc = [None] * len(out.comps)
        for idx, val in self.nonzero_items():
            m = idx[slot]
            for a in range(n):
                coeff = g[a][m]
                if coeff.is_zero_struct:
                    continue
                nidx = idx[:slot] + (a,) + idx[slot + 1:]
                f = out._flat(nidx)
                if acc[f] is None:
                    acc[f] = []
                acc[f].append(coeff * val)
        comps = [_ZERO if lst is None else sum_exprs(lst) for lst in acc]
        return Tensor(self.chart, new_var, comps)

    def _permuted_sum(self, slots, signed):
        slots = tuple(slots)
        if len(set(slots)) != len(slots):
            raise SlotError("repeated slot")
        vs = {self.variance[s] for s in slots}
        if len(vs) != 1:
            raise SlotError("(anti)symmetrization requires same-variance slots")
        n = self.chart.n
        k = len(slots)
        norm = Fraction(1)
        for i in range(2, k + 1):
            norm /= i
        acc = {}
        for perm in itertools.permutations(range(k)):
            sign = 1
            if signed:
                sign = _perm_sign(perm)
            for idx, val in self.nonzero_items():
                nidx = list(idx)
                for a, b in zip(slots, perm):
                    nidx[a] = idx[slots[b]]
                acc.setdefault(tuple(nidx), []).append(
                    val if sign > 0 else -val)
        out = Tensor.zero(self.chart, self.variance)
        comps = [_ZERO] * len(out.comps)
        for idx, vals in acc.items():
            comps[out._flat(idx)] = sum_exprs(vals) * norm
        return Tensor(self.chart, self.variance, comps)

    def symmetrize(self, slots):
        """1/k!-normalized symmetrization over the given slots."""
        return self._permuted_sum(slots, signed=False)

    def antisymmetrize(self, slots):
        """1/k!-normalized antisymmetrization (bracket convention)."""
        return self._permuted_sum(slots, signed=True)

    def __repr__(self):
        return f"Tensor({''.join(self.variance)}, n={self.chart.n})"


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class Metric:
    """Symmetric non-degenerate metric on a chart with declared signature.

    ``signature`` is (p, q): the number of + and - eigenvalues.  The sign of
    det g is taken from the declaration, not decided symbolically.
    """

    __slots__ = ("chart", "matrix", "signature", "_inv", "_det", "_tensor",
                 "_inv_tensor")

    def __init__(self, chart, matrix, signature):
        n = chart.n
        matrix = tuple(tuple(row) for row in matrix)
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise ValueError("metric matrix shape does not match chart")
        p, q = signature
        if p + q != n or p < 0 or q < 0:
            raise ValueError("signature does not match dimension")
        for i in range(n):
            for j in range(i + 1, n):
                if not (matrix[i][j] - matrix[j][i]).is_zero_struct:
                    raise ValueError(
                        f"metric is not symmetric at ({chart.names[i]},{chart.names[j]})")
        self.chart = chart
        self.matrix = matrix
        self.signature = (p, q)
        self._inv = None
        self._det = None
        self._tensor = None
        self._inv_tensor = None
        if is_zero(self.det()):
            raise DegenerateMetricError("metric determinant is exactly zero")

    @property
    def n(self):
        return self.chart.n

    def det(self):
        if self._det is None:
            self._det = _det_expr(self.matrix)
        return self._det

    def inverse_matrix(self):
        """Exact adjugate/determinant inverse, verified against the identity."""
        if self._inv is None:
            n = self.n
            d = self.det()
            adj = _adjugate(self.matrix)
            inv = tuple(tuple(adj[i][j] / d for j in range(n)) for i in range(n))
            for i in range(n):
                for j in range(n):
                    s = sum_exprs(inv[i][k] * self.matrix[k][j]
                                  for k in range(n))
                    target = _ONE if i == j else _ZERO
                    if not (s - target).is_zero_struct:
                        raise ArithmeticError(
                            "inverse verification failed; kernel bug")
            self._inv = inv
        return self._inv

    def tensor(self):
        if self._tensor is None:
            flat = [self.matrix[i][j] for i in range(self.n) for j in range(self.n)]
            self._tensor = Tensor(self.chart, (DOWN, DOWN), flat)
        return self._tensor

    def inverse_tensor(self):
        if self._inv_tensor is None:
            inv = self.inverse_matrix()
            flat = [inv[i][j] for i in range(self.n) for j in range(self.n)]
            self._inv_tensor = Tensor(self.chart, (UP, UP), flat)
        return self._inv_tensor

    def abs_det(self):
        """|det g| using the declared signature for the sign."""
        _p, q = self.signature
        return self.det() if q % 2 == 0 else -self.det()

    def scale(self, c):
        return Metric(self.chart,
                      tuple(tuple(c * x for x in row) for row in self.matrix),
                      self.signature)

    def __repr__(self):
        return f"Metric(n={self.n}, sig={self.signature})"


def _det_expr(matrix):
    n = len(matrix)
    # cofactor expansion with memoization on (row, column subset)
    cols = tuple(range(n))
    memo = {}

    def minor(r, cs):
        if len(cs) == 1:
            return matrix[r][cs[0]]
        key = (r, cs)
        v = memo.get(key)
        if v is not None:
            return v
        total = _ZERO
        for k, c in enumerate(cs):
            a = matrix[r][c]
            if a.is_zero_struct:
                continue
            sub = minor(r + 1, cs[:k] + cs[k + 1:])
            term = a * sub
            total = total + term if k % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(0, cols)


def _adjugate(matrix):
    n = len(matrix)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != i]
            cols = [c for c in range(n) if c != j]
            sub = [[matrix[r][c] for c in cols] for r in rows]
            cof = _det_expr(sub) if n > 1 else _ONE
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof  # transpose of cofactor matrix
    return tuple(tuple(row) for row in adj)


def levi_civita(metric) -> Tensor:
    """Fully covariant Levi-Civita tensor: sqrt(|det g|) * perm sign."""
    n = metric.n
    scale = sqrt(metric.abs_det())
    out = Tensor.zero(metric.chart, (DOWN,) * n)
    comps = list(out.comps)
    for perm in itertools.permutations(range(n)):
        s = _perm_sign(perm)
        comps[out._flat(perm)] = scale if s > 0 else -scale
    return Tensor(metric.chart, (DOWN,) * n, comps)


def kronecker(chart) -> Tensor:
    n = chart.n
    out = Tensor.zero(chart, (UP, DOWN))
    comps = list(out.comps)
    for i in range(n):
        comps[out._flat((i, i))] = _ONE
    return Tensor(chart, (UP, DOWN), comps)


def contract_network(operands):
    """Contract a list of (labels, Tensor) pairs.

    Each label must occur exactly twice (contracted, one up and one down slot)
    or once (free).  Returns an Expr for a full contraction, otherwise a
    Tensor whose slots are the free labels in order of first appearance.
    Operands are folded left to right with sparse intermediates.
    """
    if not operands:
        raise ValueError("empty contraction")
    chart = operands[0][1].chart
    counts = {}
    varmap = {}
    for labels, t in operands:
        _check_chart(chart, t.chart)
        if len(labels) != t.rank:
            raise SlotError(f"label string {labels!r} does not match rank {t.rank}")
        for pos, l in enumerate(labels):
            counts[l] = counts.get(l, 0) + 1
            varmap.setdefault(l, []).append(t.variance[pos])
    for l, c in counts.items():
        if c > 2:
            raise SlotError(f"label {l!r} appears {c} times")
        if c == 2 and set(varmap[l]) != {UP, DOWN}:
            raise SlotError(f"label {l!r} pairs two {varmap[l][0]} slots")

    open_labels = []
    partial = {(): _ONE}
    for labels, t in operands:
        labels = list(labels)
        # resolve self-traces inside this operand
        unique = []
        for l in labels:
            if l not in unique:
                unique.append(l)
        traced = [l for l in unique if labels.count(l) == 2]
        kept = [l for l in unique if l not in traced]
        acc2 = {}
        for idx, val in t.nonzero_items():
            ok = True
            seen = {}
            for pos, l in enumerate(labels):
                if l in seen and idx[pos] != seen[l]:
                    ok = False
                    break
                seen[l] = idx[pos]
            if not ok:
                continue
            acc2.setdefault(tuple(seen[l] for l in kept), []).append(val)
        sT2 = {key: sum_exprs(vals) for key, vals in acc2.items()}
        sT2 = {key: v for key, v in sT2.items() if not v.is_zero_struct}
        shared = [l for l in kept if l in open_labels]
        new = [l for l in kept if l not in open_labels]
        sh_open = [open_labels.index(l) for l in shared]
        sh_t = [kept.index(l) for l in shared]
        keep_open = [i for i, l in enumerate(open_labels) if l not in shared]
        new_t = [kept.index(l) for l in new]
        nxt = {}
        for okey, oval in partial.items():
            for tkey, tval in sT2.items():
                match = True
                for po, pt in zip(sh_open, sh_t):
                    if okey[po] != tkey[pt]:
                        match = False
                        break
                if not match:
                    continue
                nkey = tuple(okey[i] for i in keep_open) + \
                    tuple(tkey[i] for i in new_t)
                nxt.setdefault(nkey, []).append(oval * tval)
        partial = {key: sum_exprs(vals) for key, vals in nxt.items()}
        partial = {key: v for key, v in partial.items()
                   if not v.is_zero_struct}
        open_labels = [l for l in open_labels if l not in shared] + new
    free = list(open_labels)
    if not free:
        return partial.get((), _ZERO)
    variance = [varmap[l][0] for l in free]
    out = Tensor.zero(chart, tuple(variance))
    comps = [_ZERO] * len(out.comps)
    for idx, val in partial.items():
        comps[out._flat(idx)] = val
    return Tensor(chart, tuple(variance), comps)
