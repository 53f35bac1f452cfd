"""Built-in reference geometries with documented properties.

Each entry carries a primary chart, expected-property flags (re-verified by
the test suite), and one alternate chart with the coordinate mapping used by
the coordinate-scalar invariance tests.  Alternate mappings only need to cover
coordinates that actually appear in invariant values.
"""

from __future__ import annotations

from fractions import Fraction

from .criterion import construct_kundt_metric
from .expr import Expr, constant, cos, function_symbol, log, sin
from .tensors import Chart, Metric

_ZERO = Expr.from_int(0)
_ONE = Expr.from_int(1)


class AlternateChart:
    """Second presentation of the same geometry.

    ``mapping`` sends primary coordinate names to expressions over the
    alternate chart; it must cover every coordinate occurring in an invariant
    value of the primary presentation.
    """

    def __init__(self, metric: Metric, mapping: dict):
        self.metric = metric
        self.mapping = dict(mapping)


class CatalogEntry:
    def __init__(self, name, params, metric, properties, alternate=None,
                 functions=(), note=""):
        self.name = name
        self.params = dict(params)
        self.metric = metric
        self.properties = dict(properties)
        self.alternate = alternate
        self.functions = tuple(functions)  # (name, arg names) pairs
        self.note = note

    @property
    def chart(self):
        return self.metric.chart


def _diag(chart, entries, signature):
    n = chart.n
    rows = [[entries[i] if i == j else _ZERO for j in range(n)]
            for i in range(n)]
    return Metric(chart, rows, signature)


def _minkowski(n=4):
    n = int(n)
    if n < 2:
        raise ValueError("minkowski needs n >= 2")
    names = ["t"] + [f"x{i}" for i in range(1, n)] if n != 4 else ["t", "x", "y", "z"]
    chart = Chart(names)
    g = _diag(chart, [-_ONE] + [_ONE] * (n - 1), (n - 1, 1))
    # double-null alternate: t = (u+v)/2, x = (v-u)/2
    anames = ["u", "v"] + names[2:]
    achart = Chart(anames)
    half = Expr.from_fraction(Fraction(1, 2))
    rows = [[_ZERO] * n for _ in range(n)]
    rows[0][1] = rows[1][0] = -half
    for i in range(2, n):
        rows[i][i] = _ONE
    ag = Metric(achart, rows, (n - 1, 1))
    au, av = achart.coords[0], achart.coords[1]
    mapping = {names[0]: (au + av) / 2, names[1]: (av - au) / 2}
    for nm, c in zip(names[2:], achart.coords[2:]):
        mapping[nm] = c
    return CatalogEntry(
        "minkowski", {"n": n}, g,
        {"flat": True, "vacuum": True, "vsi": True, "kundt": False},
        AlternateChart(ag, mapping))


def _euclidean(n=3):
    n = int(n)
    if n < 2:
        raise ValueError("euclidean needs n >= 2")
    names = ["x", "y", "z", "w", "s"][:n] if n <= 5 else [f"x{i}" for i in range(n)]
    chart = Chart(names)
    g = _diag(chart, [_ONE] * n, (n, 0))
    # polar alternate in the first two coordinates
    anames = ["rho", "phi"] + names[2:]
    achart = Chart(anames)
    rho = achart.coords[0]
    ag = _diag(achart, [_ONE, rho ** 2] + [_ONE] * (n - 2), (n, 0))
    mapping = {names[0]: rho * cos(achart.coords[1]),
               names[1]: rho * sin(achart.coords[1])}
    for nm, c in zip(names[2:], achart.coords[2:]):
        mapping[nm] = c
    return CatalogEntry(
        "euclidean", {"n": n}, g,
        {"flat": True, "vacuum": True, "vsi": False, "kundt": False},
        AlternateChart(ag, mapping))


def _sphere2(radius="a"):
    chart = Chart("theta phi")
    a = constant(radius)
    th = chart.coords[0]
    g = _diag(chart, [a ** 2, a ** 2 * sin(th) ** 2], (2, 0))
    # w = cos(theta) chart; invariants of the round sphere are constant, so
    # the mapping only needs phi.
    achart = Chart("w phi")
    w = achart.coords[0]
    ag = _diag(achart, [a ** 2 / (1 - w ** 2), a ** 2 * (1 - w ** 2)], (2, 0))
    return CatalogEntry(
        "sphere2", {"radius": radius}, g,
        {"flat": False, "vacuum": False, "vsi": False, "kundt": False},
        AlternateChart(ag, {"phi": achart.coords[1]}))


def _schwarzschild(mass="M"):
    chart = Chart("t r theta phi")
    M = constant(mass)
    _t, r, th, _ph = chart.coords
    f = 1 - 2 * M / r
    g = _diag(chart, [-f, 1 / f, r ** 2, r ** 2 * sin(th) ** 2], (3, 1))
    # ingoing Eddington-Finkelstein: t = v - r - 2M log(r/(2M) - 1)
    achart = Chart("v r theta phi")
    av, ar, ath, _aph = achart.coords
    af = 1 - 2 * M / ar
    rows = [[_ZERO] * 4 for _ in range(4)]
    rows[0][0] = -af
    rows[0][1] = rows[1][0] = _ONE
    rows[2][2] = ar ** 2
    rows[3][3] = ar ** 2 * sin(ath) ** 2
    ag = Metric(achart, rows, (3, 1))
    mapping = {
        "t": av - ar - 2 * M * log(ar / (2 * M) - 1),
        "r": ar, "theta": ath, "phi": achart.coords[3],
    }
    return CatalogEntry(
        "schwarzschild", {"mass": mass}, g,
        {"flat": False, "vacuum": True, "vsi": False, "kundt": False},
        AlternateChart(ag, mapping))


def _pp_wave_vacuum(profile="f"):
    chart = Chart("u v x y")
    u, _v, x, y = chart.coords
    f = function_symbol(profile, (u,))
    H = (x ** 2 - y ** 2) * f
    g = _pp_metric(chart, H)
    # transverse rotation by the rational angle (cos, sin) = (3/5, 4/5)
    achart = Chart("u v xr yr")
    au, _av, xr, yr = achart.coords
    xm = (3 * xr + 4 * yr) / 5
    ym = (-4 * xr + 3 * yr) / 5
    Hr = (xm ** 2 - ym ** 2) * function_symbol(profile, (au,))
    ag = _pp_metric(achart, Hr)
    mapping = {"u": au, "v": achart.coords[1], "x": xm, "y": ym}
    return CatalogEntry(
        "pp_wave_vacuum", {"profile": profile}, g,
        {"flat": False, "vacuum": True, "vsi": True, "kundt": True},
        AlternateChart(ag, mapping),
        functions=((profile, ("u",)),),
        note="H = (x^2 - y^2) f(u), the simplest non-flat harmonic profile")


def _pp_wave_general(profile="H"):
    chart = Chart("u v x y")
    u, _v, x, y = chart.coords
    H = function_symbol(profile, (u, x, y))
    g = _pp_metric(chart, H)
    # null shift v = w + u keeps the opaque profile's arguments intact
    achart = Chart("u w x y")
    au, _aw, ax, ay = achart.coords
    Ha = function_symbol(profile, (au, ax, ay))
    rows = [[Ha + 2, _ONE, _ZERO, _ZERO],
            [_ONE, _ZERO, _ZERO, _ZERO],
            [_ZERO, _ZERO, _ONE, _ZERO],
            [_ZERO, _ZERO, _ZERO, _ONE]]
    ag = Metric(achart, rows, (3, 1))
    mapping = {"u": au, "v": achart.coords[1] + au, "x": ax, "y": ay}
    return CatalogEntry(
        "pp_wave_general", {"profile": profile}, g,
        {"flat": False, "vacuum": False, "vsi": True, "kundt": True},
        AlternateChart(ag, mapping),
        functions=((profile, ("u", "x", "y")),))


def _pp_metric(chart, H):
    rows = [[H, _ONE, _ZERO, _ZERO],
            [_ONE, _ZERO, _ZERO, _ZERO],
            [_ZERO, _ZERO, _ONE, _ZERO],
            [_ZERO, _ZERO, _ZERO, _ONE]]
    return Metric(chart, rows, (3, 1))


def _kundt_generic(n=4):
    n = int(n)
    if n != 4:
        raise ValueError("kundt_generic is provided for n = 4")
    chart = Chart("u v x1 x2")
    u, _v, x1, x2 = chart.coords
    A = function_symbol("A", chart.coords)
    B1 = function_symbol("B1", chart.coords)
    B2 = function_symbol("B2", chart.coords)
    g11 = function_symbol("c11", (u, x1, x2))
    g12 = function_symbol("c12", (u, x1, x2))
    g22 = function_symbol("c22", (u, x1, x2))
    g = construct_kundt_metric(A, (B1, B2), ((g11, g12), (g12, g22)), chart)
    # renamed presentation (trivial diffeomorphism; opaque functions of all
    # coordinates admit no non-rename alternate within the expression class)
    achart = Chart("ut vt y1 y2")
    au, av, ay1, ay2 = achart.coords
    Aa = function_symbol("A", achart.coords)
    B1a = function_symbol("B1", achart.coords)
    B2a = function_symbol("B2", achart.coords)
    g11a = function_symbol("c11", (au, ay1, ay2))
    g12a = function_symbol("c12", (au, ay1, ay2))
    g22a = function_symbol("c22", (au, ay1, ay2))
    ag = construct_kundt_metric(Aa, (B1a, B2a), ((g11a, g12a), (g12a, g22a)),
                                achart)
    mapping = {"u": au, "v": av, "x1": ay1, "x2": ay2}
    return CatalogEntry(
        "kundt_generic", {"n": n}, g,
        {"flat": False, "vacuum": False, "vsi": False, "kundt": True},
        AlternateChart(ag, mapping),
        functions=(("A", ("u", "v", "x1", "x2")),
                   ("B1", ("u", "v", "x1", "x2")),
                   ("B2", ("u", "v", "x1", "x2")),
                   ("c11", ("u", "x1", "x2")),
                   ("c12", ("u", "x1", "x2")),
                   ("c22", ("u", "x1", "x2"))),
        note="free A, B_k of all coordinates; gamma v-independent so the "
             "determinant constraint holds structurally")


def _walker3(profile="w"):
    chart = Chart("u v x")
    u, _v, x = chart.coords
    w = function_symbol(profile, (u, x))
    rows = [[w, _ONE, _ZERO], [_ONE, _ZERO, _ZERO], [_ZERO, _ZERO, _ONE]]
    g = Metric(chart, rows, (2, 1))
    # null shift v = s + u (profile arguments do not involve v)
    achart = Chart("u s x")
    au, _as, ax = achart.coords
    wa = function_symbol(profile, (au, ax))
    arows = [[wa + 2, _ONE, _ZERO], [_ONE, _ZERO, _ZERO], [_ZERO, _ZERO, _ONE]]
    ag = Metric(achart, arows, (2, 1))
    mapping = {"u": au, "v": achart.coords[1] + au, "x": ax}
    return CatalogEntry(
        "walker3", {"profile": profile}, g,
        {"flat": False, "vacuum": False, "vsi": True, "kundt": True},
        AlternateChart(ag, mapping),
        functions=((profile, ("u", "x")),),
        note="representative 3D Walker-type degenerate-Kundt instance")


_BUILDERS = {
    "minkowski": _minkowski,
    "euclidean": _euclidean,
    "sphere2": _sphere2,
    "schwarzschild": _schwarzschild,
    "pp_wave_vacuum": _pp_wave_vacuum,
    "pp_wave_general": _pp_wave_general,
    "kundt_generic": _kundt_generic,
    "walker3": _walker3,
}


def names():
    return sorted(_BUILDERS)


def get(name, **params) -> CatalogEntry:
    """Build a catalog entry; unknown names or bad parameters raise ValueError."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown catalog entry {name!r}; available: {', '.join(names())}")
    try:
        return builder(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name!r}: {exc}")
