"""Self-describing metric definition files.

Line-oriented text format (``#`` comments, blank lines ignored)::

    coordinates: t r theta phi
    signature: -+++
    constant: M
    function: H(u,x,y)            # optional, repeatable
    g: t t = -(1 - 2*M/r)         # component assignments, symmetric fill
    g: theta theta = r^2
    torsion: gradient psi         # optional test-torsion block

Expressions follow the grammar in :mod:`curvinv.parse`; undeclared symbols are
rejected.  Unassigned components are zero; assigning both ``g: i j`` and
``g: j i`` with different values is an error.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .expr import Expr
from .parse import SymbolTable, parse_expression
from .tensors import Chart, Metric

_ZERO = Expr.from_int(0)

GRADIENT = "gradient"
LEVICIVITA = "levicivita"


class TorsionSpec:
    def __init__(self, ansatz, symbol):
        self.ansatz = ansatz
        self.symbol = symbol

    def to_json_dict(self):
        return {"ansatz": self.ansatz, "symbol": self.symbol}


class MetricFile:
    """Parsed metric file: chart, signature, symbols, metric, optional torsion."""

    def __init__(self, chart, signature, symbols, metric, torsion,
                 source_name=None):
        self.chart = chart
        self.signature = signature
        self.symbols = symbols
        self.metric = metric
        self.torsion = torsion
        self.source_name = source_name

    def parse_field_components(self, text):
        """Comma-separated component list in this file's symbol table."""
        parts = text.split(",")
        if len(parts) != self.chart.n:
            raise ParseError(
                f"expected {self.chart.n} field components, got {len(parts)}")
        return tuple(parse_expression(p, self.symbols) for p in parts)


_FUNC_DECL = re.compile(r"^([A-Za-z_]\w*)\s*\(([^)]*)\)$")


def _require_chart(chart, lineno):
    if chart is None:
        raise ParseError("coordinates must be declared first", line=lineno)


def parse_metric_file(text, source_name=None) -> MetricFile:
    symbols = SymbolTable()
    chart = None
    signature = None
    comps = {}
    comp_lines = {}
    torsion = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line!r}", line=lineno)
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key == "coordinates":
            if chart is not None:
                raise ParseError("duplicate coordinates line", line=lineno)
            names = rest.split()
            if len(names) < 2:
                raise ParseError("need at least two coordinates", line=lineno)
            try:
                chart = Chart(names)
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno)
            symbols.declare_coordinates(names)
        elif key == "signature":
            if signature is not None:
                raise ParseError("duplicate signature line", line=lineno)
            if not rest or set(rest) - {"+", "-"}:
                raise ParseError("signature must be a string of + and -",
                                 line=lineno)
            signature = (rest.count("+"), rest.count("-"))
        elif key == "constant":
            _require_chart(chart, lineno)
            for nm in rest.split():
                try:
                    symbols.declare_constant(nm)
                except ParseError as exc:
                    raise ParseError(str(exc), line=lineno)
        elif key == "function":
            _require_chart(chart, lineno)
            m = _FUNC_DECL.match(rest)
            if not m:
                raise ParseError("function declaration must look like H(u,x)",
                                 line=lineno)
            args = [a.strip() for a in m.group(2).split(",")] if m.group(2).strip() else []
            try:
                symbols.declare_function(m.group(1), args)
            except ParseError as exc:
                raise ParseError(str(exc), line=lineno)
        elif key == "g":
            _require_chart(chart, lineno)
            m = re.match(r"^(\w+)\s+(\w+)\s*=\s*(.+)$", rest)
            if not m:
                raise ParseError("component line must look like 'g: i j = expr'",
                                 line=lineno)
            ni, nj, etext = m.group(1), m.group(2), m.group(3)
            for nm in (ni, nj):
                if nm not in symbols.coords:
                    raise ParseError(f"unknown coordinate {nm!r}", line=lineno)
            i, j = chart.index(ni), chart.index(nj)
            value = parse_expression(etext, symbols, line=lineno)
            if (i, j) in comps:
                raise ParseError(f"component g[{ni}][{nj}] assigned twice",
                                 line=lineno)
            comps[(i, j)] = value
            comp_lines[(i, j)] = lineno
        elif key == "torsion":
            parts = rest.split()
            if len(parts) != 2 or parts[0] not in (GRADIENT, LEVICIVITA):
                raise ParseError(
                    "torsion line must be 'torsion: gradient NAME' or "
                    "'torsion: levicivita NAME'", line=lineno)
            if torsion is not None:
                raise ParseError("duplicate torsion line", line=lineno)
            torsion = TorsionSpec(parts[0], parts[1])
        else:
            raise ParseError(f"unknown key {key!r}", line=lineno)
    if chart is None:
        raise ParseError("missing coordinates line")
    if signature is None:
        raise ParseError("missing signature line")
    if len(signature[0] * "+" + signature[1] * "-") != chart.n:
        raise ParseError("signature length does not match dimension")
    n = chart.n
    rows = [[_ZERO] * n for _ in range(n)]
    for (i, j), val in comps.items():
        rows[i][j] = val
        if i != j:
            if (j, i) in comps and not (comps[(j, i)] - val).is_zero_struct:
                raise ParseError(
                    f"components g[{chart.names[i]}][{chart.names[j]}] and its "
                    "transpose disagree", line=comp_lines[(i, j)])
            rows[j][i] = val
    try:
        metric = Metric(chart, rows, signature)
    except ValueError as exc:
        raise ParseError(str(exc))
    return MetricFile(chart, signature, symbols, metric, torsion, source_name)


def load_metric_file(path) -> MetricFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_metric_file(fh.read(), source_name=str(path))


def serialize_metric(metric: Metric, functions=(), constants=(),
                     torsion: TorsionSpec = None, header=None) -> str:
    """Render a metric as a metric file (round-trips through the parser)."""
    chart = metric.chart
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    lines.append("coordinates: " + " ".join(chart.names))
    p, q = metric.signature
    lines.append("signature: " + "+" * p + "-" * q)
    for name in constants:
        lines.append(f"constant: {name}")
    for name, args in functions:
        lines.append(f"function: {name}({','.join(args)})")
    n = chart.n
    for i in range(n):
        for j in range(i, n):
            c = metric.matrix[i][j]
            if c.is_zero_struct:
                continue
            lines.append(f"g: {chart.names[i]} {chart.names[j]} = {c}")
    if torsion is not None:
        lines.append(f"torsion: {torsion.ansatz} {torsion.symbol}")
    return "\n".join(lines) + "\n"


def serialize_entry(entry) -> str:
    """Metric-file text of a catalog entry."""
    constants = []
    functions = []
    for name, args in entry.functions:
        functions.append((name, args))
    for nm in sorted(_entry_constants(entry)):
        constants.append(nm)
    return serialize_metric(entry.metric, functions=functions,
                            constants=constants,
                            header=f"catalog entry: {entry.name}")


def _entry_constants(entry):
    from .invariants import metric_functions
    declared = {name for name, _args in entry.functions}
    return {nm for nm in metric_functions(entry.metric) if nm not in declared}
