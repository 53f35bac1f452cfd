"""Expression grammar and metric files."""

import pytest

from curvinv import expr as E
from curvinv.errors import ParseError
from curvinv.metricfile import parse_metric_file, serialize_metric
from curvinv.parse import SymbolTable, parse_expression


@pytest.fixture()
def table():
    tab = SymbolTable()
    tab.declare_coordinates(["u", "v", "x", "y"])
    tab.declare_function("H", ["u", "x", "y"])
    tab.declare_constant("M")
    return tab


def test_literals_and_precedence(table):
    e = parse_expression("3/2*x + 2^3 - x*y/2", table)
    x = table.coords["x"]
    y = table.coords["y"]
    want = E.rational(3, 2) * x + 8 - x * y / 2
    assert (e - want).is_zero_struct


def test_power_binds_tighter_than_division(table):
    e = parse_expression("1/x^2", table)
    x = table.coords["x"]
    assert (e - 1 / x ** 2).is_zero_struct


def test_unary_minus_and_parens(table):
    e = parse_expression("-(x - y)^2", table)
    x, y = table.coords["x"], table.coords["y"]
    assert (e + (x - y) ** 2).is_zero_struct


def test_negative_exponent(table):
    x = table.coords["x"]
    assert (parse_expression("x^-2", table) - x ** -2).is_zero_struct
    assert (parse_expression("x^(-2)", table) - x ** -2).is_zero_struct


def test_builtins_and_functions(table):
    e = parse_expression("sin(x)^2 + cos(x)^2 + H(u,x,y) - M", table)
    assert E.free_functions(e) == {"H", "M"}


def test_diff_syntax(table):
    e = parse_expression("diff(H(u,x,y), x, u)", table)
    H = table.funcs["H"][0]
    want = E.differentiate(E.differentiate(H, "x"), "u")
    assert (e - want).is_zero_struct


def test_undeclared_symbol_rejected(table):
    with pytest.raises(ParseError, match="undeclared symbol 'zz'"):
        parse_expression("x + zz", table)


def test_wrong_function_arguments_rejected(table):
    with pytest.raises(ParseError):
        parse_expression("H(x,u,y)", table)


def test_error_carries_position(table):
    with pytest.raises(ParseError) as err:
        parse_expression("x + + y", table, line=7)
    assert err.value.line == 7
    assert err.value.column is not None


# -- metric files ---------------------------------------------------------------

PP_FILE = """\
# vacuum pp-wave
coordinates: u v x y
signature: -+++
function: f(u)
g: u u = (x^2 - y^2)*f(u)
g: u v = 1
g: x x = 1
g: y y = 1
"""


def test_parse_metric_file():
    mf = parse_metric_file(PP_FILE)
    assert mf.chart.names == ("u", "v", "x", "y")
    assert mf.signature == (3, 1)
    assert mf.metric.matrix[0][1] == E.integer(1)
    assert mf.torsion is None


def test_metric_file_symmetric_fill_and_conflict():
    good = "coordinates: x y\nsignature: ++\ng: x y = 2\ng: x x = 1\ng: y y = 1\n"
    mf = parse_metric_file(good)
    assert mf.metric.matrix[1][0] == E.integer(2)
    bad = "coordinates: x y\nsignature: ++\ng: x y = 2\ng: y x = 3\ng: x x = 1\ng: y y = 1\n"
    with pytest.raises(ParseError, match="transpose"):
        parse_metric_file(bad)


def test_metric_file_torsion_block():
    mf = parse_metric_file(PP_FILE + "torsion: gradient psi\n")
    assert mf.torsion.ansatz == "gradient"
    assert mf.torsion.symbol == "psi"


def test_metric_file_errors_report_lines():
    with pytest.raises(ParseError) as err:
        parse_metric_file("coordinates: x y\nsignature: ++\ng: x x = qq\ng: y y = 1\n")
    assert err.value.line == 3
    with pytest.raises(ParseError, match="missing signature"):
        parse_metric_file("coordinates: x y\ng: x x = 1\n")
    with pytest.raises(ParseError, match="unknown key"):
        parse_metric_file("coordinates: x y\nsignature: ++\nh: x x = 1\n")


def test_serialize_roundtrip():
    mf = parse_metric_file(PP_FILE)
    text = serialize_metric(mf.metric, functions=(("f", ("u",)),))
    mf2 = parse_metric_file(text)
    n = mf.chart.n
    for i in range(n):
        for j in range(n):
            assert (mf.metric.matrix[i][j] - mf2.metric.matrix[i][j]).is_zero_struct
