"""Catalog entries: documented properties re-verified at load."""

import pytest

from curvinv import catalog
from curvinv.criterion import kundt_form_check
from curvinv.curvature import CurvatureBundle
from curvinv.invariants import evaluate_invariants, standard_invariant_set


@pytest.mark.parametrize("name", catalog.names())
def test_entry_properties(name):
    entry = catalog.get(name)
    b = CurvatureBundle(entry.metric, order=2)
    if entry.properties["flat"]:
        assert b.riemann.is_zero_tensor()
    if entry.properties["vacuum"]:
        assert b.ricci.is_zero_tensor()
    if entry.properties["kundt"]:
        assert kundt_form_check(entry.metric)
    if entry.properties["vsi"]:
        rep = evaluate_invariants(
            standard_invariant_set(2, entry.chart.n), b)
        assert rep.all_zero()


@pytest.mark.parametrize("name", catalog.names())
def test_alternate_chart_well_formed(name):
    entry = catalog.get(name)
    alt = entry.alternate
    assert alt is not None
    assert alt.metric.signature == entry.metric.signature
    assert alt.metric.chart.n == entry.chart.n
    # mapping values live on the alternate chart
    from curvinv.expr import free_coordinates
    alt_names = set(alt.metric.chart.names)
    for src, value in alt.mapping.items():
        assert src in entry.chart.names
        assert free_coordinates(value) <= alt_names


def test_specific_matrices():
    mink = catalog.get("minkowski")
    diag = [str(mink.metric.matrix[i][i]) for i in range(4)]
    assert diag == ["-1", "1", "1", "1"]
    schw = catalog.get("schwarzschild")
    assert str(schw.metric.matrix[2][2]) == "r^2"
    pp = catalog.get("pp_wave_vacuum")
    assert str(pp.metric.matrix[0][1]) == "1"
    assert set(map(str, pp.metric.matrix[1])) == {"1", "0"}


def test_parameter_overrides():
    e = catalog.get("minkowski", n=3)
    assert e.chart.n == 3
    e = catalog.get("sphere2", radius="b")
    assert "b" in str(e.metric.matrix[0][0])
    e = catalog.get("schwarzschild", mass="mu")
    assert "mu" in str(e.metric.matrix[0][0])


def test_errors():
    with pytest.raises(ValueError, match="unknown catalog entry"):
        catalog.get("nope")
    with pytest.raises(ValueError, match="bad parameters"):
        catalog.get("minkowski", banana=3)
    with pytest.raises(ValueError):
        catalog.get("minkowski", n=1)
    with pytest.raises(ValueError):
        catalog.get("kundt_generic", n=5)
