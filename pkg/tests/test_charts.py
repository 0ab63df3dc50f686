import pytest

from algebra.forms import PolyMap, exterior_derivative
from algebra.polynomial import MultiPoly
from errors import ChartMismatch, ZeroFormError
from geometry.charts import (
    FULL_DOMAIN, Center, Chart, blowup_chart, center_in_chart, line_blowup_maps, line_in_domain,
    normalize_domain, preimage_domain, strict_transform,
)
from geometry.foliation import CHART_VARIABLES


def var(name):
    return MultiPoly.variable(CHART_VARIABLES, 4, name)


@pytest.fixture
def cusp_chart():
    x, y, z = var("x"), var("y"), var("z")
    S = z ** 2 + (y ** 2 - x ** 3) ** 2
    identity = PolyMap.identity(CHART_VARIABLES, 4)
    return Chart(id="c0", index=0, parent=None, to_parent=identity, to_origin=identity,
                 labels={"z": "Z"}, domain=FULL_DOMAIN, step=0, form=exterior_derivative(S), separatrix=S)


def test_point_blowup_children(cusp_chart):
    children = blowup_chart(cusp_chart, Center("point"), "D1", primary="x")
    assert [c.kept for c in children] == ["x", "y", "z"]
    by_kept = {c.kept: c for c in children}
    assert by_kept["x"].labels == {"z": "Z", "x": "D1"}
    assert by_kept["z"].labels == {"z": "D1"}
    assert by_kept["x"].strata == frozenset()
    assert by_kept["y"].strata == frozenset({"x"})
    assert by_kept["z"].strata == frozenset({"x", "y"})


def test_strict_transform_of_the_cusp(cusp_chart):
    child = blowup_chart(cusp_chart, Center("point"), "D1", primary="x")[0]
    powers, separatrix = strict_transform(child.separatrix, child)
    x, y, z = var("x"), var("y"), var("z")
    assert powers == {"x": 2}
    assert separatrix == z ** 2 + x ** 2 * (y ** 2 - x) ** 2
    form_powers, _ = strict_transform(child.form, child)
    assert form_powers == {"x": 1}


def test_strict_transform_of_zero(cusp_chart):
    with pytest.raises(ZeroFormError):
        strict_transform(MultiPoly.zero(CHART_VARIABLES, 4), cusp_chart)


def test_strict_transform_reads_chart_labels(cusp_chart):
    labelled = Chart(**{**cusp_chart.__dict__, "labels": {"x": "D1", "y": "D2", "z": "Z"}})
    x, y, z = var("x"), var("y"), var("z")
    powers, reduced = strict_transform(x ** 3 * y * (z + 1), labelled)
    assert powers == {"x": 3, "y": 1}
    assert reduced == z + 1
    powers, _ = strict_transform(x ** 3 * y * (z + 1), cusp_chart)
    assert powers == {}


def test_line_center_must_be_a_chart_line(cusp_chart):
    labelled = Chart(**{**cusp_chart.__dict__, "labels": {"x": "D1", "z": "Z"}})
    good = Center("line", "x", "z", labels=("D1", "Z"))
    wrong = Center("line", "y", "z", labels=("D1", "Z"))
    assert center_in_chart(labelled, good)
    assert not center_in_chart(labelled, wrong)
    with pytest.raises(ChartMismatch):
        blowup_chart(labelled, wrong, "D1_1")


def test_line_blowup_needs_two_variables():
    with pytest.raises(ChartMismatch):
        line_blowup_maps(4, "x", "x")


def test_translated_line_chart_maps():
    shift = MultiPoly.constant(CHART_VARIABLES, 4, 2).constant_term()
    (kept_u, to_u), (kept_w, to_w) = line_blowup_maps(4, "y", "z", shift)
    y, z = var("y"), var("z")
    assert (kept_u, kept_w) == ("y", "z")
    assert to_u.images["y"] == y + 2
    assert to_u.images["z"] == y * z
    assert to_w.images["y"] == y * z + 2


def test_domains():
    assert normalize_domain([frozenset({"x"}), frozenset({"x", "y"})]) == (frozenset({"x"}),)
    x, y, z = var("x"), var("y"), var("z")
    chart_map = PolyMap(CHART_VARIABLES, CHART_VARIABLES, {"x": x * y, "y": y, "z": y * z})
    pulled = preimage_domain((frozenset({"x"}),), chart_map, frozenset())
    assert set(pulled) == {frozenset({"x"}), frozenset({"y"})}
    assert line_in_domain((frozenset({"x"}),), {"x", "z"})
    assert not line_in_domain((frozenset({"x"}),), {"y", "z"})


def test_chart_json_round_trip(cusp_chart):
    restored = Chart.from_json(cusp_chart.to_json(), 4)
    assert restored.separatrix == cusp_chart.separatrix
    assert restored.form == cusp_chart.form
    assert restored.to_origin == cusp_chart.to_origin
    assert restored.domain == cusp_chart.domain
