from fractions import Fraction

import pytest

from algebra.cyclotomic import CycloScalar
from algebra.forms import OneForm
from algebra.polynomial import MultiPoly
from errors import ChartMismatch
from geometry.charts import FULL_DOMAIN, LocalForm
from geometry.foliation import CHART_VARIABLES
from geometry.locus import (
    KIND_CURVE, KIND_LINE, KIND_POINT, classify, is_simple, line_component, on_component, point_verdict, ratio_test,
    singular_locus, squarefree_part,
)


def var(name):
    return MultiPoly.variable(CHART_VARIABLES, 4, name)


def const(value):
    return MultiPoly.constant(CHART_VARIABLES, 4, value)


def plane_form(lam):
    """x dy - lam y dx: a transversal type with eigenvalues 1 and lam"""
    x, y = var("x"), var("y")
    return OneForm.from_components([y * (-lam), x, const(0)])


def local_form(form, labels=None, separatrix=None, chart_id="c7"):
    return LocalForm(chart_id, labels if labels is not None else {"x": "D1", "y": "D2"}, FULL_DOMAIN,
                     form, separatrix if separatrix is not None else const(1))


def test_labelled_line_is_found():
    lf = local_form(plane_form(-1))
    components = singular_locus(lf)
    assert [c.kind for c in components] == [KIND_LINE]
    assert components[0].vanishing == ("x", "y")
    assert components[0].labels == ("D1", "D2")
    assert not components[0].on_separatrix


@pytest.mark.parametrize("lam, simple", [
    (-1, True),
    (-2, True),
    (Fraction(-1, 3), True),
    (2, False),
    (1, False),
    (3, False),
    (Fraction(1, 2), False),
])
def test_line_simplicity(lam, simple):
    lf = local_form(plane_form(lam))
    component = line_component(lf, "x", "y")
    assert is_simple(lf, component) is simple


def test_irrational_ratio_is_simple():
    zeta = CycloScalar.zeta(4)
    x, y = var("x"), var("y")
    lf = local_form(OneForm.from_components([y * (-(1 + zeta)), x, const(0)]))
    verdict = classify(lf, line_component(lf, "x", "y"))
    assert verdict.simple
    assert verdict.reason == "irrational eigenvalue ratio"


def test_saddle_node_and_nilpotent():
    x, y = var("x"), var("y")
    saddle_node = local_form(OneForm.from_components([y * y, x, const(0)]))
    assert classify(saddle_node, line_component(saddle_node, "x", "y")).reason == "saddle-node"
    nilpotent = local_form(OneForm.from_components([y * y, x * x, const(0)]))
    assert not is_simple(nilpotent, line_component(nilpotent, "x", "y"))


def test_line_component_requires_vanishing():
    lf = local_form(OneForm.from_components([const(1), var("x"), const(0)]))
    assert line_component(lf, "x", "y") is None


def test_isolated_point():
    x, y = var("x"), var("y")
    lf = local_form(OneForm.from_components([x, y * (-1), const(0)]), labels={})
    components = singular_locus(lf)
    assert [c.kind for c in components] == [KIND_POINT]
    assert is_simple(lf, components[0])
    resonant = local_form(OneForm.from_components([x, y * 2, var("z") * 3]), labels={})
    assert not is_simple(resonant, singular_locus(resonant)[0])


def test_component_from_another_chart():
    lf = local_form(plane_form(-1))
    component = line_component(lf, "x", "y")
    with pytest.raises(ChartMismatch):
        classify(local_form(plane_form(-1), chart_id="c8"), component)


def test_ratio_test_varying_ratio():
    x = var("x")
    verdict = ratio_test(x * x + 1, x + 1)
    assert verdict.simple
    assert verdict.reason == "eigenvalue ratio varies along the component"


def test_squarefree_part():
    y = var("y")
    radical = squarefree_part((y - 1) ** 2 * (y + 1))
    assert radical.degree("y") == 2
    assert radical.restrict("y", 1).is_zero()
    assert radical.restrict("y", -1).is_zero()
    x = var("x")
    assert squarefree_part(x * y) == x * y


def diagonal(*entries):
    zero = CycloScalar.rational(4, 0)
    return [[CycloScalar.rational(4, 0) + e if i == j else zero for j in range(3)] for i, e in enumerate(entries)]


def test_point_verdict_finds_a_rational_ratio_between_cyclotomic_eigenvalues(zeta4):
    verdict = point_verdict(diagonal(zeta4, zeta4 * 2, 0))
    assert not verdict.simple
    assert verdict.reason == "positive rational eigenvalue ratio"
    assert verdict.ratio_invariant in ("2", "1/2")


@pytest.mark.parametrize("entries, simple, reason", [
    ((1, "zeta", 0), True, "non-resonant eigenvalues"),
    ((1, -1, 0), True, "non-resonant eigenvalues"),
    ((0, 0, 0), False, "nilpotent linear part"),
    ((1, 1, 0), False, "repeated eigenvalue"),
])
def test_point_verdict_is_exact(zeta4, entries, simple, reason):
    verdict = point_verdict(diagonal(*(zeta4 if e == "zeta" else e for e in entries)))
    assert verdict.simple is simple
    assert verdict.reason == reason


def test_curve_without_monic_coordinate_uses_the_normal_form():
    x, y, z = var("x"), var("y"), var("z")
    g = y * z + 1
    lf = local_form(OneForm.from_components([g, x * g, const(0)]), labels={"x": "D1"}, separatrix=x + g)
    components = singular_locus(lf)
    assert [c.kind for c in components] == [KIND_CURVE]
    curve = components[0]
    assert not curve.monic
    assert curve.plane[:2] == ("x", "z")
    assert on_component(y * g * z, curve).is_zero()
    assert not on_component(y, curve).is_zero()
