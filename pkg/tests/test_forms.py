import random

from algebra.cyclotomic import CycloScalar
from algebra.forms import (
    OneForm, PolyMap, exterior_derivative, integrability_check, pullback, wedge,
)
from algebra.polynomial import MultiPoly
from geometry.foliation import CHART_VARIABLES


def var(name):
    return MultiPoly.variable(CHART_VARIABLES, 4, name)


def const(value):
    return MultiPoly.constant(CHART_VARIABLES, 4, value)


def one_form(a, b, c):
    return OneForm.from_components([a, b, c])


def test_derivative_of_constant_and_product():
    assert exterior_derivative(const(7)).is_zero()
    x, y = var("x"), var("y")
    assert exterior_derivative(x * y) == one_form(y, x, const(0))


def test_d_squared_vanishes_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(5):
        terms = {(rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5) for _ in range(6)}
        P = MultiPoly(CHART_VARIABLES, 4, terms)
        assert exterior_derivative(exterior_derivative(P)).is_zero()


def test_wedge_basics():
    dx = exterior_derivative(var("x"))
    dy = exterior_derivative(var("y"))
    assert wedge(dx, dx).is_zero()
    assert wedge(dx, dy).coefficient("x", "y") == 1
    assert wedge(dy, dx).coefficient("x", "y") == -1


def test_wedge_with_derivative_oracle():
    x, z = var("x"), var("z")
    omega = one_form(z, x, const(1))
    product = wedge(omega, exterior_derivative(omega))
    assert product.coefficient("x", "y", "z") == x + 1
    assert not integrability_check(omega)


def test_exact_forms_are_integrable():
    x, y, z = var("x"), var("y"), var("z")
    assert integrability_check(exterior_derivative(z ** 2 + (y ** 2 - x ** 3) ** 2))


def test_pullback_along_identity_and_blowup_chart():
    x, y, z = var("x"), var("y"), var("z")
    omega = one_form(y, x * z, z ** 2)
    assert pullback(omega, PolyMap.identity(CHART_VARIABLES, 4)) == omega
    chart = PolyMap(CHART_VARIABLES, CHART_VARIABLES, {"x": x, "y": x * y, "z": z})
    dy = exterior_derivative(y)
    assert pullback(dy, chart) == one_form(y, x, const(0))


def test_pullback_of_the_cusp():
    x, y, z = var("x"), var("y"), var("z")
    a = CycloScalar.rational(4, 3)
    phi = (y ** 2 - x ** 3 * a) ** 2
    chart = PolyMap(CHART_VARIABLES, CHART_VARIABLES, {"x": x, "y": x * y, "z": z})
    assert pullback(phi, chart) == x ** 4 * (y ** 2 - x * a) ** 2


def test_pullback_commutes_with_d():
    x, y, z = var("x"), var("y"), var("z")
    f = x ** 2 * y + z ** 3 * y
    chart = PolyMap(CHART_VARIABLES, CHART_VARIABLES, {"x": x * z, "y": y * z, "z": z})
    assert pullback(exterior_derivative(f), chart) == exterior_derivative(pullback(f, chart))


def test_compose_maps():
    x, y, z = var("x"), var("y"), var("z")
    first = PolyMap(CHART_VARIABLES, CHART_VARIABLES, {"x": x, "y": x * y, "z": x * z})
    second = PolyMap(CHART_VARIABLES, CHART_VARIABLES, {"x": x * y, "y": y, "z": y * z})
    composed = first.compose(second)
    assert composed.images["y"] == x * y ** 2
    assert composed.images["z"] == x * y ** 2 * z
