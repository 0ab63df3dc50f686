import pytest

from algebra.cyclotomic import CycloScalar
from algebra.polynomial import MultiPoly, divide_by_monomial
from errors import ChartMismatch, ZeroFormError
from geometry.foliation import CHART_VARIABLES


def var(name, order=4):
    return MultiPoly.variable(CHART_VARIABLES, order, name)


def test_arithmetic_and_equality():
    x, y = var("x"), var("y")
    assert (x + y) * (x - y) == x ** 2 - y ** 2
    assert (x - x).is_zero()
    assert MultiPoly.constant(CHART_VARIABLES, 4, 3) == 3


def test_restrict_and_evaluate():
    x, y, z = var("x"), var("y"), var("z")
    f = x * y + z ** 2
    assert f.restrict("z", 0) == x * y
    zeta = CycloScalar.zeta(4)
    assert f.evaluate({"x": zeta, "y": zeta, "z": CycloScalar.rational(4, 1)}) == 0


def test_monomial_content_and_division():
    x, y = var("x"), var("y")
    a = CycloScalar.rational(4, 5)
    f = x ** 4 * (y ** 2 - x * a) ** 2
    powers, remainder = divide_by_monomial(f, ["x"])
    assert powers == {"x": 4}
    assert remainder == (y ** 2 - x * a) ** 2


def test_division_without_common_factor():
    x, y = var("x"), var("y")
    powers, remainder = divide_by_monomial(y ** 2 - x, ["x"])
    assert powers == {"x": 0}
    assert remainder == y ** 2 - x


def test_division_of_a_pure_monomial():
    x, y = var("x"), var("y")
    powers, remainder = divide_by_monomial(x ** 2 * y ** 3, ["x", "y"])
    assert powers == {"x": 2, "y": 3}
    assert remainder == 1


def test_zero_polynomial_has_no_content():
    with pytest.raises(ZeroFormError):
        MultiPoly.zero(CHART_VARIABLES, 4).monomial_content(["x"])


def test_substitute_into_chart():
    x, y = var("x"), var("y")
    a = CycloScalar.rational(4, 2)
    phi = (y ** 2 - x ** 3 * a) ** 2
    images = {"x": x, "y": x * y, "z": var("z")}
    assert phi.substitute(images) == x ** 4 * (y ** 2 - x * a) ** 2


def test_reduce_modulo_monic_divisor():
    y, z = var("y"), var("z")
    divisor = z ** 2 + y ** 3
    assert (z ** 3).reduce_modulo(divisor, "z") == -(y ** 3) * z
    assert (divisor * (z + y)).reduce_modulo(divisor, "z").is_zero()


def test_normal_form_by_a_non_monic_divisor():
    x, y = var("x"), var("y")
    divisor = x * y + 1
    assert ((x * y + 1) * (x + y)).normal_form(divisor).is_zero()
    assert x.normal_form(divisor) == x
    assert (x * y).normal_form(divisor) == MultiPoly.constant(CHART_VARIABLES, 4, -1)
    with pytest.raises(ZeroFormError):
        x.normal_form(MultiPoly.zero(CHART_VARIABLES, 4))


def test_mismatched_variables():
    other = MultiPoly.variable(("Psi", "z"), 4, "z")
    with pytest.raises(ChartMismatch):
        var("z") + other


def test_render_is_graded():
    x, y = var("x"), var("y")
    assert (x + y ** 2 + 1).render() == "1*y^2 + 1*x^1 + 1"
