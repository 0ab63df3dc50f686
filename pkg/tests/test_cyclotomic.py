from fractions import Fraction

import pytest

from algebra.cyclotomic import CycloScalar, cyclo_ops, default_field_order
from errors import ZeroDivisionInField


def test_product_in_gaussian_field():
    zeta = CycloScalar.zeta(4)
    assert (1 + zeta) * (1 - zeta) == 2


@pytest.mark.parametrize("order", [3, 4, 5, 8, 12])
def test_root_times_its_inverse_power(order):
    assert CycloScalar.zeta(order) * CycloScalar.zeta(order, order - 1) == 1


def test_reduction_modulo_third_cyclotomic():
    zeta = CycloScalar.zeta(3)
    assert zeta * zeta == -1 - zeta


def test_inverse_round_trip():
    value = CycloScalar(8, [1, 2, 0, Fraction(1, 3)])
    assert value * value.inverse() == 1


def test_division_by_zero_is_a_field_error():
    with pytest.raises(ZeroDivisionInField):
        CycloScalar.rational(4, 1) / CycloScalar.rational(4, 0)


def test_mixed_orders_are_rejected():
    with pytest.raises(ValueError):
        cyclo_ops(CycloScalar.zeta(4), CycloScalar.zeta(8), "add")


def test_render_and_json():
    value = CycloScalar(4, [Fraction(1, 2), -1])
    assert value.render() == "(1/2 + -1*w^1)"
    assert value.to_json() == ["1/2", "-1"]
    assert CycloScalar.rational(4, 3).render() == "3"


def test_default_field_order():
    assert default_field_order(1) == 4
    assert default_field_order(3) == 12
    assert default_field_order(2) == 4
