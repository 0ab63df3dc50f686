from fractions import Fraction
from math import inf

import pytest

from algebra.polynomial import MultiPoly
from algebra.valuation import surface_threshold, weighted_valuation

G_VARS = ("Psi", "z")


def g(terms):
    return MultiPoly(G_VARS, 4, terms)


def test_constant_has_order_zero():
    assert weighted_valuation(g({(0, 0): 5}), 2) == 0


def test_examples():
    assert weighted_valuation(g({(1, 1): 1}), 2) == 2
    assert weighted_valuation(g({(2, 0): 1, (0, 3): 1}), 3) == 4


def test_zero_is_infinite():
    assert weighted_valuation(g({}), 4) == inf


def test_wrong_variables():
    with pytest.raises(ValueError):
        weighted_valuation(MultiPoly(("x", "y", "z"), 4, {(0, 0, 1): 1}), 2)


def test_threshold():
    assert surface_threshold(2) == 0
    assert surface_threshold(5) == Fraction(3)
    assert surface_threshold(6) == Fraction(2)
