from fractions import Fraction

import pytest

from algebra.continued_fraction import cf_expand, euclid_chart_sequence


@pytest.mark.parametrize("p, q, digits, k", [
    (4, 2, (2,), 2),
    (7, 5, (1, 2, 2), 5),
    (2, 3, (0, 1, 2), 3),
])
def test_cf_expand_examples(p, q, digits, k):
    cf = cf_expand(p, q)
    assert cf.digits == digits
    assert cf.k == k


def test_digits_reevaluate_to_the_ratio():
    for p in range(2, 13):
        for q in range(2, 13):
            cf = cf_expand(p, q)
            assert cf.evaluate() == Fraction(p, q)
            if len(cf.digits) > 1:
                assert cf.digits[-1] >= 2


def test_chart_sequence_length_is_the_digit_sum():
    for p in range(2, 13):
        for q in range(2, 13):
            assert len(euclid_chart_sequence(p, q)) == cf_expand(p, q).k


def test_cusp_chart_sequence():
    assert euclid_chart_sequence(2, 3) == ["x", "y", "x"]


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        cf_expand(0, 3)
