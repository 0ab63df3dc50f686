from dataclasses import replace
from fractions import Fraction

import pytest

from errors import InvariantViolation
from geometry.foliation import CHART_VARIABLES
from geometry.shapes import branch_polynomial, separatrix_invariance, verify_shapes
from algebra.polynomial import MultiPoly
from conftest import make_input
from geometry.resolution import resolve


@pytest.fixture(scope="module")
def shapes(minimal_trace):
    return verify_shapes(minimal_trace)


def _with_chart(trace, chart_id, **changes):
    charts = dict(trace.charts)
    charts[chart_id] = replace(trace.charts[chart_id], **changes)
    return replace(trace, charts=charts, invariants=dict(trace.invariants))


def test_invariants_of_the_cusp(shapes):
    assert shapes.P == 4
    assert shapes.Q == 4
    assert shapes.step_two["m_pq"] == 12
    assert shapes.step_two["n_pq"] == 6
    assert shapes.step_two["ratio"] == "2"


def test_step_one_checkpoint(shapes, minimal_trace):
    one = shapes.step_one
    assert one["chart"] == minimal_trace.step_one_chart
    assert (one["a"], one["b"]) == (4, 2)
    # x = X^2 Y and y = X^3 Y^2 on the last chart
    assert (one["m"], one["n"]) == (2, 1)
    assert (one["M"], one["N"]) == (8, 4)


def test_separatrix_invariant_everywhere(shapes, minimal_trace):
    assert set(shapes.separatrix_invariance) == {c.id for c in minimal_trace.active_charts()}
    assert all(value is not False for value in shapes.separatrix_invariance.values())
    assert minimal_trace.invariants["step_two"]["P"] == "4"


def test_branch_polynomial_of_one_branch(minimal_trace):
    y = MultiPoly.variable(CHART_VARIABLES, minimal_trace.input.order, "y")
    # a single branch with b = 1 and delta = 1
    assert branch_polynomial(minimal_trace) == (y - 1) ** minimal_trace.params.d_prime[0]


def test_root_chart_separatrix_is_invariant(minimal_trace):
    assert separatrix_invariance(minimal_trace.charts["c0"]) is True


def test_missing_checkpoints_are_rejected(minimal_trace):
    with pytest.raises(InvariantViolation):
        verify_shapes(replace(minimal_trace, essential_chart=None))


def test_wrong_essential_multiplicity_is_rejected(minimal_trace):
    chart = minimal_trace.charts[minimal_trace.essential_chart]
    tampered = _with_chart(minimal_trace, chart.id, sep_mult={**chart.sep_mult, "y": chart.sep_mult["y"] + 2})
    with pytest.raises(InvariantViolation, match="multiplicity"):
        verify_shapes(tampered)


def test_wrong_stage_one_multiplicity_is_rejected(minimal_trace):
    chart = minimal_trace.charts[minimal_trace.step_one_chart]
    tampered = _with_chart(minimal_trace, chart.id, sep_mult={**chart.sep_mult, "x": chart.sep_mult["x"] + 1})
    with pytest.raises(InvariantViolation):
        verify_shapes(tampered)


def test_wrong_essential_separatrix_is_rejected(minimal_trace):
    chart = minimal_trace.charts[minimal_trace.essential_chart]
    x = MultiPoly.variable(CHART_VARIABLES, minimal_trace.input.order, "x")
    tampered = _with_chart(minimal_trace, chart.id, separatrix=chart.separatrix + x)
    with pytest.raises(InvariantViolation, match="essential chart"):
        verify_shapes(tampered)


@pytest.mark.parametrize("p,q,ds,P,Q", [
    (4, 2, [2], 4, 3),
    (2, 2, [2], 2, 0),
])
def test_invariants_with_common_divisor(p, q, ds, P, Q):
    report = verify_shapes(resolve(make_input(p, q, ds)))
    assert report.P == P
    assert report.Q == Q


def test_report_json(shapes):
    document = shapes.to_json()
    assert document["P"] == "4"
    assert document["Q"] == "4"
    assert Fraction(document["step_two"]["ratio"]) == 2
