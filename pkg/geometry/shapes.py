"""Exact shape checks on the end-of-stage charts of a resolution trace"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from algebra.forms import OneForm, exterior_derivative, wedge
from algebra.polynomial import MultiPoly
from errors import InvariantViolation
from geometry.charts import Chart, PLANE_LABEL
from geometry.foliation import CHART_VARIABLES
from geometry.resolution import ResolutionTrace

logger = logging.getLogger(__name__)


@dataclass
class ShapeReport:
    step_one: Dict[str, object] = field(default_factory=dict)
    step_two: Dict[str, object] = field(default_factory=dict)
    P: Fraction = Fraction(0)
    Q: Fraction = Fraction(0)
    separatrix_invariance: Dict[str, Optional[bool]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "step_one": self.step_one,
            "step_two": self.step_two,
            "P": str(self.P),
            "Q": str(self.Q),
            "separatrix_invariance": dict(sorted(self.separatrix_invariance.items())),
        }


def branch_polynomial(trace: ResolutionTrace) -> MultiPoly:
    """h = prod (y^delta - a_i)^(d_i') in chart coordinates"""
    order = trace.input.order
    y = MultiPoly.variable(CHART_VARIABLES, order, "y")
    h = MultiPoly.constant(CHART_VARIABLES, order, 1)
    for a_i, exponent in zip(trace.params.a, trace.params.d_prime):
        h = h * (y ** trace.params.delta - a_i) ** exponent
    return h


def _mismatch(message: str, residual: MultiPoly):
    logger.error("%s: residual %s", message, residual.render())
    raise InvariantViolation(message, residual=residual.render())


def _exceptional_factor(chart: Chart, name: str) -> Tuple[MultiPoly, bool]:
    order = chart.form.order
    if name in chart.labels and chart.labels[name] != PLANE_LABEL:
        return MultiPoly.variable(CHART_VARIABLES, order, name), True
    return MultiPoly.constant(CHART_VARIABLES, order, 1), False


def linear_part(chart: Chart, m, n) -> Tuple[OneForm, MultiPoly]:
    """omega = m Y dx + n X dy and the monomial X*Y, with X, Y the exceptional coordinates among x, y"""
    X, _ = _exceptional_factor(chart, "x")
    Y, _ = _exceptional_factor(chart, "y")
    zero = MultiPoly.zero(CHART_VARIABLES, chart.form.order)
    omega = OneForm.from_components([Y * m, X * n, zero])
    return omega, X * Y


def split_residual(chart: Chart, m, n) -> Tuple[OneForm, Dict[str, int]]:
    """Write the strict form as S omega + XY eta and return eta"""
    omega, monomial = linear_part(chart, m, n)
    residual = chart.form - omega.scale(chart.separatrix)
    powers = {v: 1 for v in ("x", "y") if monomial.degree(v) > 0}
    try:
        eta = OneForm.from_components([c.divide_monomial(powers) for c in residual.components()])
    except ValueError:
        bad = next(c for c in residual.components() if not c.is_zero())
        _mismatch(f"chart {chart.id}: residual is not divisible by the exceptional monomial", bad)
    return eta, powers


def _check_step_one(trace: ResolutionTrace, report: ShapeReport):
    chart = trace.charts[trace.step_one_chart]
    order = trace.input.order
    params = trace.params
    z = MultiPoly.variable(CHART_VARIABLES, order, "z")
    rest = chart.separatrix - z ** 2
    content = rest.monomial_content(["x", "y"])
    a, b = content["x"], content["y"]
    unit = rest.divide_monomial(content)
    h_r = branch_polynomial(trace) ** params.r
    on_divisor = unit.restrict("x", 0)
    if on_divisor != h_r:
        _mismatch(f"chart {chart.id}: U on the divisor differs from h^r", on_divisor - h_r)
    # x = X^(p/delta) Y^n, y = X^(q/delta) Y^m
    image_x, image_y = chart.to_origin.images["x"], chart.to_origin.images["y"]
    weights = (image_x.degree("x"), image_y.degree("x"))
    if weights != (trace.input.p // params.delta, trace.input.q // params.delta):
        raise InvariantViolation(f"chart {chart.id}: divisor weights {weights} differ from (p, q)/delta")
    m, n = image_y.degree("y"), image_x.degree("y")
    M, N = chart.sep_mult.get("x", 0), chart.sep_mult.get("y", 0)
    if N != 2 * (m + n - 1):
        raise InvariantViolation(f"chart {chart.id}: multiplicity {N} on Y differs from 2(m + n - 1) = "
                                 f"{2 * (m + n - 1)}")
    if b != n * trace.input.q * params.d - N:
        raise InvariantViolation(f"chart {chart.id}: exponent b = {b} differs from nqd - N")
    eta, _ = split_residual(chart, M, N)
    d_sep = exterior_derivative(chart.separatrix)
    correction = (eta - d_sep).coefficient("z") * Fraction(-1, 2) * z
    report.step_one = {
        "chart": chart.id, "a": a, "b": b, "m": m, "n": n, "M": M, "N": N,
        "U": unit.render(), "h_r": h_r.render(),
        "eta": eta.render(), "delta_term": correction.render(),
    }


def _check_step_two(trace: ResolutionTrace, report: ShapeReport):
    chart = trace.charts[trace.essential_chart]
    order = trace.input.order
    params = trace.params
    a, b, n = report.step_one["a"], report.step_one["b"], report.step_one["n"]
    x, y, z = (MultiPoly.variable(CHART_VARIABLES, order, v) for v in CHART_VARIABLES)
    expected = z ** 2 + x ** (a % 2) * y ** (b % 2) * branch_polynomial(trace) ** params.r
    if chart.separatrix != expected:
        _mismatch(f"chart {chart.id}: separatrix at the essential chart differs from z^2 + x^(a mod 2) "
                  f"y^(b mod 2) h^r", chart.separatrix - expected)
    m_pq, n_pq = chart.sep_mult.get("x", 0), chart.sep_mult.get("y", 0)
    expected_m = params.pq * params.d // params.delta
    if m_pq + a % 2 != expected_m:
        raise InvariantViolation(f"essential multiplicity {m_pq} differs from (pq/delta) d - (a mod 2) = "
                                 f"{expected_m - a % 2}")
    expected_n = n * trace.input.q * params.d
    if n_pq + b % 2 != expected_n:
        raise InvariantViolation(f"multiplicity {n_pq} on Y differs from nqd - (b mod 2) = {expected_n - b % 2}")
    eta, _ = split_residual(chart, m_pq, n_pq)
    report.step_two = {
        "chart": chart.id, "m_pq": m_pq, "n_pq": n_pq,
        "ratio": str(Fraction(m_pq, n_pq)) if n_pq else None,
        "eta": eta.render(),
    }


def separatrix_invariance(chart: Chart) -> Optional[bool]:
    """True when S divides Omega ^ dS; None when no coordinate makes S monic"""
    separatrix = chart.separatrix
    product = wedge(chart.form, exterior_derivative(separatrix))
    for name in ("z", "y", "x"):
        try:
            return all(c.reduce_modulo(separatrix, name).is_zero() for c in product.components())
        except ValueError:
            continue
    return None


def verify_shapes(trace: ResolutionTrace) -> ShapeReport:
    if trace.step_one_chart is None or trace.essential_chart is None:
        raise InvariantViolation("trace is missing its end-of-stage charts")
    report = ShapeReport()
    _check_step_one(trace, report)
    _check_step_two(trace, report)
    params = trace.params
    p, q, d, delta = trace.input.p, trace.input.q, params.d, params.delta
    one, two = report.step_one, report.step_two
    m, n = one["m"], one["n"]
    report.P = Fraction(p * q * d, delta) - 2 * (Fraction(p + q, delta) - 1)
    report.Q = Fraction(n * q * d - (m + n - 1))
    measured_P = two["m_pq"] + one["a"] % 2 - one["M"]
    if report.P != one["a"] or report.P != measured_P:
        raise InvariantViolation(f"P = {report.P} differs from the measured exponent a = {one['a']} "
                                 f"or m_pq - M = {measured_P}")
    measured_Q = two["n_pq"] + one["b"] % 2 - Fraction(one["N"], 2)
    if report.Q != measured_Q:
        raise InvariantViolation(f"Q = {report.Q} differs from n_pq - N/2 = {measured_Q}")
    for chart in trace.active_charts():
        report.separatrix_invariance[chart.id] = separatrix_invariance(chart)
    if any(value is False for value in report.separatrix_invariance.values()):
        raise InvariantViolation("separatrix is not invariant in some chart")
    trace.invariants["step_two"] = {**report.step_two, "P": str(report.P), "Q": str(report.Q)}
    logger.info("shapes verified: P=%s Q=%s", report.P, report.Q)
    return report
