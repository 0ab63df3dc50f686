"""Singular locus of a strict transform and the simplicity test on its components"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Tuple

import sympy

from algebra.cyclotomic import CycloScalar
from algebra.polynomial import MultiPoly
from errors import ChartMismatch, InvariantViolation
from geometry.charts import PLANE_LABEL, LocalForm, line_in_domain
from geometry.foliation import CHART_VARIABLES

logger = logging.getLogger(__name__)

KIND_LINE = "line"
KIND_CURVE = "curve"
KIND_POINT = "point"


@dataclass(frozen=True)
class SingularComponent:
    """One piece of Sing of a strict transform inside a chart.

    Lines are {v = 0, w = 0} for two labelled coordinates. Curves are
    {v = 0, equation = 0}; when `monic` the equation is monic in `plane[1]`
    and reductions divide in that variable, otherwise they take the graded
    normal form. `plane` is the transversal coordinate plane used by the
    simplicity test.
    """
    chart_id: str
    kind: str
    vanishing: Tuple[str, ...]
    labels: Tuple[str, ...]
    plane: Tuple[str, ...] = ()
    equation: Optional[MultiPoly] = None
    on_separatrix: bool = False
    monic: bool = True

    def describe(self) -> str:
        if self.kind == KIND_POINT:
            return "origin"
        if self.kind == KIND_LINE:
            return "{" + ", ".join(f"{v} = 0" for v in self.vanishing) + "}"
        text = self.equation.render() if self.equation is not None else "?"
        return f"{{{self.vanishing[0]} = 0, {text} = 0}}"

    def to_json(self) -> dict:
        return {
            "chart": self.chart_id,
            "kind": self.kind,
            "description": self.describe(),
            "vanishing": list(self.vanishing),
            "labels": list(self.labels),
            "plane": list(self.plane),
            "on_separatrix": self.on_separatrix,
        }


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    reason: str
    ratio_invariant: Optional[str] = None

    def to_json(self) -> dict:
        return {"simple": self.simple, "reason": self.reason, "trace_det_ratio": self.ratio_invariant}


# univariate helpers over Q(zeta_M), coefficient lists from degree 0 upwards

def _trim(coeffs: List[CycloScalar]) -> List[CycloScalar]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _udivmod(num: List[CycloScalar], den: List[CycloScalar]) -> Tuple[List[CycloScalar], List[CycloScalar]]:
    num = _trim(list(num))
    den = _trim(list(den))
    zero = den[0] * 0
    quotient = [zero] * max(len(num) - len(den) + 1, 1)
    lead = den[-1].inverse()
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        factor = num[-1] * lead
        quotient[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] = num[shift + i] - factor * c
        num = _trim(num)
    return _trim(quotient), num


def _ugcd(a: List[CycloScalar], b: List[CycloScalar]) -> List[CycloScalar]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _udivmod(a, b)[1]
    lead = a[-1].inverse()
    return [c * lead for c in a]


def _single_variable(f: MultiPoly) -> Optional[str]:
    used = {v for e in f.terms for v, k in zip(f.variables, e) if k}
    return used.pop() if len(used) == 1 else None


def squarefree_part(f: MultiPoly) -> MultiPoly:
    """Radical of a polynomial in one variable; other polynomials are returned unchanged"""
    name = _single_variable(f)
    if name is None:
        return f
    i = f.index(name)
    zero = CycloScalar.rational(f.order, 0)
    coeffs = [zero] * (f.degree(name) + 1)
    for e, c in f.terms.items():
        coeffs[e[i]] = c
    derivative = [c * k for k, c in enumerate(coeffs)][1:]
    common = _ugcd(coeffs, derivative)
    if len(common) == 1:
        return f
    radical, _ = _udivmod(coeffs, common)
    terms = {tuple(k if j == i else 0 for j in range(len(f.variables))): c for k, c in enumerate(radical)}
    return MultiPoly(f.variables, f.order, terms)


# locus

def _labelled(lf: LocalForm) -> List[str]:
    return [v for v in CHART_VARIABLES if v in lf.labels]


def _restrict_zero(f: MultiPoly, names) -> MultiPoly:
    for name in names:
        f = f.restrict(name, 0)
    return f


def on_component(f: MultiPoly, component: SingularComponent) -> MultiPoly:
    """Normal form of f along a component: restriction, then reduction by the curve equation"""
    if component.kind == KIND_POINT:
        return MultiPoly.constant(f.variables, f.order, f.constant_term())
    restricted = _restrict_zero(f, component.vanishing if component.kind == KIND_LINE else component.vanishing[:1])
    if component.kind == KIND_CURVE:
        if component.monic:
            return restricted.reduce_modulo(component.equation, component.plane[1])
        return restricted.normal_form(component.equation)
    return restricted


def _vanishes(lf: LocalForm, component: SingularComponent) -> bool:
    return all(on_component(c, component).is_zero() for c in lf.form.components())


def line_component(lf: LocalForm, v: str, w: str) -> Optional[SingularComponent]:
    """The line {v = 0, w = 0} as a singular component, or None when the form does not vanish on it"""
    third = next(u for u in CHART_VARIABLES if u not in (v, w))
    component = SingularComponent(
        chart_id=lf.chart_id, kind=KIND_LINE, vanishing=(v, w),
        labels=(lf.labels.get(v, ""), lf.labels.get(w, "")), plane=(v, w, third),
    )
    if not _vanishes(lf, component):
        return None
    return replace(component, on_separatrix=_restrict_zero(lf.separatrix, (v, w)).is_zero())


def _line_components(lf: LocalForm) -> List[SingularComponent]:
    found = []
    labelled = _labelled(lf)
    for i, v in enumerate(labelled):
        for w in labelled[i + 1:]:
            if not line_in_domain(lf.domain, {v, w}):
                continue
            component = line_component(lf, v, w)
            if component is not None:
                found.append(component)
    return found


def _curve_equation(lf: LocalForm, v: str) -> Optional[MultiPoly]:
    trace = lf.separatrix.restrict(v, 0)
    if trace.is_zero():
        return None
    others = [u for u in _labelled(lf) if u != v]
    stripped = trace.divide_monomial(trace.monomial_content(others))
    if stripped.is_constant():
        return None
    return squarefree_part(stripped)


def _monic_variable(g: MultiPoly, v: str) -> Optional[str]:
    for t in ("z", "y", "x"):
        if t == v or g.degree(t) < 1:
            continue
        top = g.degree(t)
        leading = [e for e in g.terms if e[g.index(t)] == top]
        if len(leading) == 1 and sum(leading[0]) == top:
            return t
    return None


def _transversal_variable(g: MultiPoly, v: str) -> Optional[str]:
    """A coordinate whose partial derivative does not vanish identically on {g = 0}"""
    for t in ("z", "y", "x"):
        if t != v and g.degree(t) >= 1 and not g.derivative(t).normal_form(g).is_zero():
            return t
    return None


def _curve_components(lf: LocalForm) -> List[SingularComponent]:
    found = []
    for v in _labelled(lf):
        g = _curve_equation(lf, v)
        if g is None:
            continue
        vanishing = [v]
        only = _single_variable(g)
        if only is not None and len(g.terms) == 1:
            vanishing.append(only)
        if not line_in_domain(lf.domain, vanishing):
            continue
        labels = (lf.labels[v],)
        t = _monic_variable(g, v)
        monic = t is not None
        if not monic:
            t = _transversal_variable(g, v)
            if t is None:
                raise InvariantViolation(f"chart {lf.chart_id}: curve {{{v} = 0, {g.render()} = 0}} "
                                         "has no transversal coordinate")
            logger.debug("chart %s: curve {%s = 0, %s = 0} reduced by normal form", lf.chart_id, v, g.render())
        third = next(u for u in CHART_VARIABLES if u not in (v, t))
        component = SingularComponent(lf.chart_id, KIND_CURVE, tuple(vanishing), labels,
                                      plane=(v, t, third), equation=g, on_separatrix=True, monic=monic)
        if _vanishes(lf, component):
            found.append(component)
    return found


def singular_locus(lf: LocalForm) -> List[SingularComponent]:
    """Singular components of the strict transform met inside the chart domain"""
    components = _line_components(lf) + _curve_components(lf)
    through_origin = any(
        c.kind == KIND_LINE or (c.equation is not None and c.equation.constant_term().is_zero())
        for c in components
    )
    if not through_origin and all(c.constant_term().is_zero() for c in lf.form.components()):
        components.append(SingularComponent(lf.chart_id, KIND_POINT, CHART_VARIABLES,
                                            tuple(lf.labels[v] for v in _labelled(lf)),
                                            on_separatrix=lf.separatrix.constant_term().is_zero()))
    logger.debug("chart %s: %d singular components", lf.chart_id, len(components))
    return components


# simplicity

def _is_rational_square(value: Fraction) -> bool:
    if value < 0:
        return False
    num, den = value.numerator, value.denominator
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def ratio_test(trace_sq: MultiPoly, det: MultiPoly) -> SimplicityVerdict:
    """Decide from T^2 and D (already reduced on the component) whether lambda2/lambda1 is a positive rational.

    With c = T^2 / D constant, the ratio solves rho^2 + (2 - c) rho + 1 = 0.
    """
    if det.is_zero():
        if trace_sq.is_zero():
            return SimplicityVerdict(False, "nilpotent linear part")
        return SimplicityVerdict(True, "saddle-node")
    exps, lead = det.sorted_terms()[0]
    c = trace_sq.terms.get(exps, lead * 0) / lead
    if not (trace_sq - det * c).is_zero():
        return SimplicityVerdict(True, "eigenvalue ratio varies along the component")
    if not c.is_rational():
        return SimplicityVerdict(True, "irrational eigenvalue ratio", c.render())
    value = c.to_rational()
    if value >= 4 and _is_rational_square(value * (value - 4)):
        return SimplicityVerdict(False, "positive rational eigenvalue ratio", c.render())
    return SimplicityVerdict(True, "non-resonant eigenvalues", c.render())


_ZETA, _T, _RHO = sympy.symbols("zeta t rho")


def _field_expr(value: CycloScalar):
    return sum(sympy.Rational(c.numerator, c.denominator) * _ZETA ** k for k, c in enumerate(value.coeffs))


def _vanishes_in_field(expr, modulus) -> Tuple[bool, List]:
    """Reduce a polynomial in zeta (coefficients in Q[rho]) modulo the cyclotomic polynomial.

    Returns whether the residue is zero and its coefficients on 1, zeta, zeta^2, ...
    """
    residue = sympy.rem(sympy.expand(expr), modulus, _ZETA)
    coeffs = sympy.Poly(residue, _ZETA).all_coeffs() if residue != 0 else []
    coeffs = [sympy.expand(c) for c in coeffs if sympy.expand(c) != 0]
    return not coeffs, coeffs


def point_verdict(matrix: List[List[CycloScalar]]) -> SimplicityVerdict:
    """Exact resonance test on the linear part at a point.

    The nonzero eigenvalues are the roots of chi(t) / t^k. A ratio rho of two
    of them is a root of Res_t(chi(t), chi(rho t)); its rational roots come from
    the gcd of the coefficients on the power basis of Q(zeta). rho = 1 counts
    only when the discriminant vanishes.
    """
    order = matrix[0][0].order
    modulus = sympy.cyclotomic_poly(order, _ZETA)
    chi = sympy.Matrix([[_field_expr(c) for c in row] for row in matrix]).charpoly(_T).as_expr()
    coeffs = sympy.Poly(sympy.expand(chi), _T).all_coeffs()
    reduced = [sympy.rem(sympy.expand(c), modulus, _ZETA) for c in coeffs]
    while len(reduced) > 1 and reduced[-1] == 0:
        reduced.pop()
    if len(reduced) == 1:
        return SimplicityVerdict(False, "nilpotent linear part")
    stripped = sum(c * _T ** k for k, c in enumerate(reversed(reduced)))
    if len(reduced) > 2:
        repeated, _ = _vanishes_in_field(sympy.discriminant(stripped, _T), modulus)
        if repeated:
            return SimplicityVerdict(False, "repeated eigenvalue", "1")
        resultant = sympy.resultant(stripped, stripped.subs(_T, _RHO * _T), _T)
        _, parts = _vanishes_in_field(resultant, modulus)
        common = parts[0] if parts else sympy.Integer(0)
        for part in parts[1:]:
            common = sympy.gcd(common, part)
        if common.has(_RHO):
            for ratio in sympy.Poly(common, _RHO, domain="QQ").ground_roots():
                if ratio > 0 and ratio != 1:
                    return SimplicityVerdict(False, "positive rational eigenvalue ratio", str(ratio))
    return SimplicityVerdict(True, "non-resonant eigenvalues")


def classify(lf: LocalForm, component: SingularComponent) -> SimplicityVerdict:
    if component.chart_id != lf.chart_id:
        raise ChartMismatch(f"component of chart {component.chart_id} tested in chart {lf.chart_id}")
    form = lf.form
    if component.kind == KIND_POINT:
        return point_verdict([[form.coefficient(v).derivative(u).constant_term() for u in CHART_VARIABLES]
                              for v in CHART_VARIABLES])
    v, u = component.plane[0], component.plane[1]
    a_v, a_u = form.coefficient(v), form.coefficient(u)
    j11, j12 = a_u.derivative(v), a_u.derivative(u)
    j21, j22 = -a_v.derivative(v), -a_v.derivative(u)
    trace = j11 + j22
    det = j11 * j22 - j12 * j21
    return ratio_test(on_component(trace * trace, component), on_component(det, component))


def is_simple(lf: LocalForm, component: SingularComponent) -> bool:
    return classify(lf, component).simple
