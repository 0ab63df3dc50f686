"""Exact algebra layer: cyclotomic scalars, sparse polynomials, differential forms"""

from .cyclotomic import CycloScalar, cyclo_ops, default_field_order
from .continued_fraction import CFDigits, cf_expand, euclid_chart_sequence
from .polynomial import MultiPoly, divide_by_monomial
from .forms import (
    DifferentialForm, OneForm, TwoForm, ThreeForm, PolyMap, VectorField,
    exterior_derivative, wedge, pullback, integrability_check,
)
from .valuation import weighted_valuation, surface_threshold

__all__ = [
    'CycloScalar', 'cyclo_ops', 'default_field_order',
    'CFDigits', 'cf_expand', 'euclid_chart_sequence',
    'MultiPoly', 'divide_by_monomial',
    'DifferentialForm', 'OneForm', 'TwoForm', 'ThreeForm', 'PolyMap', 'VectorField',
    'exterior_derivative', 'wedge', 'pullback', 'integrability_check',
    'weighted_valuation', 'surface_threshold',
]
