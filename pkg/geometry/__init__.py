"""Foliation model, blow-up charts, resolution driver and the divisor graph"""

from .foliation import (
    Branch, CuspidalInput, DerivedParams, ValidationReport,
    admissibility_check, derive_params, build_omega, separatrix, psi_polynomial,
    generalized_surface_criterion, hopf_field, hopf_pairing, quasi_homogeneity_residual,
)
from .charts import Center, Chart, LocalForm, blowup_chart, strict_transform
from .locus import SingularComponent, SimplicityVerdict, singular_locus, is_simple, classify
from .resolution import BlowupStep, Component, ResolutionTrace, ResolutionDriver, resolve
from .shapes import ShapeReport, verify_shapes
from .divisor import DivisorGraph, build_graph, classify_component, essential_component, special_components
from .presentation import (
    AbelianGroup, PlaneCurveData, Pi1Report, Presentation,
    abelianization, fundamental_group, presentations, smith_normal_form,
)

__all__ = [
    'Branch', 'CuspidalInput', 'DerivedParams', 'ValidationReport',
    'admissibility_check', 'derive_params', 'build_omega', 'separatrix', 'psi_polynomial',
    'generalized_surface_criterion', 'hopf_field', 'hopf_pairing', 'quasi_homogeneity_residual',
    'Center', 'Chart', 'LocalForm', 'blowup_chart', 'strict_transform',
    'SingularComponent', 'SimplicityVerdict', 'singular_locus', 'is_simple', 'classify',
    'BlowupStep', 'Component', 'ResolutionTrace', 'ResolutionDriver', 'resolve',
    'ShapeReport', 'verify_shapes',
    'DivisorGraph', 'build_graph', 'classify_component', 'essential_component', 'special_components',
    'AbelianGroup', 'PlaneCurveData', 'Pi1Report', 'Presentation',
    'abelianization', 'fundamental_group', 'presentations', 'smith_normal_form',
]
