"""Pipeline stages: checks, resolution, divisor graph, pi1 and report"""

from .foliation_agent import FoliationAgent
from .resolution_agent import ResolutionAgent
from .divisor_agent import DivisorGraphAgent
from .presentation_agent import PresentationAgent
from .report_agent import ReportAgent
from .professional_html_formatter import ProfessionalHTMLFormatter

__all__ = [
    'FoliationAgent', 'ResolutionAgent', 'DivisorGraphAgent', 'PresentationAgent', 'ReportAgent',
    'ProfessionalHTMLFormatter'
]
