"""Fundamental group presentations of the essential component"""
import sys

from geometry.presentation import Pi1Report, fundamental_group
from geometry.resolution import ResolutionTrace


class PresentationAgent:

    def compute(self, trace: ResolutionTrace) -> Pi1Report:
        report = fundamental_group(trace)
        marker = "✅" if report.agree else "⚠️"
        print(f"   {marker} pi1 abelianization: simplified {report.simplified_abelian.render()}, "
              f"raw {report.raw_abelian.render()}", file=sys.stderr)
        return report
