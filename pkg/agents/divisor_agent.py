"""Dual graph of the exceptional divisor"""
import sys
from typing import Optional

from diagram_generator import DivisorDiagramGenerator
from geometry.divisor import DivisorGraph, build_graph, special_components
from geometry.resolution import ResolutionTrace


class DivisorGraphAgent:

    def __init__(self, diagram_generator: Optional[DivisorDiagramGenerator] = None):
        self.diagram_generator = diagram_generator or DivisorDiagramGenerator()

    def build(self, trace: ResolutionTrace) -> DivisorGraph:
        divisor = build_graph(trace)
        special_components(divisor)
        print(f"   🕸️ Divisor graph: {divisor.graph.number_of_nodes()} nodes, essential {divisor.essential}, "
              f"special {divisor.special or 'none'}", file=sys.stderr)
        return divisor

    def dot(self, divisor: DivisorGraph, title: str = "divisor") -> str:
        return self.diagram_generator.to_dot(divisor, title)

    def save_dot(self, divisor: DivisorGraph, diagram_id: str, path: Optional[str] = None) -> str:
        path = self.diagram_generator.write_dot(divisor, diagram_id, path)
        print(f"   🗺️ DOT graph saved: {path}", file=sys.stderr)
        return path
