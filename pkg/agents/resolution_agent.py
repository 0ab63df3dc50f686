"""Runs the resolution and the shape checks on its end-of-stage charts"""
import sys
from typing import Optional, Tuple

from geometry.foliation import CuspidalInput
from geometry.resolution import STAGE_I, STAGE_II, STAGE_III, ResolutionTrace, resolve
from geometry.shapes import ShapeReport, verify_shapes


class ResolutionAgent:

    def __init__(self, guard: Optional[int] = None):
        self.guard = guard

    def run(self, data: CuspidalInput) -> Tuple[ResolutionTrace, ShapeReport]:
        print(f"   🧮 Resolving p={data.p} q={data.q} with {len(data.branches)} branch(es)", file=sys.stderr)
        trace = resolve(data, guard=self.guard)
        counts = ", ".join(f"{stage}: {trace.stage_count(stage)}" for stage in (STAGE_I, STAGE_II, STAGE_III))
        print(f"   🔁 Blow-ups {counts}; case {trace.case}", file=sys.stderr)
        shapes = verify_shapes(trace)
        print(f"   📐 Shapes verified: P={shapes.P}, Q={shapes.Q}", file=sys.stderr)
        found = sum(len(entries) for entries in trace.singular.values())
        print(f"   ✅ All {found} singular component(s) are simple", file=sys.stderr)
        return trace, shapes
