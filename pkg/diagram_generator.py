from typing import Optional
import logging
import os
import re

from config import DIAGRAM_DIR
from geometry.divisor import SEPARATRIX_NODE, DivisorGraph


def _quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


class DivisorDiagramGenerator:
    """DOT rendering of the exceptional divisor dual graph"""

    def __init__(self, diagrams_dir: str = DIAGRAM_DIR):
        self.diagrams_dir = diagrams_dir

    def to_dot(self, divisor: DivisorGraph, title: str = "divisor") -> str:
        """Nodes in creating-step order, edges annotated with their intersection curve"""
        lines = [f"graph {_quote(title)} {{", "  node [shape=ellipse];"]
        for node in divisor.nodes():
            data = divisor.graph.nodes[node]
            if node == SEPARATRIX_NODE:
                lines.append(f"  {_quote(node)} [label={_quote('S (strict transform)')}, shape=box, "
                             f"family={_quote(data['family'])}, step={data['step']}];")
                continue
            label = data.get("label") or "unclassified"
            text = f"{node}\\n{label}"
            if data.get("tag"):
                text += f"\\n{data['tag']}"
            attrs = [f"label={_quote(text)}", f"family={_quote(data['family'])}", f"step={data['step']}"]
            if node == divisor.essential:
                attrs.append("peripheries=2")
            lines.append(f"  {_quote(node)} [{', '.join(attrs)}];")
        for u, v in divisor.edges():
            lines.append(f"  {_quote(u)} -- {_quote(v)} [curve={_quote(divisor.graph.edges[u, v]['curve'])}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _safe_path(self, diagram_id: str, suffix: str) -> str:
        safe_id = re.sub(r'[^a-zA-Z0-9_-]', '', str(diagram_id))
        if not safe_id or len(safe_id) > 50:
            safe_id = 'default'
        path = os.path.abspath(os.path.join(self.diagrams_dir, f"divisor_{safe_id}{suffix}"))
        if not path.startswith(os.path.abspath(self.diagrams_dir)):
            raise ValueError("Path traversal attempt detected")
        return path

    def write_dot(self, divisor: DivisorGraph, diagram_id: str, path: Optional[str] = None) -> str:
        if path is None:
            os.makedirs(self.diagrams_dir, exist_ok=True)
            path = self._safe_path(diagram_id, ".dot")
        else:
            directory = os.path.dirname(os.path.abspath(path))
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as file:
            file.write(self.to_dot(divisor, title=f"divisor_{diagram_id}"))
        logging.info(f"DOT graph written to {path}")
        return path
