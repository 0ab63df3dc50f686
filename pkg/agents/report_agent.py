import os
import re
import sys
from typing import Any, Dict, List

from config import REPORT_DIR
from .professional_html_formatter import ProfessionalHTMLFormatter


class ReportAgent:
    """Human-readable report of one resolution run"""

    def __init__(self, reports_dir: str = REPORT_DIR):
        self.reports_dir = reports_dir
        self.professional_formatter = ProfessionalHTMLFormatter()

    def _table(self, headers: List[str], rows: List[List[Any]]) -> str:
        lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
        for row in rows:
            lines.append("| " + " | ".join(str(cell).replace("|", "\\|") for cell in row) + " |")
        return "\n".join(lines)

    def _input_section(self, data) -> str:
        rows = [[k, data.branches[k].b.render(), data.branches[k].d] for k in range(len(data.branches))]
        return (f"## Input\n\np = {data.p}, q = {data.q}, M = {data.order}, "
                f"G = `{data.G.render()}`\n\n" + self._table(["branch", "b", "d"], rows))

    def _steps_section(self, trace) -> str:
        rows = [[s.index, s.stage, s.phase or "-", s.kind, s.chart_id, s.center.describe(), s.component]
                for s in trace.steps]
        counts = ", ".join(f"{k}: {v}" for k, v in sorted(trace.branch_counts.items())) or "none"
        return (f"## Blow-ups\n\nCase {trace.case}; essential component {trace.essential_component} "
                f"in chart {trace.essential_chart}; branch blow-ups {counts}.\n\n"
                + self._table(["#", "stage", "phase", "kind", "chart", "center", "component"], rows))

    def _shapes_section(self, shapes) -> str:
        one, two = shapes.step_one, shapes.step_two
        rows = [
            ["end of stage I", one["chart"],
             f"a={one['a']}, b={one['b']}, m={one['m']}, n={one['n']}, M={one['M']}, N={one['N']}"],
            ["end of stage II", two["chart"], f"m={two['m_pq']}, n={two['n_pq']}, ratio={two['ratio']}"],
        ]
        return (f"## Shapes\n\nP = {shapes.P}, Q = {shapes.Q}\n\n"
                + self._table(["checkpoint", "chart", "data"], rows))

    def _singular_section(self, trace) -> str:
        rows = []
        for chart_id, entries in sorted(trace.singular.items(), key=lambda kv: int(kv[0][1:])):
            for entry in entries:
                verdict = entry["verdict"]
                rows.append([chart_id, entry["component"]["description"],
                             "PASS" if verdict["simple"] else "FAIL", verdict["reason"]])
        if not rows:
            return "## Singular locus\n\nNo singular components in the final charts."
        return "## Singular locus\n\n" + self._table(["chart", "component", "simple", "reason"], rows)

    def _divisor_section(self, divisor) -> str:
        rows = []
        for node in divisor.nodes():
            data = divisor.graph.nodes[node]
            rows.append([node, data["family"], data.get("role", "-"), data.get("label") or "-",
                         data.get("tag", "")])
        edges = "\n".join(f"- {u} -- {v}" for u, v in divisor.edges())
        return ("## Exceptional divisor\n\n" + self._table(["component", "family", "role", "label", "tag"], rows)
                + f"\n\n### Intersections\n\n{edges}")

    def _pi1_section(self, pi1) -> str:
        return f"## Fundamental group\n\n```text\n{pi1.render()}\n```"

    def generate_report(self, all_data: Dict[str, Any]) -> str:
        """Markdown text of the report"""
        name = all_data.get('name', 'input')
        sections = [f"# Resolution report - {name}", "[TOC]"]
        if all_data.get('verdict_table'):
            sections.append(f"## Checks\n\n```text\n{all_data['verdict_table']}\n```")
        trace = all_data.get('trace')
        if trace is None:
            sections.append("No resolution was produced for this input.")
            return "\n\n".join(sections) + "\n"
        sections.append(self._input_section(trace.input))
        sections.append(self._steps_section(trace))
        if all_data.get('shapes') is not None:
            sections.append(self._shapes_section(all_data['shapes']))
        sections.append(self._singular_section(trace))
        if all_data.get('divisor') is not None:
            sections.append(self._divisor_section(all_data['divisor']))
        if all_data.get('pi1') is not None:
            sections.append(self._pi1_section(all_data['pi1']))
        return "\n\n".join(sections) + "\n"

    def save_html_report(self, report_content: str, name: str) -> str:
        """Save the markdown report as a standalone HTML page"""
        os.makedirs(self.reports_dir, exist_ok=True)
        safe_name = re.sub(r'[^a-zA-Z0-9_-]', '_', name) or 'input'
        filepath = os.path.join(self.reports_dir, f"{safe_name}_resolution.html")
        body = self.professional_formatter.convert_markdown_to_html(report_content)
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(self.professional_formatter.create_professional_template(body, name))
        print(f"   📄 HTML report saved: {filepath}", file=sys.stderr)
        return filepath
