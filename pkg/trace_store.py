"""JSON persistence of resolution traces and the replay check that reads them back"""
import json
import logging
import os
from typing import Any, Dict, List, Optional

from algebra.forms import pullback
from config import SCHEMA_VERSION
from diagram_generator import DivisorDiagramGenerator
from errors import InvariantViolation, ValidationError
from geometry.charts import Chart, strict_transform
from geometry.divisor import DivisorGraph
from geometry.foliation import derive_params
from geometry.presentation import Pi1Report
from geometry.resolution import BlowupStep, Component, ResolutionTrace
from input_loader import input_from_json

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("input", "derived", "steps", "components", "charts", "essential_component")


def dumps(document: Dict[str, Any]) -> str:
    """Byte-stable JSON text: sorted keys, fixed indentation, trailing newline"""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def trace_document(trace: ResolutionTrace, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    document = {"schema": SCHEMA_VERSION, "trace": trace.to_json()}
    document.update(extra or {})
    return document


def emit_outputs(trace: ResolutionTrace, divisor: Optional[DivisorGraph] = None, pi1: Optional[Pi1Report] = None,
                 fmt: str = "json", extra: Optional[Dict[str, Any]] = None) -> str:
    """Serialize the run artifacts as "json" (trace document) or "dot" (dual graph)"""
    if fmt == "dot":
        if divisor is None:
            raise ValueError("DOT output needs a divisor graph")
        return DivisorDiagramGenerator().to_dot(divisor)
    if fmt != "json":
        raise ValueError(f"unknown output format {fmt!r}")
    sections = dict(extra or {})
    if divisor is not None:
        sections["divisor"] = divisor.to_json()
    if pi1 is not None:
        sections["pi1"] = pi1.to_json()
    return dumps(trace_document(trace, sections))


def save_trace(trace: ResolutionTrace, path: str, extra: Optional[Dict[str, Any]] = None) -> str:
    safe_path = os.path.abspath(path)
    if not safe_path.endswith(".json"):
        raise ValueError("Invalid file type")
    directory = os.path.dirname(safe_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(safe_path, "w", encoding="utf-8") as handle:
        handle.write(dumps(trace_document(trace, extra)))
    logger.info("trace written to %s", safe_path)
    return safe_path


def _validate(document: Any) -> Dict[str, Any]:
    if not isinstance(document, dict) or "schema" not in document or "trace" not in document:
        raise ValidationError("Invalid data format", field="<document>")
    if document["schema"] != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema {document['schema']!r}, expected {SCHEMA_VERSION}",
                              field="schema")
    body = document["trace"]
    if not isinstance(body, dict):
        raise ValidationError("Invalid data format", field="trace")
    for key in REQUIRED_KEYS:
        if key not in body:
            raise ValidationError("missing required field", field=f"trace.{key}")
    return body


def trace_from_json(document: Any) -> ResolutionTrace:
    body = _validate(document)
    data = input_from_json(body["input"])
    order = data.order
    charts = [Chart.from_json(c, order) for c in body["charts"]]
    return ResolutionTrace(
        input=data,
        params=derive_params(data),
        steps=[BlowupStep.from_json(s, order) for s in body["steps"]],
        charts={chart.id: chart for chart in charts},
        components={c["id"]: Component.from_json(c) for c in body["components"]},
        step_one_chart=body.get("step_one_chart"),
        essential_chart=body.get("essential_chart"),
        essential_component=body["essential_component"],
        case=body.get("case", ""),
        branch_counts=dict(body.get("branch_counts", {})),
        singular={k: list(v) for k, v in body.get("singular_locus", {}).items()},
        invariants=dict(body.get("invariants", {})),
        guard=body.get("guard", 0),
    )


def load_trace(path: str) -> ResolutionTrace:
    safe_path = os.path.abspath(path)
    if not safe_path.endswith(".json"):
        raise ValidationError("Invalid file type", field="<path>")
    try:
        with open(safe_path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError:
        raise ValidationError(f"trace file not found: {path}", field="<path>")
    except json.JSONDecodeError as e:
        raise ValidationError(f"line {e.lineno} column {e.colno}: {e.msg}", field="<document>")
    return trace_from_json(document)


def replay_chart(trace: ResolutionTrace, chart_id: str) -> List[str]:
    """Recompose the chart map and re-derive the strict transforms from the parent chart"""
    chart = trace.charts[chart_id]
    if chart.parent is None:
        return []
    parent = trace.charts[chart.parent]
    problems = []
    if parent.to_origin.compose(chart.to_parent) != chart.to_origin:
        problems.append(f"{chart_id}: composed map differs from the stored map to the origin")
    _, form = strict_transform(pullback(parent.form, chart.to_parent), chart)
    if form != chart.form:
        problems.append(f"{chart_id}: re-derived form differs")
    _, separatrix = strict_transform(pullback(parent.separatrix, chart.to_parent), chart)
    if separatrix != chart.separatrix:
        problems.append(f"{chart_id}: re-derived separatrix differs")
    return problems


def replay(trace: ResolutionTrace, chart_ids: Optional[List[str]] = None) -> int:
    """Replay the given charts (all by default); returns how many were checked"""
    ids = chart_ids if chart_ids is not None else list(trace.charts)
    problems = [p for chart_id in ids for p in replay_chart(trace, chart_id)]
    if problems:
        for problem in problems:
            logger.error("replay mismatch: %s", problem)
        raise InvariantViolation(f"replay failed for {len(problems)} check(s)", residual=problems[0])
    logger.info("replayed %d chart(s)", len(ids))
    return len(ids)
