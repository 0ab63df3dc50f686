import json

import pytest

from config import SCHEMA_VERSION
from errors import InvariantViolation, ValidationError
from geometry.divisor import build_graph
from geometry.presentation import fundamental_group
from trace_store import (
    dumps, emit_outputs, load_trace, replay, replay_chart, save_trace, trace_document, trace_from_json,
)


def test_dumps_is_deterministic(minimal_trace):
    first = dumps(trace_document(minimal_trace))
    second = dumps(trace_document(minimal_trace))
    assert first == second
    assert first.endswith("\n")
    assert json.loads(first)["schema"] == SCHEMA_VERSION


def test_save_and_load(tmp_path, minimal_trace):
    path = save_trace(minimal_trace, str(tmp_path / "trace.json"), {"note": "cusp"})
    loaded = load_trace(path)
    assert loaded.essential_component == minimal_trace.essential_component
    assert set(loaded.charts) == set(minimal_trace.charts)
    assert [s.component for s in loaded.steps] == [s.component for s in minimal_trace.steps]
    assert dumps(trace_document(loaded)) == dumps(trace_document(minimal_trace))


def test_save_requires_json_suffix(tmp_path, minimal_trace):
    with pytest.raises(ValueError):
        save_trace(minimal_trace, str(tmp_path / "trace.txt"))


def test_replay_every_chart(minimal_trace):
    assert replay(minimal_trace) == len(minimal_trace.charts)
    assert replay_chart(minimal_trace, "c0") == []


def test_replay_after_reload(tmp_path, minimal_trace):
    loaded = load_trace(save_trace(minimal_trace, str(tmp_path / "trace.json")))
    assert replay(loaded, ["c1", "c2"]) == 2


def test_replay_detects_tampering(tmp_path, minimal_trace):
    loaded = load_trace(save_trace(minimal_trace, str(tmp_path / "trace.json")))
    loaded.charts["c1"].separatrix = loaded.charts["c1"].separatrix * 2
    with pytest.raises(InvariantViolation) as excinfo:
        replay(loaded)
    assert "c1" in excinfo.value.residual


def test_schema_is_checked(minimal_trace):
    document = trace_document(minimal_trace)
    document["schema"] = "foliation-trace/0"
    with pytest.raises(ValidationError):
        trace_from_json(document)


def test_missing_trace_key(minimal_trace):
    document = json.loads(dumps(trace_document(minimal_trace)))
    del document["trace"]["charts"]
    with pytest.raises(ValidationError) as excinfo:
        trace_from_json(document)
    assert excinfo.value.field == "trace.charts"


def test_load_rejects_bad_files(tmp_path):
    with pytest.raises(ValidationError):
        load_trace(str(tmp_path / "trace.yaml"))
    with pytest.raises(ValidationError):
        load_trace(str(tmp_path / "absent.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{\"schema\": ", encoding="utf-8")
    with pytest.raises(ValidationError) as excinfo:
        load_trace(str(broken))
    assert excinfo.value.field == "<document>"


def test_emit_outputs_json_and_dot(minimal_trace):
    divisor = build_graph(minimal_trace)
    pi1 = fundamental_group(minimal_trace)
    text = emit_outputs(minimal_trace, divisor, pi1, extra={"truncate": None})
    assert text == emit_outputs(minimal_trace, divisor, pi1, extra={"truncate": None})
    document = json.loads(text)
    assert document["divisor"]["essential"] == "D3_2"
    assert document["pi1"]["essential"] == "D3_2"
    assert document["truncate"] is None
    dot = emit_outputs(minimal_trace, divisor, fmt="dot")
    assert dot.count("[label=") == len(divisor.nodes())


def test_emit_outputs_rejects_unknown_formats(minimal_trace):
    with pytest.raises(ValueError):
        emit_outputs(minimal_trace, fmt="yaml")
    with pytest.raises(ValueError):
        emit_outputs(minimal_trace, fmt="dot")
