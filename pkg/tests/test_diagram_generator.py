import pytest

from diagram_generator import DivisorDiagramGenerator
from geometry.divisor import build_graph


@pytest.fixture(scope="module")
def divisor(minimal_trace):
    return build_graph(minimal_trace)


def test_dot_lists_every_node_and_edge(divisor):
    dot = DivisorDiagramGenerator().to_dot(divisor, title="divisor_minimal")
    assert dot.startswith('graph "divisor_minimal" {')
    node_lines = [line for line in dot.splitlines() if "[label=" in line]
    edge_lines = [line for line in dot.splitlines() if " -- " in line]
    assert len(node_lines) == len(divisor.nodes())
    assert len(edge_lines) == len(divisor.edges())


def test_essential_and_separatrix_styling(divisor):
    dot = DivisorDiagramGenerator().to_dot(divisor)
    essential = next(line for line in dot.splitlines() if line.strip().startswith('"D3_2" ['))
    assert "peripheries=2" in essential
    assert 'shape=box' in next(line for line in dot.splitlines() if line.strip().startswith('"S" ['))


def test_write_dot(tmp_path, divisor):
    generator = DivisorDiagramGenerator(diagrams_dir=str(tmp_path / "diagrams"))
    path = generator.write_dot(divisor, "minimal")
    assert path.endswith("divisor_minimal.dot")
    with open(path, encoding="utf-8") as handle:
        assert handle.read() == generator.to_dot(divisor, title="divisor_minimal")
    explicit = generator.write_dot(divisor, "minimal", str(tmp_path / "out" / "graph.dot"))
    assert explicit.endswith("graph.dot")


def test_unsafe_ids_are_sanitized(tmp_path):
    generator = DivisorDiagramGenerator(diagrams_dir=str(tmp_path))
    assert generator._safe_path("../../etc", ".dot").endswith("divisor_etc.dot")
