import pytest

from agents import DivisorGraphAgent, FoliationAgent, PresentationAgent, ReportAgent, ProfessionalHTMLFormatter
from geometry.shapes import verify_shapes


@pytest.fixture(scope="module")
def all_data(minimal_trace):
    return {
        'name': 'minimal',
        'trace': minimal_trace,
        'shapes': verify_shapes(minimal_trace),
        'divisor': DivisorGraphAgent().build(minimal_trace),
        'pi1': PresentationAgent().compute(minimal_trace),
        'verdict_table': FoliationAgent().verdict_table(FoliationAgent().check(minimal_trace.input)),
    }


def test_report_has_every_section(all_data):
    text = ReportAgent().generate_report(all_data)
    for heading in ("## Checks", "## Input", "## Blow-ups", "## Shapes", "## Singular locus",
                    "## Exceptional divisor", "## Fundamental group"):
        assert heading in text
    assert "P = 4, Q = 4" in text
    assert "α² = β²" in text


def test_report_without_trace():
    text = ReportAgent().generate_report({'name': 'p_one', 'verdict_table': 'admissible  no'})
    assert "No resolution was produced" in text


def test_html_report_file(tmp_path, all_data, minimal_trace):
    agent = ReportAgent(reports_dir=str(tmp_path))
    path = agent.save_html_report(agent.generate_report(all_data), "minimal case")
    assert path.endswith("minimal_case_resolution.html")
    page = open(path, encoding="utf-8").read()
    assert page.startswith("<!DOCTYPE html>")
    assert 'class="trace-table"' in page
    if minimal_trace.singular:
        assert '<span class="verdict-PASS">PASS</span>' in page


def test_formatter_can_be_reused():
    formatter = ProfessionalHTMLFormatter()
    first = formatter.convert_markdown_to_html("# One\n\n| a |\n|---|\n| FAIL |")
    second = formatter.convert_markdown_to_html("# One\n\n| a |\n|---|\n| FAIL |")
    assert first == second
    assert 'class="main-header"' in first
    assert 'verdict-FAIL' in first
