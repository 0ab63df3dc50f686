from fractions import Fraction

import pytest

from algebra.cyclotomic import CycloScalar
from errors import ValidationError
from geometry.foliation import CLAUSE_DISTINCT, CLAUSE_FIELD, CLAUSE_PQ
from input_loader import input_from_json, parse_g, parse_input, parse_scalar
from conftest import fixture_path


def test_minimal_document_is_accepted():
    data = parse_input(fixture_path("minimal.json"))
    assert (data.p, data.q) == (2, 3)
    assert data.order == 4
    assert [branch.d for branch in data.branches] == [2]
    assert data.G.is_zero()


def test_p_one_is_rejected_with_its_clause():
    with pytest.raises(ValidationError) as excinfo:
        parse_input(fixture_path("p_one.json"))
    assert CLAUSE_PQ in excinfo.value.clauses


def test_validation_can_be_deferred():
    data = parse_input(fixture_path("p_one.json"), validate=False)
    assert data.p == 1


def test_duplicate_roots_are_rejected():
    with pytest.raises(ValidationError) as excinfo:
        parse_input(fixture_path("duplicate_roots.json"))
    assert CLAUSE_DISTINCT in excinfo.value.clauses


def test_malformed_json_reports_position():
    with pytest.raises(ValidationError) as excinfo:
        parse_input(fixture_path("malformed.json"))
    assert excinfo.value.field == "<document>"
    assert "line 5 column 1" in str(excinfo.value)


def test_bad_field_is_named():
    with pytest.raises(ValidationError) as excinfo:
        parse_input(fixture_path("bad_field.json"))
    assert excinfo.value.field == "branches[0].d"


def test_missing_file(tmp_path):
    with pytest.raises(ValidationError) as excinfo:
        parse_input(str(tmp_path / "absent.json"))
    assert excinfo.value.field == "<path>"


def test_truncation_drops_high_degree_terms():
    full = parse_input(fixture_path("with_g.json"))
    truncated = parse_input(fixture_path("with_g.json"), truncate=2)
    assert len(full.G.terms) == 3
    assert set(truncated.G.terms) == {(2, 0), (0, 2)}
    assert truncated.G.terms[(2, 0)] == CycloScalar.rational(4, Fraction(1, 2))


def test_field_order_override():
    data = parse_input(fixture_path("minimal.json"), field_order=8)
    assert data.order == 8
    with pytest.raises(ValidationError) as excinfo:
        parse_input(fixture_path("minimal.json"), field_order=6)
    assert CLAUSE_FIELD in excinfo.value.clauses


@pytest.mark.parametrize("value,expected", [
    (3, CycloScalar.rational(4, 3)),
    ("-3/2", CycloScalar.rational(4, Fraction(-3, 2))),
    ([0, 1], CycloScalar.zeta(4)),
    ({"zeta": 2, "coeff": "1/2"}, CycloScalar.rational(4, Fraction(-1, 2))),
])
def test_scalar_forms(value, expected):
    assert parse_scalar(value, 4, "b") == expected


@pytest.mark.parametrize("value", [0.5, True, "x", [1, 2, 3, 4, 5]])
def test_inexact_scalars_are_rejected(value):
    with pytest.raises(ValidationError):
        parse_scalar(value, 4, "b")


def test_g_terms_must_be_triples():
    with pytest.raises(ValidationError) as excinfo:
        parse_g([[1, 2]], 4)
    assert excinfo.value.field == "G[0]"
    with pytest.raises(ValidationError):
        parse_g([[-1, 0, 1]], 4)


def test_repeated_g_terms_add_up():
    G = parse_g([[1, 1, 2], [1, 1, "1/2"]], 4)
    assert G.terms[(1, 1)] == CycloScalar.rational(4, Fraction(5, 2))


def test_non_object_document():
    with pytest.raises(ValidationError):
        input_from_json([1, 2, 3])
