import json
import os

import pytest

from algebra.cyclotomic import CycloScalar
from algebra.polynomial import MultiPoly
from geometry.foliation import CHART_VARIABLES
from geometry.resolution import resolve
from input_loader import input_from_json

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def load_fixture(name: str):
    with open(fixture_path(name), encoding="utf-8") as handle:
        return json.load(handle)


def make_input(p, q, ds, bs=None, G=None, order=None):
    """Input with branch coefficients b_i = 1, 2, 3, ... unless given"""
    bs = bs if bs is not None else list(range(1, len(ds) + 1))
    document = {"p": p, "q": q, "branches": [{"b": b, "d": d} for b, d in zip(bs, ds)], "G": G or []}
    return input_from_json(document, field_order=order)


@pytest.fixture
def chart_poly():
    """Build chart polynomials in (x, y, z) over Q(i)"""
    def build(terms, order=4):
        return MultiPoly(CHART_VARIABLES, order, terms)
    return build


@pytest.fixture
def zeta4():
    return CycloScalar.zeta(4)


@pytest.fixture
def minimal_input():
    return input_from_json(load_fixture("minimal.json"))


@pytest.fixture(scope="session")
def minimal_trace():
    return resolve(input_from_json(load_fixture("minimal.json")))
