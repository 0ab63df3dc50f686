"""Reads the JSON input document describing one cuspidal foliation.

Document shape::

    {
      "p": 2, "q": 3,
      "M": 4,                                  optional, default lcm(4, delta)
      "branches": [{"b": 1, "d": 2}],
      "G": [[1, 0, "1/2"]],                    optional, terms Psi^i z^j
      "n1": 0, "n2": 0                         optional
    }

A scalar is an integer, a rational string such as "-3/2", a list of rational
coefficients on 1, zeta, zeta^2, ... or {"zeta": k, "coeff": c} for c*zeta^k,
with zeta a primitive M-th root of unity.
"""
import json
import logging
import os
from fractions import Fraction
from math import gcd
from typing import Any, Optional

from algebra.cyclotomic import CycloScalar, default_field_order
from algebra.polynomial import MultiPoly
from errors import ValidationError
from geometry.foliation import Branch, CuspidalInput, ensure_admissible

logger = logging.getLogger(__name__)

G_VARIABLES = ("Psi", "z")


def _fail(field: str, message: str):
    raise ValidationError(message, field=field)


def _integer(data: dict, key: str, field: str, default: Optional[int] = None) -> int:
    if key not in data:
        if default is None:
            _fail(field, "missing required field")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(field, f"expected an integer, got {value!r}")
    return value


def _rational(value: Any, field: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        _fail(field, f"expected an exact rational, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        _fail(field, f"not a rational number: {value!r}")


def parse_scalar(value: Any, order: int, field: str) -> CycloScalar:
    if isinstance(value, list):
        if len(value) > order:
            _fail(field, f"{len(value)} coefficients exceed the field order {order}")
        return CycloScalar(order, [_rational(c, f"{field}[{i}]") for i, c in enumerate(value)])
    if isinstance(value, dict):
        power = _integer(value, "zeta", f"{field}.zeta")
        coeff = _rational(value.get("coeff", 1), f"{field}.coeff")
        return CycloScalar.zeta(order, power) * coeff
    return CycloScalar.rational(order, _rational(value, field))


def parse_g(terms: Any, order: int, truncate: Optional[int] = None) -> MultiPoly:
    if not isinstance(terms, list):
        _fail("G", "expected a list of [i, j, coefficient] terms")
    collected = {}
    for k, term in enumerate(terms):
        field = f"G[{k}]"
        if not isinstance(term, list) or len(term) != 3:
            _fail(field, "expected [i, j, coefficient]")
        i, j = term[0], term[1]
        if any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in (i, j)):
            _fail(field, "exponents must be nonnegative integers")
        if truncate is not None and i + j > truncate:
            continue
        coeff = parse_scalar(term[2], order, f"{field}[2]")
        collected[(i, j)] = collected[(i, j)] + coeff if (i, j) in collected else coeff
    return MultiPoly(G_VARIABLES, order, collected)


def input_from_json(data: Any, field_order: Optional[int] = None, truncate: Optional[int] = None) -> CuspidalInput:
    """Build the input record without the admissibility check"""
    if not isinstance(data, dict):
        _fail("<document>", "expected a JSON object")
    p = _integer(data, "p", "p")
    q = _integer(data, "q", "q")
    delta = gcd(p, q) or 1
    order = field_order or _integer(data, "M", "M", default=default_field_order(delta))
    if order < 1:
        _fail("M", "field order must be positive")
    branches_raw = data.get("branches")
    if not isinstance(branches_raw, list):
        _fail("branches", "expected a list of {b, d} objects")
    branches = []
    for k, entry in enumerate(branches_raw):
        field = f"branches[{k}]"
        if not isinstance(entry, dict) or "b" not in entry:
            _fail(field, "expected an object with fields b and d")
        branches.append(Branch(b=parse_scalar(entry["b"], order, f"{field}.b"),
                               d=_integer(entry, "d", f"{field}.d")))
    G = parse_g(data.get("G", []), order, truncate)
    return CuspidalInput(p=p, q=q, branches=tuple(branches), G=G, order=order,
                         n1=_integer(data, "n1", "n1", default=0), n2=_integer(data, "n2", "n2", default=0))


def read_document(path: str) -> Any:
    safe_path = os.path.abspath(path)
    try:
        with open(safe_path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ValidationError(f"input file not found: {path}", field="<path>")
    except json.JSONDecodeError as e:
        raise ValidationError(f"line {e.lineno} column {e.colno}: {e.msg}", field="<document>")


def parse_input(path: str, field_order: Optional[int] = None, truncate: Optional[int] = None,
                validate: bool = True) -> CuspidalInput:
    data = input_from_json(read_document(path), field_order, truncate)
    if validate:
        ensure_admissible(data)
    logger.info("loaded input %s: p=%d q=%d with %d branch(es), M=%d", path, data.p, data.q,
                len(data.branches), data.order)
    return data
