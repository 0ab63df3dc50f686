import random
from math import gcd
from functools import reduce

import pytest

from algebra.forms import exterior_derivative, integrability_check
from algebra.polynomial import MultiPoly
from errors import ValidationError
from geometry.foliation import (
    CHART_VARIABLES, CLAUSE_DISTINCT, CLAUSE_HYPERPLANES, CLAUSE_PQ, WARNING_FIRST_INTEGRAL,
    admissibility_check, build_omega, correction_pairing, derive_params, generalized_surface_criterion,
    hopf_pairing, psi_polynomial, quasi_homogeneity_residual, separatrix,
)
from input_loader import input_from_json

from conftest import make_input


def test_derived_parameters():
    params = derive_params(make_input(2, 3, [4, 6]))
    assert (params.r, params.d, params.d_prime) == (2, 10, (2, 3))
    assert params.in_sigma
    assert derive_params(make_input(2, 2, [2])).delta == 2
    first = derive_params(make_input(2, 3, [1, 1]))
    assert first.first_integral_case
    assert not first.in_sigma


def test_rejects_small_exponents():
    report = admissibility_check(make_input(1, 3, [2]))
    assert not report.accepted
    assert CLAUSE_PQ in report.violations


def test_rejects_coinciding_roots():
    data = input_from_json({"p": 2, "q": 4, "branches": [{"b": 1, "d": 2}, {"b": -1, "d": 1}]})
    report = admissibility_check(data)
    assert CLAUSE_DISTINCT in report.violations
    with pytest.raises(ValidationError) as excinfo:
        derive_params(data)
    assert CLAUSE_DISTINCT in excinfo.value.clauses


def test_first_integral_case_is_a_warning():
    report = admissibility_check(make_input(2, 3, [1, 1]))
    assert report.accepted
    assert WARNING_FIRST_INTEGRAL in report.warnings


def test_hyperplane_exponents_are_rejected():
    data = input_from_json({"p": 2, "q": 3, "branches": [{"b": 1, "d": 2}], "n1": 1})
    assert CLAUSE_HYPERPLANES in admissibility_check(data).violations


def test_exact_form_when_g_vanishes(minimal_input):
    S, omega = build_omega(minimal_input)
    assert omega == exterior_derivative(S)
    assert S == separatrix(minimal_input)


def test_constant_g_expansion():
    data = make_input(2, 2, [2], G=[[0, 0, 3]])
    S, omega = build_omega(data)
    order = data.order
    x, y, z = (MultiPoly.variable(CHART_VARIABLES, order, v) for v in CHART_VARIABLES)
    psi = y ** 2 - x ** 2
    assert psi_polynomial(data) == psi
    d_psi = exterior_derivative(psi)
    dz = exterior_derivative(z)
    expected = d_psi.scale(psi * 2 + z * 6) + dz.scale(z * 2 - psi * 6)
    assert omega == expected


def test_generalized_surface_criterion():
    g_vars = ("Psi", "z")
    constant = MultiPoly(g_vars, 4, {(0, 0): 1})
    zero = MultiPoly(g_vars, 4, {})
    assert generalized_surface_criterion(constant, 2) == "satisfied"
    assert generalized_surface_criterion(constant, 3) == "inconclusive"
    assert generalized_surface_criterion(zero, 7) == "satisfied"


def test_hopf_identity_small_case():
    X, residual = hopf_pairing(make_input(2, 2, [2]))
    assert residual.is_zero()
    assert X.components[2] == MultiPoly.variable(CHART_VARIABLES, 4, "z") * 4


def test_correction_term_is_killed_by_the_radial_field():
    assert correction_pairing(make_input(2, 3, [2], G=[[1, 0, 1]])).is_zero()


def _random_input(rng):
    p, q = rng.randint(2, 5), rng.randint(2, 5)
    l = rng.randint(1, 3)
    ds = [rng.randint(1, 3) for _ in range(l)]
    r = reduce(gcd, ds)
    G = [[rng.randint(0, 2), rng.randint(0, 2), rng.randint(-3, 3)] for _ in range(rng.randint(0, 3))]
    G = [t for t in G if t[0] + t[1] <= 4]
    return make_input(p, q, ds, G=G), r


def test_randomized_integrability_and_hopf_identity():
    rng = random.Random(2024)
    for _ in range(6):
        data, _ = _random_input(rng)
        _, omega = build_omega(data)
        assert integrability_check(omega)
        assert hopf_pairing(data)[1].is_zero()


@pytest.mark.slow
def test_randomized_battery():
    rng = random.Random(11)
    for _ in range(25):
        data, r = _random_input(rng)
        params = derive_params(data)
        assert all(r * dp == br.d for dp, br in zip(params.d_prime, data.branches))
        assert reduce(gcd, params.d_prime) == 1
        _, omega = build_omega(data)
        assert integrability_check(omega)
        assert hopf_pairing(data)[1].is_zero()
        assert quasi_homogeneity_residual(data).is_zero()


def test_quasi_homogeneity_with_odd_weight():
    assert quasi_homogeneity_residual(make_input(3, 5, [1])).is_zero()
    assert quasi_homogeneity_residual(make_input(2, 3, [2])).is_zero()
