"""Pre-normal form of a quasi-homogeneous cuspidal foliation and its first checks"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

from algebra.continued_fraction import CFDigits, cf_expand
from algebra.cyclotomic import CycloScalar, lcm
from algebra.forms import OneForm, VectorField, exterior_derivative
from algebra.polynomial import MultiPoly
from algebra.valuation import surface_threshold, weighted_valuation
from errors import ValidationError

logger = logging.getLogger(__name__)

CHART_VARIABLES = ("x", "y", "z")

CLAUSE_PQ = "p,q ≥ 2"
CLAUSE_NONZERO = "aᵢ ≠ 0"
CLAUSE_DISTINCT = "aᵢ ≠ a_j"
CLAUSE_BRANCHES = "branch list nonempty"
CLAUSE_MULTIPLICITY = "dᵢ ≥ 1"
CLAUSE_FIELD = "M multiple of lcm(4, δ)"
CLAUSE_HYPERPLANES = "coordinate hyperplanes are not separatrices"
CLAUSE_G_VARIABLES = "G written in (Psi, z)"
WARNING_FIRST_INTEGRAL = "holomorphic first integral case"


@dataclass(frozen=True)
class Branch:
    b: CycloScalar
    d: int


@dataclass(frozen=True)
class CuspidalInput:
    p: int
    q: int
    branches: Tuple[Branch, ...]
    G: MultiPoly
    order: int
    n1: int = 0
    n2: int = 0

    @property
    def delta(self) -> int:
        return gcd(self.p, self.q)

    def a_values(self) -> List[CycloScalar]:
        return [branch.b ** self.delta for branch in self.branches]

    def to_json(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "M": self.order,
            "branches": [{"b": br.b.to_json(), "d": br.d} for br in self.branches],
            "G": [[e[0], e[1], c.to_json()] for e, c in self.G.sorted_terms()],
            "n1": self.n1,
            "n2": self.n2,
        }


@dataclass(frozen=True)
class DerivedParams:
    delta: int
    d: int
    r: int
    d_prime: Tuple[int, ...]
    l: int
    cf: CFDigits
    first_integral_case: bool
    in_sigma: bool
    a: Tuple[CycloScalar, ...]

    pq: int = 0

    @property
    def pqd(self) -> int:
        return self.pq * self.d

    def to_json(self) -> Dict[str, Any]:
        return {
            "delta": self.delta,
            "d": self.d,
            "r": self.r,
            "d_prime": list(self.d_prime),
            "l": self.l,
            "cf": self.cf.to_json(),
            "first_integral_case": self.first_integral_case,
            "in_sigma": self.in_sigma,
            "a": [value.to_json() for value in self.a],
        }


@dataclass
class ValidationReport:
    accepted: bool
    violations: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {"accepted": self.accepted, "violations": list(self.violations), "warnings": list(self.warnings)}


def admissibility_check(data: CuspidalInput) -> ValidationReport:
    """Check the admissible-type conditions clause by clause"""
    violations: List[str] = []
    warnings: List[str] = []
    if data.p < 2 or data.q < 2:
        violations.append(CLAUSE_PQ)
    if not data.branches:
        violations.append(CLAUSE_BRANCHES)
    if any(branch.d < 1 for branch in data.branches):
        violations.append(CLAUSE_MULTIPLICITY)
    if data.n1 or data.n2:
        violations.append(CLAUSE_HYPERPLANES)
    if data.G.variables != ("Psi", "z"):
        violations.append(CLAUSE_G_VARIABLES)
    if data.order % lcm(4, data.delta):
        violations.append(CLAUSE_FIELD)
    if data.branches:
        a_values = data.a_values()
        if any(value.is_zero() for value in a_values):
            violations.append(CLAUSE_NONZERO)
        seen = set()
        for value in a_values:
            if value in seen:
                violations.append(CLAUSE_DISTINCT)
                break
            seen.add(value)
    if data.branches and all(branch.d == 1 for branch in data.branches):
        warnings.append(WARNING_FIRST_INTEGRAL)
    report = ValidationReport(accepted=not violations, violations=violations, warnings=warnings)
    if violations:
        logger.info("admissibility rejected: %s", "; ".join(violations))
    return report


def ensure_admissible(data: CuspidalInput) -> ValidationReport:
    report = admissibility_check(data)
    if not report.accepted:
        raise ValidationError("inadmissible input", clauses=report.violations)
    return report


def derive_params(data: CuspidalInput) -> DerivedParams:
    ensure_admissible(data)
    ds = [branch.d for branch in data.branches]
    r = reduce(gcd, ds)
    return DerivedParams(
        delta=data.delta,
        d=sum(ds),
        r=r,
        d_prime=tuple(x // r for x in ds),
        l=len(ds),
        cf=cf_expand(data.p, data.q),
        first_integral_case=all(x == 1 for x in ds),
        in_sigma=any(x > 1 for x in ds),
        a=tuple(data.a_values()),
        pq=data.p * data.q,
    )


def _chart_poly(data: CuspidalInput, value) -> MultiPoly:
    return MultiPoly.constant(CHART_VARIABLES, data.order, value)


def psi_polynomial(data: CuspidalInput, params: Optional[DerivedParams] = None) -> MultiPoly:
    """Psi = prod (y^p - a_i x^q)^(d_i') so that phi = Psi^r"""
    params = params or derive_params(data)
    x = MultiPoly.variable(CHART_VARIABLES, data.order, "x")
    y = MultiPoly.variable(CHART_VARIABLES, data.order, "y")
    psi = _chart_poly(data, 1)
    for a_i, exponent in zip(params.a, params.d_prime):
        psi = psi * (y ** data.p - x ** data.q * a_i) ** exponent
    return psi


def separatrix(data: CuspidalInput, params: Optional[DerivedParams] = None) -> MultiPoly:
    params = params or derive_params(data)
    z = MultiPoly.variable(CHART_VARIABLES, data.order, "z")
    return z ** 2 + psi_polynomial(data, params) ** params.r


def build_omega(data: CuspidalInput) -> Tuple[MultiPoly, OneForm]:
    """S = z^2 + phi and Omega = dS + G(Psi, z) (r z dPsi - 2 Psi dz)"""
    params = derive_params(data)
    psi = psi_polynomial(data, params)
    z = MultiPoly.variable(CHART_VARIABLES, data.order, "z")
    S = z ** 2 + psi ** params.r
    omega = exterior_derivative(S)
    if not data.G.is_zero():
        g = data.G.substitute({"Psi": psi, "z": z}, CHART_VARIABLES)
        correction = exterior_derivative(psi).scale(z * params.r) - exterior_derivative(z).scale(psi * 2)
        omega = omega + correction.scale(g)
    logger.debug("built Omega for p=%d q=%d d=%d r=%d", data.p, data.q, params.d, params.r)
    return S, omega


def generalized_surface_criterion(G: MultiPoly, r: int) -> str:
    """'satisfied' when nu_{2,r}(G) reaches (r-2)/gcd(2,r); the test is only sufficient"""
    if weighted_valuation(G, r) >= surface_threshold(r):
        return "satisfied"
    return "inconclusive"


def hopf_field(data: CuspidalInput, params: Optional[DerivedParams] = None) -> Tuple[VectorField, int]:
    """Quasi-radial field and the factor (1 or 2) used to keep its coefficients integral"""
    params = params or derive_params(data)
    pqd = data.p * data.q * params.d
    scale = 1 if pqd % 2 == 0 else 2
    order = data.order
    x = MultiPoly.variable(CHART_VARIABLES, order, "x")
    y = MultiPoly.variable(CHART_VARIABLES, order, "y")
    z = MultiPoly.variable(CHART_VARIABLES, order, "z")
    field_ = VectorField([x * (scale * data.p), y * (scale * data.q), z * Fraction(scale * pqd, 2)])
    return field_, scale


def hopf_pairing(data: CuspidalInput) -> Tuple[VectorField, MultiPoly]:
    """Contract Omega with the quasi-radial field; the residual must vanish"""
    params = derive_params(data)
    S, omega = build_omega(data)
    X, scale = hopf_field(data, params)
    pqd = data.p * data.q * params.d
    residual = omega.contract(X) - S * (scale * pqd)
    if not residual.is_zero():
        logger.error("Hopf identity residual is non-zero: %s", residual.render())
    return X, residual


def correction_pairing(data: CuspidalInput) -> MultiPoly:
    """(r z dPsi - 2 Psi dz) evaluated on the quasi-radial field"""
    params = derive_params(data)
    psi = psi_polynomial(data, params)
    z = MultiPoly.variable(CHART_VARIABLES, data.order, "z")
    correction = exterior_derivative(psi).scale(z * params.r) - exterior_derivative(z).scale(psi * 2)
    X, _ = hopf_field(data, params)
    return correction.contract(X)


def quasi_homogeneity_residual(data: CuspidalInput) -> MultiPoly:
    """S(t^p x, t^q y, t^(pqd/2) z) - t^(pqd) S, weights doubled when pqd is odd"""
    params = derive_params(data)
    S = separatrix(data, params)
    pqd = data.p * data.q * params.d
    scale = 1 if pqd % 2 == 0 else 2
    variables = CHART_VARIABLES + ("t",)
    order = data.order
    lifted = S.substitute({v: MultiPoly.variable(variables, order, v) for v in CHART_VARIABLES}, variables)
    weights = {"x": scale * data.p, "y": scale * data.q, "z": scale * pqd // 2}
    images = {v: MultiPoly.monomial(variables, order, tuple(1 if u == v else 0 for u in CHART_VARIABLES) + (w,))
              for v, w in weights.items()}
    scaled = S.substitute(images, variables)
    t_power = MultiPoly.monomial(variables, order, (0, 0, 0, scale * pqd))
    return scaled - lifted * t_power
