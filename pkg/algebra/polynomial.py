"""Sparse multivariate polynomials over Q(zeta_M)"""
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra.cyclotomic import CycloScalar, as_fraction
from errors import ChartMismatch, ZeroFormError

Exponent = Tuple[int, ...]


class MultiPoly:
    """Polynomial in an ordered tuple of named variables.

    Terms map exponent vectors to non-zero CycloScalars; the object is treated
    as immutable once built.
    """

    __slots__ = ("variables", "order", "terms")

    def __init__(self, variables: Sequence[str], order: int, terms: Optional[Mapping[Exponent, object]] = None):
        self.variables = tuple(variables)
        self.order = order
        clean: Dict[Exponent, CycloScalar] = {}
        width = len(self.variables)
        for exps, coeff in (terms or {}).items():
            if len(exps) != width:
                raise ValueError(f"exponent {exps} does not match variables {self.variables}")
            if not isinstance(coeff, CycloScalar):
                coeff = CycloScalar.rational(order, coeff)
            if not coeff.is_zero():
                clean[tuple(exps)] = coeff
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, variables: Sequence[str], order: int) -> "MultiPoly":
        return cls(variables, order)

    @classmethod
    def constant(cls, variables: Sequence[str], order: int, value) -> "MultiPoly":
        return cls(variables, order, {(0,) * len(variables): value})

    @classmethod
    def monomial(cls, variables: Sequence[str], order: int, exps: Exponent, coeff=1) -> "MultiPoly":
        return cls(variables, order, {tuple(exps): coeff})

    @classmethod
    def variable(cls, variables: Sequence[str], order: int, name: str) -> "MultiPoly":
        exps = tuple(1 if v == name else 0 for v in variables)
        if sum(exps) != 1:
            raise ValueError(f"unknown variable {name!r}")
        return cls(variables, order, {exps: 1})

    def _fresh(self, terms: Mapping[Exponent, CycloScalar]) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.variables = self.variables
        out.order = self.order
        out.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return out

    def _check(self, other: "MultiPoly"):
        if self.variables != other.variables:
            raise ChartMismatch(f"variables {self.variables} vs {other.variables}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.variables, self.order, other)

    # ring operations
    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return self._fresh(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._fresh({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, CycloScalar):
                return self._fresh({e: c * other for e, c in self.terms.items()})
            factor = as_fraction(other)
            return self._fresh({e: c * factor for e, c in self.terms.items()})
        self._check(other)
        terms: Dict[Exponent, CycloScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                terms[e] = terms[e] + product if e in terms else product
        return self._fresh(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.variables, self.order, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if self.is_zero():
            return other == 0
        return self.is_constant() and self.constant_term() == other

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> CycloScalar:
        return self.terms.get((0,) * len(self.variables), CycloScalar.rational(self.order, 0))

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ChartMismatch(f"variable {name!r} not in {self.variables}") from None

    def degree(self, name: Optional[str] = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.index(name)
        return max(e[i] for e in self.terms)

    def min_degree(self, names: Iterable[str]) -> int:
        """Minimal total degree in the listed variables over all terms"""
        idx = [self.index(n) for n in names]
        return min(sum(e[i] for i in idx) for e in self.terms)

    def sorted_terms(self) -> List[Tuple[Exponent, CycloScalar]]:
        """Graded lexicographic order, highest first"""
        return sorted(self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-x for x in item[0])))

    # calculus and substitution
    def derivative(self, name: str) -> "MultiPoly":
        i = self.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                new = list(e)
                new[i] -= 1
                terms[tuple(new)] = c * e[i]
        return self._fresh(terms)

    def substitute(self, images: Mapping[str, "MultiPoly"], target_variables: Optional[Sequence[str]] = None) -> "MultiPoly":
        """Compose with polynomial images of every variable.

        Monomial images with unit coefficient are applied on exponents directly.
        """
        images_list = [images[v] for v in self.variables]
        target = tuple(target_variables) if target_variables is not None else images_list[0].variables
        for image in images_list:
            if image.variables != target:
                raise ChartMismatch(f"image lives in {image.variables}, expected {target}")
        monomial = []
        for image in images_list:
            if len(image.terms) == 1:
                (e, c), = image.terms.items()
                if c == 1:
                    monomial.append(e)
                    continue
            monomial = None
            break
        if monomial is not None:
            terms: Dict[Exponent, CycloScalar] = {}
            width = len(target)
            for e, c in self.terms.items():
                new = tuple(sum(e[i] * monomial[i][j] for i in range(len(e))) for j in range(width))
                terms[new] = terms[new] + c if new in terms else c
            return MultiPoly(target, self.order, terms)
        powers: List[Dict[int, MultiPoly]] = [{0: MultiPoly.constant(target, self.order, 1)} for _ in images_list]

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images_list[i]
            return cache[k]

        result = MultiPoly.zero(target, self.order)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, self.order, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def restrict(self, name: str, value) -> "MultiPoly":
        """Set one variable to a constant, keeping the variable list"""
        i = self.index(name)
        if not isinstance(value, CycloScalar):
            value = CycloScalar.rational(self.order, value)
        terms: Dict[Exponent, CycloScalar] = {}
        for e, c in self.terms.items():
            new = list(e)
            new[i] = 0
            new = tuple(new)
            contribution = c * value ** e[i] if e[i] else c
            terms[new] = terms[new] + contribution if new in terms else contribution
        return self._fresh(terms)

    def evaluate(self, point: Mapping[str, CycloScalar]) -> CycloScalar:
        total = CycloScalar.rational(self.order, 0)
        for e, c in self.terms.items():
            value = c
            for name, k in zip(self.variables, e):
                if k:
                    value = value * point[name] ** k
            total = total + value
        return total

    # monomial division
    def monomial_content(self, names: Iterable[str]) -> Dict[str, int]:
        if not self.terms:
            raise ZeroFormError("monomial content of the zero polynomial")
        return {n: min(e[self.index(n)] for e in self.terms) for n in names}

    def divide_monomial(self, powers: Mapping[str, int]) -> "MultiPoly":
        idx = {self.index(n): k for n, k in powers.items() if k}
        terms = {}
        for e, c in self.terms.items():
            new = list(e)
            for i, k in idx.items():
                new[i] -= k
                if new[i] < 0:
                    raise ValueError(f"monomial {dict(powers)} does not divide the polynomial")
            terms[tuple(new)] = c
        return self._fresh(terms)

    def multiply_monomial(self, powers: Mapping[str, int]) -> "MultiPoly":
        return self.divide_monomial({n: -k for n, k in powers.items()})

    def reduce_modulo(self, divisor: "MultiPoly", name: str) -> "MultiPoly":
        """Remainder of division by a divisor whose leading coefficient in `name` is constant"""
        self._check(divisor)
        i = self.index(name)
        top = divisor.degree(name)
        if top < 0:
            raise ZeroFormError("reduction modulo the zero polynomial")
        leading = {e: c for e, c in divisor.terms.items() if e[i] == top}
        if len(leading) != 1 or any(x for j, x in enumerate(next(iter(leading))) if j != i):
            raise ValueError(f"divisor is not monic in {name!r} up to a constant")
        lead_coeff = next(iter(leading.values()))
        tail = divisor - MultiPoly.monomial(self.variables, self.order, next(iter(leading)), lead_coeff)
        tail = tail * (-lead_coeff.inverse())
        remainder = self
        while True:
            high = {e: c for e, c in remainder.terms.items() if e[i] >= top}
            if not high:
                return remainder
            low = remainder._fresh({e: c for e, c in remainder.terms.items() if e[i] < top})
            shifted = MultiPoly(self.variables, self.order,
                                {tuple(x - top if j == i else x for j, x in enumerate(e)): c for e, c in high.items()})
            remainder = low + shifted * tail

    def normal_form(self, divisor: "MultiPoly") -> "MultiPoly":
        """Remainder of division by one polynomial under graded lexicographic order.

        One polynomial is a Groebner basis of the ideal it generates, so the
        remainder is zero exactly when the divisor divides the polynomial.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroFormError("reduction modulo the zero polynomial")
        lead_exps, lead_coeff = divisor.sorted_terms()[0]
        inverse = lead_coeff.inverse()
        remainder: Dict[Exponent, CycloScalar] = {}
        current = self
        while not current.is_zero():
            exps, coeff = current.sorted_terms()[0]
            if all(e >= k for e, k in zip(exps, lead_exps)):
                shift = tuple(e - k for e, k in zip(exps, lead_exps))
                current = current - divisor * MultiPoly.monomial(self.variables, self.order, shift, coeff * inverse)
            else:
                remainder[exps] = coeff
                current = current._fresh({e: c for e, c in current.terms.items() if e != exps})
        return self._fresh(remainder)

    # rendering and serialization
    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"{v}^{k}" for v, k in zip(self.variables, e) if k]
            parts.append("*".join([c.render()] + factors))
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [[list(e), c.to_json()] for e, c in self.sorted_terms()],
            "text": self.render(),
        }

    @classmethod
    def from_json(cls, data: dict, order: int) -> "MultiPoly":
        terms = {tuple(e): CycloScalar(order, [Fraction(x) for x in coeffs]) for e, coeffs in data["terms"]}
        return cls(data["variables"], order, terms)

    def __repr__(self):
        return f"MultiPoly({self.render()})"


def divide_by_monomial(f, names: Sequence[str]):
    """Strip the maximal monomial in `names` from a polynomial or a form.

    Returns (power vector as a dict, reduced object).
    """
    from algebra.forms import DifferentialForm

    if isinstance(f, DifferentialForm):
        return f.divide_by_monomial(names)
    if f.is_zero():
        raise ZeroFormError("cannot extract a monomial factor from zero")
    powers = f.monomial_content(names)
    return powers, f.divide_monomial(powers)
