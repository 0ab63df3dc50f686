"""Exterior differential forms with polynomial coefficients"""
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from algebra.polynomial import MultiPoly
from errors import ChartMismatch, ZeroFormError

Basis = Tuple[int, ...]


def _basis(n: int, degree: int) -> List[Basis]:
    return list(combinations(range(n), degree))


def _merge(left: Basis, right: Basis) -> Tuple[int, Basis]:
    """Sign and sorted basis of dx_left ^ dx_right (sign 0 on repeated index)"""
    if set(left) & set(right):
        return 0, ()
    seq = list(left) + list(right)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


class PolyMap:
    """Chart map: each target coordinate written as a polynomial in source coordinates"""

    def __init__(self, source: Sequence[str], target: Sequence[str], images: Mapping[str, MultiPoly]):
        self.source = tuple(source)
        self.target = tuple(target)
        self.images = {name: images[name] for name in self.target}
        for name, image in self.images.items():
            if image.variables != self.source:
                raise ChartMismatch(f"image of {name} lives in {image.variables}, expected {self.source}")

    @classmethod
    def identity(cls, variables: Sequence[str], order: int) -> "PolyMap":
        return cls(variables, variables, {v: MultiPoly.variable(variables, order, v) for v in variables})

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self after inner: source(inner) -> target(self)"""
        if inner.target != self.source:
            raise ChartMismatch(f"cannot compose {inner.target} into {self.source}")
        images = {name: image.substitute(inner.images, inner.source) for name, image in self.images.items()}
        return PolyMap(inner.source, self.target, images)

    def jacobian(self) -> Dict[str, Dict[str, MultiPoly]]:
        return {t: {s: self.images[t].derivative(s) for s in self.source} for t in self.target}

    def apply(self, f: MultiPoly) -> MultiPoly:
        if f.variables != self.target:
            raise ChartMismatch(f"{f.variables} is not the target chart {self.target}")
        return f.substitute(self.images, self.source)

    def __eq__(self, other):
        return isinstance(other, PolyMap) and (self.source, self.target, self.images) == (other.source, other.target, other.images)

    def render(self) -> Dict[str, str]:
        return {name: image.render() for name, image in self.images.items()}

    def to_json(self) -> dict:
        return {"source": list(self.source), "target": list(self.target),
                "images": {name: image.to_json() for name, image in self.images.items()}}

    @classmethod
    def from_json(cls, data: dict, order: int) -> "PolyMap":
        images = {name: MultiPoly.from_json(image, order) for name, image in data["images"].items()}
        return cls(data["source"], data["target"], images)


class DifferentialForm:
    """k-form sum f_I dx_I over increasing index tuples I"""

    def __init__(self, degree: int, variables: Sequence[str], order: int, coeffs: Mapping[Basis, MultiPoly] = None):
        self.degree = degree
        self.variables = tuple(variables)
        self.order = order
        self.coeffs: Dict[Basis, MultiPoly] = {}
        for basis in _basis(len(self.variables), degree):
            value = (coeffs or {}).get(basis)
            if value is None:
                value = MultiPoly.zero(self.variables, order)
            elif value.variables != self.variables:
                raise ChartMismatch(f"coefficient lives in {value.variables}, expected {self.variables}")
            self.coeffs[basis] = value

    @staticmethod
    def build(degree: int, variables: Sequence[str], order: int, coeffs: Mapping[Basis, MultiPoly]) -> "DifferentialForm":
        cls = {1: OneForm, 2: TwoForm, 3: ThreeForm}.get(degree, DifferentialForm)
        if cls is DifferentialForm:
            return DifferentialForm(degree, variables, order, coeffs)
        return cls(variables, order, coeffs)

    def _same(self, other: "DifferentialForm"):
        if self.variables != other.variables:
            raise ChartMismatch(f"forms live in {self.variables} and {other.variables}")
        if self.degree != other.degree:
            raise ValueError("forms of different degree")

    def __getitem__(self, basis: Basis) -> MultiPoly:
        return self.coeffs[basis]

    def coefficient(self, *names: str) -> MultiPoly:
        idx = tuple(self.variables.index(n) for n in names)
        sign, basis = _merge(idx[:1], idx[1:]) if len(idx) > 1 else (1, idx)
        return self.coeffs[basis] * sign

    def __add__(self, other):
        self._same(other)
        return DifferentialForm.build(self.degree, self.variables, self.order,
                                      {b: c + other.coeffs[b] for b, c in self.coeffs.items()})

    def __neg__(self):
        return DifferentialForm.build(self.degree, self.variables, self.order, {b: -c for b, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "DifferentialForm":
        """Multiply every coefficient by a polynomial or scalar"""
        return DifferentialForm.build(self.degree, self.variables, self.order,
                                      {b: c * factor for b, c in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.degree, self.variables, self.coeffs) == (other.degree, other.variables, other.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def components(self) -> List[MultiPoly]:
        return [self.coeffs[b] for b in _basis(len(self.variables), self.degree)]

    def restrict(self, name: str, value) -> "DifferentialForm":
        """Evaluate the coefficients on a coordinate level set (basis kept)"""
        return DifferentialForm.build(self.degree, self.variables, self.order,
                                      {b: c.restrict(name, value) for b, c in self.coeffs.items()})

    def divide_by_monomial(self, names: Sequence[str]):
        if self.is_zero():
            raise ZeroFormError("cannot extract a monomial factor from the zero form")
        nonzero = [c for c in self.coeffs.values() if not c.is_zero()]
        powers = {n: min(c.monomial_content([n])[n] for c in nonzero) for n in names}
        reduced = DifferentialForm.build(self.degree, self.variables, self.order,
                                         {b: c.divide_monomial(powers) for b, c in self.coeffs.items()})
        return powers, reduced

    def render(self) -> str:
        parts = []
        for basis, c in self.coeffs.items():
            if c.is_zero():
                continue
            wedge = "^".join("d" + self.variables[i] for i in basis)
            parts.append(f"({c.render()})*{wedge}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "variables": list(self.variables),
            "coefficients": [[list(b), c.to_json()] for b, c in self.coeffs.items()],
        }

    @staticmethod
    def from_json(data: dict, order: int) -> "DifferentialForm":
        coeffs = {tuple(b): MultiPoly.from_json(c, order) for b, c in data["coefficients"]}
        return DifferentialForm.build(data["degree"], data["variables"], order, coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({self.render()})"


class OneForm(DifferentialForm):
    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping[Basis, MultiPoly] = None):
        super().__init__(1, variables, order, coeffs)

    @classmethod
    def from_components(cls, components: Sequence[MultiPoly]) -> "OneForm":
        first = components[0]
        return cls(first.variables, first.order, {(i,): c for i, c in enumerate(components)})

    def contract(self, field: "VectorField") -> MultiPoly:
        """Evaluate the 1-form on a vector field"""
        if field.variables != self.variables:
            raise ChartMismatch(f"field lives in {field.variables}, form in {self.variables}")
        total = MultiPoly.zero(self.variables, self.order)
        for i, comp in enumerate(field.components):
            total = total + self.coeffs[(i,)] * comp
        return total


class TwoForm(DifferentialForm):
    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping[Basis, MultiPoly] = None):
        super().__init__(2, variables, order, coeffs)


class ThreeForm(DifferentialForm):
    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping[Basis, MultiPoly] = None):
        super().__init__(3, variables, order, coeffs)


class VectorField:
    """Components along the coordinate vector fields of a chart"""

    def __init__(self, components: Sequence[MultiPoly]):
        self.components = tuple(components)
        self.variables = self.components[0].variables
        if any(c.variables != self.variables for c in self.components):
            raise ChartMismatch("vector field components live in different charts")

    def scale(self, factor) -> "VectorField":
        return VectorField([c * factor for c in self.components])

    def render(self) -> str:
        return " + ".join(f"({c.render()})*d/d{v}" for v, c in zip(self.variables, self.components) if not c.is_zero()) or "0"


def exterior_derivative(f: Union[MultiPoly, DifferentialForm]) -> DifferentialForm:
    if isinstance(f, MultiPoly):
        return OneForm(f.variables, f.order, {(i,): f.derivative(v) for i, v in enumerate(f.variables)})
    coeffs: Dict[Basis, MultiPoly] = {}
    for basis, c in f.coeffs.items():
        if c.is_zero():
            continue
        for j, v in enumerate(f.variables):
            sign, merged = _merge((j,), basis)
            if not sign:
                continue
            term = c.derivative(v) * sign
            coeffs[merged] = coeffs[merged] + term if merged in coeffs else term
    return DifferentialForm.build(f.degree + 1, f.variables, f.order, coeffs)


def wedge(left: DifferentialForm, right: DifferentialForm) -> DifferentialForm:
    if left.variables != right.variables:
        raise ChartMismatch(f"cannot wedge forms from {left.variables} and {right.variables}")
    degree = left.degree + right.degree
    coeffs: Dict[Basis, MultiPoly] = {}
    for b1, c1 in left.coeffs.items():
        if c1.is_zero():
            continue
        for b2, c2 in right.coeffs.items():
            if c2.is_zero():
                continue
            sign, merged = _merge(b1, b2)
            if not sign:
                continue
            term = c1 * c2 * sign
            coeffs[merged] = coeffs[merged] + term if merged in coeffs else term
    return DifferentialForm.build(degree, left.variables, left.order, coeffs)


def pullback(form: Union[MultiPoly, DifferentialForm], chart_map: PolyMap):
    """Pull a function or a form back along a chart map"""
    if isinstance(form, MultiPoly):
        return chart_map.apply(form)
    if form.variables != chart_map.target:
        raise ChartMismatch(f"form lives in {form.variables}, map targets {chart_map.target}")
    differentials = [exterior_derivative(chart_map.images[v]) for v in chart_map.target]
    order = form.order
    result = DifferentialForm.build(form.degree, chart_map.source, order, {})
    for basis, c in form.coeffs.items():
        if c.is_zero():
            continue
        term: DifferentialForm = None
        for i in basis:
            term = differentials[i] if term is None else wedge(term, differentials[i])
        if term is None:
            continue
        result = result + term.scale(chart_map.apply(c))
    return result


def integrability_check(omega: OneForm) -> bool:
    """True when omega ^ d(omega) vanishes identically"""
    return wedge(omega, exterior_derivative(omega)).is_zero()
