"""Charts of the blown-up space and the elementary blow-up of one chart"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from algebra.cyclotomic import CycloScalar
from algebra.forms import DifferentialForm, OneForm, PolyMap, pullback
from algebra.polynomial import MultiPoly
from errors import ChartMismatch, ZeroFormError
from geometry.foliation import CHART_VARIABLES

logger = logging.getLogger(__name__)

PLANE_LABEL = "Z"
Domain = Tuple[FrozenSet[str], ...]
FULL_DOMAIN: Domain = (frozenset(),)


@dataclass(frozen=True)
class Center:
    """Blow-up center inside one chart.

    kind 'point' is the chart origin. kind 'line' is {u = shift, w = 0}; a zero
    shift gives a coordinate line. `labels` names the global hypersurfaces whose
    intersection the line is, when it is one.
    """
    kind: str
    u: Optional[str] = None
    w: Optional[str] = None
    shift: Optional[CycloScalar] = None
    labels: Tuple[str, ...] = ()

    def is_translated(self) -> bool:
        return self.shift is not None and not self.shift.is_zero()

    def describe(self) -> str:
        if self.kind == "point":
            return "origin"
        value = self.shift.render() if self.is_translated() else "0"
        return f"{{{self.u} = {value}, {self.w} = 0}}"

    def to_json(self) -> dict:
        data = {"kind": self.kind, "description": self.describe(), "labels": list(self.labels)}
        if self.kind == "line":
            data.update({"u": self.u, "w": self.w, "shift": self.shift.to_json() if self.shift is not None else None})
        return data

    @classmethod
    def from_json(cls, data: dict, order: int) -> "Center":
        shift = data.get("shift")
        if shift is not None:
            shift = CycloScalar(order, [Fraction(c) for c in shift])
        return cls(data["kind"], data.get("u"), data.get("w"), shift, tuple(data.get("labels", ())))


@dataclass
class LocalForm:
    """Strict transforms carried by one chart"""
    chart_id: str
    labels: Dict[str, str]
    domain: Domain
    form: OneForm
    separatrix: MultiPoly
    invariants: Dict[str, object] = field(default_factory=dict)

    @property
    def exceptional(self) -> Dict[str, str]:
        return {v: name for v, name in self.labels.items() if name != PLANE_LABEL}

    def to_json(self) -> dict:
        return {
            "chart": self.chart_id,
            "labels": dict(sorted(self.labels.items())),
            "domain": domain_to_json(self.domain),
            "form": self.form.to_json(),
            "separatrix": self.separatrix.to_json(),
            "invariants": self.invariants,
        }


@dataclass
class Chart:
    id: str
    index: int
    parent: Optional[str]
    to_parent: PolyMap
    to_origin: PolyMap
    labels: Dict[str, str]
    domain: Domain
    step: int
    form: OneForm
    separatrix: MultiPoly
    form_mult: Dict[str, int] = field(default_factory=dict)
    sep_mult: Dict[str, int] = field(default_factory=dict)
    form_powers: Dict[str, int] = field(default_factory=dict)
    sep_powers: Dict[str, int] = field(default_factory=dict)
    active: bool = True

    @property
    def exceptional(self) -> Dict[str, str]:
        return {v: name for v, name in self.labels.items() if name != PLANE_LABEL}

    @property
    def z_plain(self) -> bool:
        return self.labels.get("z") == PLANE_LABEL

    def var_of(self, label: str) -> Optional[str]:
        for v, name in self.labels.items():
            if name == label:
                return v
        return None

    def local_form(self) -> LocalForm:
        return LocalForm(self.id, dict(self.labels), self.domain, self.form, self.separatrix)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "index": self.index,
            "parent": self.parent,
            "step": self.step,
            "labels": dict(sorted(self.labels.items())),
            "domain": domain_to_json(self.domain),
            "to_parent": self.to_parent.to_json(),
            "to_origin": self.to_origin.to_json(),
            "form_multiplicity": dict(sorted(self.form_mult.items())),
            "separatrix_multiplicity": dict(sorted(self.sep_mult.items())),
            "form_powers": dict(sorted(self.form_powers.items())),
            "separatrix_powers": dict(sorted(self.sep_powers.items())),
            "active": self.active,
            "form": self.form.to_json(),
            "separatrix": self.separatrix.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, order: int) -> "Chart":
        return cls(
            id=data["id"],
            index=data["index"],
            parent=data["parent"],
            to_parent=PolyMap.from_json(data["to_parent"], order),
            to_origin=PolyMap.from_json(data["to_origin"], order),
            labels=dict(data["labels"]),
            domain=domain_from_json(data["domain"]),
            step=data["step"],
            form=DifferentialForm.from_json(data["form"], order),
            separatrix=MultiPoly.from_json(data["separatrix"], order),
            form_mult=dict(data["form_multiplicity"]),
            sep_mult=dict(data["separatrix_multiplicity"]),
            form_powers=dict(data["form_powers"]),
            sep_powers=dict(data["separatrix_powers"]),
            active=data["active"],
        )


@dataclass
class ChildSpec:
    """One chart produced by blowup_chart before strict transforms are taken"""
    kept: str
    to_parent: PolyMap
    labels: Dict[str, str]
    strata: FrozenSet[str]
    form: OneForm
    separatrix: MultiPoly


# domains are unions of coordinate subspaces, each given by the variables set to zero

def normalize_domain(subspaces: Iterable[FrozenSet[str]]) -> Domain:
    unique = sorted(set(subspaces), key=lambda s: (len(s), sorted(s)))
    kept: List[FrozenSet[str]] = []
    for candidate in unique:
        if not any(existing <= candidate for existing in kept):
            kept.append(candidate)
    return tuple(kept)


def domain_to_json(domain: Domain) -> List[List[str]]:
    return [sorted(s) for s in domain]


def domain_from_json(data) -> Domain:
    return tuple(frozenset(s) for s in data)


def preimage_domain(domain: Domain, chart_map: PolyMap, strata: FrozenSet[str]) -> Domain:
    """Pull a domain back along a chart map and intersect it with a stratum"""
    pulled: List[FrozenSet[str]] = []
    for subspace in domain:
        options: List[FrozenSet[str]] = [frozenset()]
        for name in sorted(subspace):
            image = chart_map.images[name]
            support = _monomial_support(image)
            if support is None:
                # translated image: not a coordinate condition
                continue
            options = [opt | {v} for opt in options for v in support]
        pulled.extend(options)
    return normalize_domain(s | strata for s in pulled)


def _monomial_support(image: MultiPoly) -> Optional[List[str]]:
    if len(image.terms) != 1:
        return None
    (exps, _), = image.terms.items()
    return [v for v, k in zip(image.variables, exps) if k]


def line_in_domain(domain: Domain, vanishing: Iterable[str]) -> bool:
    """True when generic points of a curve on which `vanishing` coordinates vanish lie in the domain"""
    vanishing = set(vanishing)
    return any(subspace <= vanishing for subspace in domain)


# elementary blow-ups

def _var(order: int, name: str) -> MultiPoly:
    return MultiPoly.variable(CHART_VARIABLES, order, name)


def point_blowup_maps(order: int) -> List[Tuple[str, PolyMap]]:
    """(x, xy, xz), (xy, y, yz), (xz, yz, z)"""
    maps = []
    for kept in CHART_VARIABLES:
        images = {v: _var(order, v) if v == kept else _var(order, kept) * _var(order, v) for v in CHART_VARIABLES}
        maps.append((kept, PolyMap(CHART_VARIABLES, CHART_VARIABLES, images)))
    return maps


def line_blowup_maps(order: int, u: str, w: str, shift: Optional[CycloScalar] = None) -> List[Tuple[str, PolyMap]]:
    """Charts of the blow-up of {u = shift, w = 0}: kept u first, then kept w"""
    if u == w or u not in CHART_VARIABLES or w not in CHART_VARIABLES:
        raise ChartMismatch(f"line center needs two distinct chart variables, got {u!r}, {w!r}")
    shift = shift if shift is not None else CycloScalar.rational(order, 0)
    identity = {v: _var(order, v) for v in CHART_VARIABLES}
    kept_u = dict(identity)
    kept_u[u] = _var(order, u) + shift
    kept_u[w] = _var(order, u) * _var(order, w)
    kept_w = dict(identity)
    kept_w[u] = _var(order, u) * _var(order, w) + shift
    return [(u, PolyMap(CHART_VARIABLES, CHART_VARIABLES, kept_u)),
            (w, PolyMap(CHART_VARIABLES, CHART_VARIABLES, kept_w))]


def center_in_chart(chart: Chart, center: Center) -> bool:
    """The chart domain always contains its origin; a line must be written in chart coordinates"""
    if center.kind == "point":
        return True
    if center.kind != "line" or center.u not in CHART_VARIABLES or center.w not in CHART_VARIABLES:
        return False
    for label in center.labels:
        if chart.var_of(label) not in (center.u, center.w):
            return False
    return True


def blowup_chart(chart: Chart, center: Center, new_label: str, primary: Optional[str] = None) -> List[ChildSpec]:
    """Blow up one chart along a center; returns raw pullbacks for each new chart.

    Children come in the standard order; `primary` names the kept variable of
    the chart that covers the whole exceptional divisor, the others are
    restricted to the strata not already covered.
    """
    if not center_in_chart(chart, center):
        raise ChartMismatch(f"center {center.describe()} is not contained in chart {chart.id}")
    order = chart.form.order
    if center.kind == "point":
        maps = point_blowup_maps(order)
    else:
        maps = line_blowup_maps(order, center.u, center.w, center.shift)
    kept_order = [kept for kept, _ in maps]
    primary = primary or kept_order[0]
    strata_order = [primary] + [k for k in kept_order if k != primary]
    children = []
    for kept, chart_map in maps:
        position = strata_order.index(kept)
        strata = frozenset(strata_order[:position])
        labels = _child_labels(chart.labels, center, kept, new_label)
        children.append(ChildSpec(
            kept=kept,
            to_parent=chart_map,
            labels=labels,
            strata=strata,
            form=pullback(chart.form, chart_map),
            separatrix=pullback(chart.separatrix, chart_map),
        ))
    logger.debug("blew up chart %s at %s into %d charts", chart.id, center.describe(), len(children))
    return children


def _child_labels(parent: Dict[str, str], center: Center, kept: str, new_label: str) -> Dict[str, str]:
    labels = {}
    for v, name in parent.items():
        if v == kept:
            continue
        if center.kind == "line" and center.is_translated() and v == center.u:
            # {u = 0} now sits at u = -shift
            continue
        labels[v] = name
    labels[kept] = new_label
    return labels


def strict_transform(f: Union[OneForm, MultiPoly], chart: Union[Chart, ChildSpec]):
    """Divide out the maximal power of every exceptional coordinate of the chart"""
    names = sorted(v for v, name in chart.labels.items() if name != PLANE_LABEL)
    if isinstance(f, MultiPoly):
        if f.is_zero():
            raise ZeroFormError("strict transform of the zero polynomial")
        powers = f.monomial_content(names)
        return powers, f.divide_monomial(powers)
    return f.divide_by_monomial(names)


def pull_multiplicities(mult: Dict[str, int], chart_map: PolyMap, labels: Dict[str, str]) -> Dict[str, int]:
    """Exponents of the pulled-back exceptional monomial on the child's exceptional coordinates"""
    out: Dict[str, int] = {}
    for name, m in mult.items():
        support = chart_map.images[name]
        if len(support.terms) != 1:
            continue
        (exps, _), = support.terms.items()
        for v, k in zip(chart_map.source, exps):
            if k:
                out[v] = out.get(v, 0) + m * k
    return {v: m for v, m in out.items() if v in labels and labels[v] != PLANE_LABEL}


def combine_powers(base: Dict[str, int], extra: Dict[str, int], labels: Dict[str, str]) -> Dict[str, int]:
    out = dict(base)
    for v, k in extra.items():
        out[v] = out.get(v, 0) + k
    return {v: m for v, m in sorted(out.items()) if v in labels and labels[v] != PLANE_LABEL and m}
