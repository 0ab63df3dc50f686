"""Dual graph of the exceptional divisor and the topology catalog of its components"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from errors import CatalogKeyError, InvariantViolation
from geometry.charts import PLANE_LABEL, Chart, line_in_domain
from geometry.foliation import CHART_VARIABLES
from geometry.resolution import (
    CASE_EVEN, FAMILY_BRANCH, FAMILY_CHAIN, FAMILY_D, FAMILY_FINAL_POINT, FAMILY_SEPARATRIX, STAGE_I,
    TAIL_END, TAIL_FOLD, TAIL_NONE, ResolutionTrace, plane_exponent,
)

logger = logging.getLogger(__name__)

SEPARATRIX_NODE = "S"

C_TIMES_C = "C×C"
C_TIMES_CSTAR = "C×C*"
CSTAR_TIMES_CSTAR = "C*×C*"
C_TIMES_PUNCTURED = "C×(C∖2pts)"
CSTAR_TIMES_PUNCTURED = "C*×(C∖2pts)"
ESSENTIAL_LABEL = "(C*×C)∖𝒞"
CSTAR_TIMES_C = "C*×C"
PUNCTURED_TIMES_C = "(C∖2pts)×C"
PLANE_MINUS_CONIC = "P²∖(2 lines ∪ conic)"

ROLE_FIRST = "first"
ROLE_HEAD = "head"
ROLE_TAIL = "tail"
ROLE_ESSENTIAL = "essential"
ROLE_SPECIAL = "special"
ROLE_CHAIN_END = "chain end"
ROLE_CHAIN_HEAD = "chain head"
ROLE_CHAIN_TAIL = "chain tail"
ROLE_FOLD_LEAF = "fold over a leaf"
ROLE_FOLD = "fold"
ROLE_TAIL_END_LEAF = "tail end over a leaf"
ROLE_TAIL_END = "tail end"
ROLE_BRANCH_LAST = "branch last"
ROLE_BRANCH_FREE = "branch last, off the separatrix"
ROLE_BRANCH_INNER = "branch inner"
ROLE_FINAL_POINT = "final point"

CATALOG: Dict[Tuple[str, str], str] = {
    (FAMILY_D, ROLE_FIRST): C_TIMES_C,
    (FAMILY_D, ROLE_HEAD): C_TIMES_CSTAR,
    (FAMILY_D, ROLE_TAIL): CSTAR_TIMES_CSTAR,
    (FAMILY_CHAIN, ROLE_ESSENTIAL): ESSENTIAL_LABEL,
    (FAMILY_CHAIN, ROLE_SPECIAL): C_TIMES_PUNCTURED,
    (FAMILY_CHAIN, ROLE_CHAIN_END): CSTAR_TIMES_PUNCTURED,
    (FAMILY_CHAIN, ROLE_CHAIN_HEAD): C_TIMES_CSTAR,
    (FAMILY_CHAIN, ROLE_CHAIN_TAIL): CSTAR_TIMES_CSTAR,
    (FAMILY_CHAIN, ROLE_FOLD_LEAF): C_TIMES_C,
    (FAMILY_CHAIN, ROLE_FOLD): CSTAR_TIMES_C,
    (FAMILY_CHAIN, ROLE_TAIL_END_LEAF): C_TIMES_PUNCTURED,
    (FAMILY_CHAIN, ROLE_TAIL_END): CSTAR_TIMES_PUNCTURED,
    (FAMILY_BRANCH, ROLE_BRANCH_LAST): PUNCTURED_TIMES_C,
    (FAMILY_BRANCH, ROLE_BRANCH_FREE): C_TIMES_C,
    (FAMILY_BRANCH, ROLE_BRANCH_INNER): CSTAR_TIMES_C,
    (FAMILY_FINAL_POINT, ROLE_FINAL_POINT): PLANE_MINUS_CONIC,
}

SPECIAL_TAG = {CASE_EVEN: "p1"}


@dataclass
class DivisorGraph:
    graph: nx.Graph
    essential: Optional[str] = None
    special: List[str] = field(default_factory=list)
    case: str = ""
    unclassified: List[str] = field(default_factory=list)
    expected_special: Optional[int] = None

    def nodes(self) -> List[str]:
        """Node ids ordered by creating step, separatrix last"""
        return sorted(self.graph.nodes, key=lambda n: (self.graph.nodes[n]["step"], n))

    def edges(self) -> List[Tuple[str, str]]:
        order = {n: i for i, n in enumerate(self.nodes())}
        pairs = [tuple(sorted(e, key=order.get)) for e in self.graph.edges]
        return sorted(pairs, key=lambda e: (order[e[0]], order[e[1]]))

    def label(self, node: str) -> Optional[str]:
        return self.graph.nodes[node].get("label")

    @property
    def connected(self) -> bool:
        return nx.is_connected(self.graph)

    def adjacency(self, node: str) -> List[Tuple[str, str]]:
        return sorted((other, self.graph.edges[node, other]["curve"]) for other in self.graph.neighbors(node))

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": n, **{k: v for k, v in sorted(self.graph.nodes[n].items())},
                       "adjacency": [list(a) for a in self.adjacency(n)]} for n in self.nodes()],
            "edges": [{"source": u, "target": v, "curve": self.graph.edges[u, v]["curve"]} for u, v in self.edges()],
            "essential": self.essential,
            "special": list(self.special),
            "case": self.case,
            "connected": self.connected,
            "unclassified": list(self.unclassified),
            "expected_special": self.expected_special,
        }


def _meets_separatrix(chart: Chart, v: str) -> bool:
    """S meets {v = 0} at some point of the chart domain"""
    for subspace in chart.domain:
        trace = chart.separatrix.restrict(v, 0)
        for name in sorted(subspace):
            trace = trace.restrict(name, 0)
        if trace.is_zero() or not trace.is_constant():
            return True
    return False


def _exceptional(chart: Chart) -> List[str]:
    return [v for v in CHART_VARIABLES if v in chart.labels and chart.labels[v] != PLANE_LABEL]


def _two_sheets(chart: Chart, v: str) -> bool:
    """S restricted to {v = 0} is z^2 + g with g not identically zero: a double cover branched along g = 0"""
    z = chart.var_of(PLANE_LABEL)
    if z is None or z == v:
        return False
    trace = chart.separatrix.restrict(v, 0)
    if trace.degree(z) != 2:
        return False
    k = trace.index(z)
    if any(exps[k] % 2 for exps, _ in trace.sorted_terms()):
        return False
    return not trace.restrict(z, 0).is_zero()


def _parents(trace: ResolutionTrace) -> Set[str]:
    return {c.parent for c in trace.components.values() if c.parent}


def _base_is_leaf(graph: nx.Graph, trace: ResolutionTrace, node: str) -> bool:
    """Apart from its own family, the component meets exceptional components of exactly one other D_alpha"""
    alpha = trace.components[node].alpha
    others = {graph.nodes[n].get("alpha") for n in graph.neighbors(node)
              if graph.nodes[n]["family"] in (FAMILY_D, FAMILY_CHAIN)}
    others.discard(None)
    others.discard(alpha)
    return len(others) == 1


def stage_one_graph(trace: ResolutionTrace) -> Tuple[nx.Graph, Dict[int, int]]:
    """Crossing graph of the D_alpha inside {z = 0} after Stage I, with their orders along the plane"""
    k = trace.stage_count(STAGE_I)
    charts = [c for c in trace.charts.values() if c.step <= k]
    refined = {c.parent for c in charts if c.parent and c.step >= 1}
    graph = nx.Graph()
    orders: Dict[int, int] = {}
    graph.add_nodes_from(range(1, k + 1))
    for chart in charts:
        z = chart.var_of(PLANE_LABEL)
        if chart.id in refined or z is None:
            continue
        names = _exceptional(chart)
        alphas = [trace.components[chart.labels[v]].alpha for v in names]
        for v, alpha in zip(names, alphas):
            if alpha not in orders and line_in_domain(chart.domain, {v, z}):
                orders[alpha] = plane_exponent(chart.separatrix, v, z)
        if len(names) == 2:
            graph.add_edge(*alphas)
    return graph, orders


def expected_special_count(trace: ResolutionTrace) -> int:
    """End lines of the Stage I crossing graph, other than the essential one, of even positive order"""
    graph, orders = stage_one_graph(trace)
    essential = trace.components[trace.essential_component].alpha
    return sum(1 for alpha in graph.nodes
               if alpha != essential and graph.degree(alpha) == 1
               and orders.get(alpha, 0) >= 2 and orders[alpha] % 2 == 0)


def _is_special(trace: ResolutionTrace, graph: nx.Graph, node: str) -> bool:
    component = trace.components[node]
    if node == trace.essential_component or node in _parents(trace) or component.tail != TAIL_NONE:
        return False
    if not graph.has_edge(node, SEPARATRIX_NODE):
        return False
    sheets = any(_two_sheets(chart, chart.var_of(node)) for chart in trace.active_charts()
                 if chart.var_of(node) is not None)
    return sheets and _base_is_leaf(graph, trace, node)


def component_role(trace: ResolutionTrace, graph: nx.Graph, node: str,
                   stage_one: Optional[nx.Graph] = None) -> str:
    component = trace.components[node]
    c0 = trace.params.cf.c0
    meets = graph.has_edge(node, SEPARATRIX_NODE)
    if component.family == FAMILY_D:
        if component.alpha == 1:
            return ROLE_FIRST
        return ROLE_HEAD if component.alpha <= c0 + 1 else ROLE_TAIL
    if component.family == FAMILY_CHAIN:
        if node == trace.essential_component:
            return ROLE_ESSENTIAL
        if component.tail in (TAIL_FOLD, TAIL_END):
            leaf = stage_one is not None and stage_one.degree(component.alpha) <= 1
            if component.tail == TAIL_FOLD:
                return ROLE_FOLD_LEAF if leaf else ROLE_FOLD
            return ROLE_TAIL_END_LEAF if leaf else ROLE_TAIL_END
        if node not in _parents(trace):
            return ROLE_SPECIAL if _is_special(trace, graph, node) else ROLE_CHAIN_END
        return ROLE_CHAIN_HEAD if component.alpha <= c0 + 1 else ROLE_CHAIN_TAIL
    if component.family == FAMILY_BRANCH:
        if node not in _parents(trace):
            return ROLE_BRANCH_LAST if meets else ROLE_BRANCH_FREE
        return ROLE_BRANCH_INNER
    if component.family == FAMILY_FINAL_POINT:
        return ROLE_FINAL_POINT
    return component.family


def build_graph(trace: ResolutionTrace) -> DivisorGraph:
    if trace.essential_component is None or not trace.charts:
        raise InvariantViolation("incomplete trace: no essential component")
    graph = nx.Graph()
    for component in trace.components.values():
        graph.add_node(component.id, family=component.family, stage=component.stage, step=component.step,
                       alpha=component.alpha)
    graph.add_node(SEPARATRIX_NODE, family=FAMILY_SEPARATRIX, stage="", step=len(trace.steps) + 1)
    for chart in trace.active_charts():
        names = _exceptional(chart)
        for i, v in enumerate(names):
            if _meets_separatrix(chart, v) and not graph.has_edge(chart.labels[v], SEPARATRIX_NODE):
                graph.add_edge(chart.labels[v], SEPARATRIX_NODE, curve=f"{{{v} = 0}} ∩ S in {chart.id}")
            for w in names[i + 1:]:
                if not graph.has_edge(chart.labels[v], chart.labels[w]):
                    graph.add_edge(chart.labels[v], chart.labels[w], curve=f"{{{v} = 0, {w} = 0}} in {chart.id}")
    stage_one, _ = stage_one_graph(trace)
    divisor = DivisorGraph(graph=graph, case=trace.case, expected_special=expected_special_count(trace))
    for node in list(graph.nodes):
        if node == SEPARATRIX_NODE:
            continue
        role = component_role(trace, graph, node, stage_one)
        graph.nodes[node]["role"] = role
        try:
            graph.nodes[node]["label"] = CATALOG[(graph.nodes[node]["family"], role)]
        except KeyError:
            logger.warning("no catalog entry for %s (%s, %s)", node, graph.nodes[node]["family"], role)
            graph.nodes[node]["label"] = None
            divisor.unclassified.append(node)
        if role == ROLE_SPECIAL:
            graph.nodes[node]["tag"] = SPECIAL_TAG.get(trace.case, "p2")
    divisor.essential = essential_component(divisor)
    divisor.special = [n for n in divisor.nodes() if graph.nodes[n].get("role") == ROLE_SPECIAL]
    if not divisor.connected:
        logger.error("divisor graph is not connected: %s", [sorted(c) for c in nx.connected_components(graph)])
    logger.info("divisor graph: %d nodes, %d edges, special %s (expected %d)", graph.number_of_nodes(),
                graph.number_of_edges(), divisor.special, divisor.expected_special)
    return divisor


def classify_component(divisor: DivisorGraph, node: str) -> str:
    if node not in divisor.graph:
        raise CatalogKeyError(f"unknown component {node!r}")
    data = divisor.graph.nodes[node]
    key = (data["family"], data.get("role"))
    if key not in CATALOG:
        raise CatalogKeyError(f"no topology entry for {node} with key {key}")
    return CATALOG[key]


def essential_component(divisor: DivisorGraph) -> str:
    found = [n for n in divisor.graph.nodes if divisor.graph.nodes[n].get("role") == ROLE_ESSENTIAL]
    if len(found) != 1:
        raise InvariantViolation(f"expected one essential component, found {sorted(found)}")
    node = found[0]
    if divisor.graph.nodes[node].get("label") != ESSENTIAL_LABEL:
        raise InvariantViolation(f"essential component {node} carries label {divisor.label(node)}")
    return node


def special_components(divisor: DivisorGraph) -> List[str]:
    """Special components found on the graph, checked against the count read off the Stage I crossings"""
    expected = divisor.expected_special
    if expected is not None and len(divisor.special) != expected:
        raise InvariantViolation(
            f"case {divisor.case} expects {expected} special components, found {divisor.special}")
    return list(divisor.special)
