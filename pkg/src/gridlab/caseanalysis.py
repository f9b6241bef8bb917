"""Finite case analysis for clause-gadget orderings.

A clause gadget contains three crossing red/blue segment pairs, an enclosing
cycle anchored at the red vertex of pair 3 and the blue vertex of pair 2,
and five internal connector paths. The six occurrence paths leave the gadget
through the boundary in a fixed clockwise order; within each pair, the
red-before-blue flag of an OrderingTriple decides which path exits first.

Whether a triple is geometrically realizable reduces to a planarity
question. Each crossing splits its two curves into four half-segments in
fixed clockwise order, alternating red, blue, red, blue; every path end
attaches to one of the two half-segments of the correct curve. We model a
crossing as a rigid wheel (hub + 4-rim), the boundary as a rigid wheel with
the gate/anchor order prescribed by the triple, and enumerate all
half-segment choices: the triple is realizable iff some choice yields a
planar graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

# internal connector paths between pair vertices; 'r'/'b' pick the red or
# blue curve of the named pair
INTERNAL_PATHS: Tuple[Tuple[Tuple[str, int], Tuple[str, int]], ...] = (
    (("r", 2), ("b", 3)),
    (("r", 1), ("r", 3)),
    (("r", 1), ("r", 2)),
    (("b", 1), ("b", 3)),
    (("b", 1), ("b", 2)),
)


def _halves(pair: int, color: str) -> Tuple[Tuple[str, int, int], Tuple[str, int, int]]:
    # rim nodes 1..4 clockwise; odd rim nodes are on the red curve
    if color == "r":
        return ("h", pair, 1), ("h", pair, 3)
    return ("h", pair, 2), ("h", pair, 4)


#: clockwise boundary order: occurrence-gate groups for the three pairs and
#: the two cycle-anchor attachment points
BOUNDARY_TEMPLATE: Tuple[str, ...] = ("P1", "P2", "Ab2", "Ar3", "P3")


def _base_graph(
    triple: Tuple[bool, bool, bool], template: Optional[Tuple[str, ...]] = None
) -> Tuple[nx.Graph, List]:
    g = nx.Graph()
    # boundary: gates for the three occurrence pairs in clockwise clause
    # order, red gate first iff the flag is set; anchor points per template
    boundary: List = []
    for item in template or BOUNDARY_TEMPLATE:
        if item.startswith("P"):
            i = int(item[1])
            gates = [("gate", i, "r"), ("gate", i, "b")]
            if not triple[i - 1]:
                gates.reverse()
            boundary.extend(gates)
        else:
            boundary.append(("anchor", item[1:]))
    for a, b in zip(boundary, boundary[1:] + boundary[:1]):
        g.add_edge(a, b)
    apex = ("apex",)
    for node in boundary:
        g.add_edge(apex, node)
    # crossings: rigid 4-wheels
    for pair in (1, 2, 3):
        hub = ("hub", pair)
        rim = [("h", pair, j) for j in (1, 2, 3, 4)]
        for j, node in enumerate(rim):
            g.add_edge(hub, node)
            g.add_edge(node, rim[(j + 1) % 4])
    return g, boundary


def _free_ends() -> List[Tuple[object, str, int]]:
    """Path ends with a free half-segment choice: (key, color, pair).

    The red occurrence end of each pair is pinned to rim node 1: rotating a
    wheel by two rim steps is an automorphism, so one attachment per
    crossing may be fixed without loss.
    """
    ends: List[Tuple[object, str, int]] = [
        (("gate", 1, "b"), "b", 1),
        (("gate", 2, "b"), "b", 2),
        (("gate", 3, "b"), "b", 3),
        (("anchor", "r3"), "r", 3),
        (("anchor", "b2"), "b", 2),
    ]
    for k, (end_a, end_b) in enumerate(INTERNAL_PATHS):
        for side, (color, pair) in (("a", end_a), ("b", end_b)):
            ends.append(((("path", k, side)), color, pair))
    return ends


_FREE_ENDS: List[Tuple[object, str, int]] = _free_ends()


def _attachment_edges(choice: Dict) -> List[Tuple[object, object]]:
    edges: List[Tuple[object, object]] = []
    for pair in (1, 2, 3):
        edges.append((("gate", pair, "r"), ("h", pair, 1)))  # pinned
    half_of: Dict[object, object] = {}
    for key, color, pair in _FREE_ENDS:
        half_of[key] = _halves(pair, color)[choice[key]]
    for key in (("gate", 1, "b"), ("gate", 2, "b"), ("gate", 3, "b"),
                ("anchor", "r3"), ("anchor", "b2")):
        edges.append((key, half_of[key]))
    for k in range(len(INTERNAL_PATHS)):
        edges.append((half_of[("path", k, "a")], half_of[("path", k, "b")]))
    return edges


@dataclass
class CaseResult:
    feasible: bool
    cases_checked: int
    witness_choice: Optional[Dict] = None


def ordering_feasible_model(
    triple: Tuple[bool, bool, bool], template: Optional[Tuple[str, ...]] = None
) -> CaseResult:
    """Exhaustive half-segment enumeration for one ordering triple."""
    base, _ = _base_graph(tuple(triple), template)
    free_keys = [end for end, _c, _p in _FREE_ENDS]
    checked = 0
    for bits in itertools.product((0, 1), repeat=len(free_keys)):
        choice = dict(zip(free_keys, bits))
        g = base.copy()
        g.add_edges_from(_attachment_edges(choice))
        checked += 1
        ok, _ = nx.check_planarity(g, counterexample=False)
        if ok:
            return CaseResult(True, checked, choice)
    return CaseResult(False, checked, None)


def enumerate_all() -> Dict[Tuple[bool, bool, bool], CaseResult]:
    results = {}
    for triple in itertools.product((False, True), repeat=3):
        results[triple] = ordering_feasible_model(triple)
    return results
