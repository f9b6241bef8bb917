"""Independent brute-force oracles for cross-checking the fast paths.

Everything here favors obvious correctness over speed: plain nested loops,
exhaustive enumeration over a discretized coordinate grid, and no sharing
of code with the package's recognizer or router beyond the elementary
segment-intersection predicate.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gridlab.geometry import (
    Graph,
    Orientation,
    Representation,
    Segment,
    bipartition,
    intersects,
)

F = Fraction


def naive_extract_edges(rep: Representation) -> set:
    """Edge set by direct pairwise predicate evaluation."""
    ids = sorted(rep.vertex_ids())
    out = set()
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            if intersects(rep[u], rep[v]):
                out.add((u, v))
    return out


def _component_lists(g: Graph) -> List[List[int]]:
    seen = set()
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _orientation_assignments(g: Graph) -> Iterable[Dict[int, Orientation]]:
    """All axis assignments consistent with some proper 2-coloring: one
    global H/V split per connected component, both flips tried."""
    color = bipartition(g)
    if color is None:
        return
    comps = _component_lists(g)
    for flips in itertools.product((False, True), repeat=len(comps)):
        orient: Dict[int, Orientation] = {}
        for comp, flip in zip(comps, flips):
            for v in comp:
                bit = color[v] ^ flip
                orient[v] = Orientation.H if bit == 0 else Orientation.V
        yield orient


def naive_ugig_search(
    g: Graph,
    granularity: Optional[int] = None,
    hub_axis_granularity: Optional[int] = None,
    hub: Optional[int] = None,
) -> Optional[Representation]:
    """Exhaustive unit-segment search over the canonical coordinate grid.

    Coordinates run over multiples of 1/granularity inside an
    (n+1)-by-(n+1) box (granularity defaults to n, which is complete by
    the canonical-grid property). If hub/hub_axis_granularity are given,
    every vertex other than the hub must take its hub-axis-parallel
    coordinate from the coarser grid 1/hub_axis_granularity, which is how
    the tightness of the 1/n granularity is certified.
    """
    n = g.n
    if n == 0:
        return Representation({})
    gran = granularity or n
    edges_wanted = {tuple(sorted(e)) for e in g.edges()}

    def positions(den: int) -> List[Fraction]:
        return [F(k, den) for k in range(0, den * (n + 1) - den + 1)]

    full = positions(gran)
    for orient in _orientation_assignments(g):
        coarse = (
            positions(hub_axis_granularity)
            if hub_axis_granularity is not None
            else full
        )

        def axis_positions(v: int, axis: str) -> List[Fraction]:
            if hub is None or v == hub:
                return full
            # the "hub axis" is the axis along the hub's segment
            hub_axis = "x" if orient[hub] is Orientation.H else "y"
            return coarse if axis == hub_axis else full

        placed: Dict[int, Segment] = {}

        def consistent(v: int) -> bool:
            for u, seg in placed.items():
                if u == v:
                    continue
                has = intersects(seg, placed[v])
                if has != ((min(u, v), max(u, v)) in edges_wanted):
                    return False
            return True

        def search(v: int) -> Optional[Representation]:
            if v == n:
                return Representation(dict(placed))
            for x in axis_positions(v, "x"):
                for y in axis_positions(v, "y"):
                    placed[v] = Segment(orient[v], x, y)
                    if consistent(v):
                        found = search(v + 1)
                        if found is not None:
                            return found
            placed.pop(v, None)
            return None

        found = search(0)
        if found is not None:
            return found
    return None


def naive_gig_search(g: Graph) -> Optional[Representation]:
    """Exhaustive grid-segment search in normal form: horizontal vertices
    on distinct integer rows 1..n covering a column interval, vertical
    vertices on distinct integer columns covering a row interval, with
    half-integer overhang so contacts are proper crossings."""
    n = g.n
    if n == 0:
        return Representation({})
    edges_wanted = {tuple(sorted(e)) for e in g.edges()}
    lines = range(1, n + 1)
    spans = [(lo, hi) for lo in lines for hi in lines if lo <= hi]

    def seg_for(orientation: Orientation, line: int, lo: int, hi: int) -> Segment:
        if orientation is Orientation.H:
            return Segment(Orientation.H, F(2 * lo - 1, 2), F(line), F(hi - lo + 1))
        return Segment(Orientation.V, F(line), F(2 * lo - 1, 2), F(hi - lo + 1))

    for orient in _orientation_assignments(g):
        hs = [v for v in range(n) if orient[v] is Orientation.H]
        vs = [v for v in range(n) if orient[v] is Orientation.V]
        order = hs + vs
        placed: Dict[int, Segment] = {}
        used: Dict[Orientation, set] = {Orientation.H: set(), Orientation.V: set()}

        def consistent(v: int) -> bool:
            for u in placed:
                if u == v:
                    continue
                has = intersects(placed[u], placed[v])
                if has != ((min(u, v), max(u, v)) in edges_wanted):
                    return False
            return True

        def search(i: int) -> Optional[Representation]:
            if i == len(order):
                return Representation(dict(placed), unit_mode=False)
            v = order[i]
            for line in lines:
                if line in used[orient[v]]:
                    continue
                for lo, hi in spans:
                    placed[v] = seg_for(orient[v], line, lo, hi)
                    if consistent(v):
                        used[orient[v]].add(line)
                        found = search(i + 1)
                        if found is not None:
                            return found
                        used[orient[v]].discard(line)
                placed.pop(v, None)
            return None

        found = search(0)
        if found is not None:
            return found
    return None


def naive_min_boundary(g: Graph, cap: Fraction) -> Optional[Fraction]:
    """Optimal bounding-box semiperimeter over the canonical grid, by
    exhausting the same space as naive_ugig_search and taking the minimum."""
    n = g.n
    if n == 0:
        return None
    best: Optional[Fraction] = None
    edges_wanted = {tuple(sorted(e)) for e in g.edges()}
    full = [F(k, n) for k in range(0, n * (n + 1) - n + 1)]

    for orient in _orientation_assignments(g):
        placed: Dict[int, Segment] = {}

        def semiperimeter() -> Fraction:
            xs0 = min(s.x_interval[0] for s in placed.values())
            xs1 = max(s.x_interval[1] for s in placed.values())
            ys0 = min(s.y_interval[0] for s in placed.values())
            ys1 = max(s.y_interval[1] for s in placed.values())
            return (xs1 - xs0) + (ys1 - ys0)

        def consistent(v: int) -> bool:
            for u in placed:
                if u == v:
                    continue
                has = intersects(placed[u], placed[v])
                if has != ((min(u, v), max(u, v)) in edges_wanted):
                    return False
            return True

        def search(v: int):
            nonlocal best
            if v == n:
                s = semiperimeter()
                if s < (best if best is not None else cap):
                    best = s
                return
            for x in full:
                for y in full:
                    placed[v] = Segment(orient[v], x, y)
                    if consistent(v):
                        search(v + 1)
            placed.pop(v, None)

        search(0)
    return best


def all_bipartite_graphs(max_n: int) -> Iterable[Graph]:
    """Every simple bipartite graph on at most max_n vertices (all labeled
    edge subsets whose graph admits a proper 2-coloring)."""
    for n in range(max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            edges = [p for p, b in zip(pairs, bits) if b]
            g = Graph(n, edges)
            if bipartition(g) is not None:
                yield g
