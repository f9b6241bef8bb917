"""Exact desk-scale recognition of UGIG and GIG.

The UGIG search runs over the canonical discretized space: anchors at
multiples of 1/n inside [-1, n], with pairwise distinct per-axis fractional
parts. Completeness of that space follows from the canonicalization result;
a representation exists iff one exists in this grid.

The GIG search uses the folklore normal form: horizontal segments on
distinct integer rows 1..n spanning integer column ranges (endpoints at
half-integers), vertical segments on distinct integer columns spanning row
ranges. Its completeness is an assumption validated empirically against the
naive oracle at small sizes.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import (
    Graph,
    Orientation,
    Representation,
    Segment,
    bipartition,
    boundary_size,
    extract_graph,
    hseg,
    intersects,
    max_degree,
    verify,
    vseg,
)

F = Fraction


class BudgetExceeded(Exception):
    """Search budget ran out before the space was exhausted."""


class RejectionReason(enum.Enum):
    NON_BIPARTITE = "non-bipartite"


@dataclass
class SearchOptions:
    time_budget: float = 120.0
    node_budget: int = 20_000_000
    parallel_branches: bool = False
    grid_extent_override: Optional[int] = None

    def __post_init__(self):
        if self.time_budget <= 0 or self.node_budget <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class Accept:
    representation: Representation


@dataclass
class TrivialAccept:
    representation: Representation


@dataclass
class Reject:
    reason: Optional[RejectionReason] = None


# ------------------------------------------------------------------
# explicit representations for graphs of maximum degree two


def _path_segments(length: int) -> List[Segment]:
    """Diagonal staircase for a path with `length` vertices; consecutive
    segments cross, nothing else does."""
    segs = []
    for i in range(length):
        if i % 2 == 0:
            k = i // 2
            segs.append(hseg(F(k, 2) - F(1, 4), F(k, 2)))
        else:
            j = i // 2
            segs.append(vseg(F(1, 2) + F(j, 2), F(j, 2) - F(1, 4)))
    return segs


def _strip_a(count: int) -> List[Segment]:
    return _path_segments(count)


def _strip_b(count: int) -> List[Segment]:
    return [s.translated(F(-1, 2), F(3, 4)) for s in _path_segments(count)]


def _cycle_segments(m: int) -> List[Segment]:
    """Segments for C_{2m} in cyclic vertex order, m >= 2.

    Two parallel staircase strips joined at the ends; the closing works for
    even m with a single right joiner and for odd m with a joiner pair."""
    if m < 2:
        raise ValueError("cycles have length at least 4")
    v_l = vseg(F(-1, 8), F(-1, 8))
    if m % 2 == 0:
        k = (m - 2) // 2
        a = _strip_a(2 * k + 1)
        b = _strip_b(2 * k + 1)
        v_r = vseg(F(k, 2) + F(1, 8), F(k, 2) - F(1, 8))
        return [v_l] + a + [v_r] + list(reversed(b))
    k = (m - 3) // 2
    a = _strip_a(2 * k + 1)
    b = _strip_b(2 * k + 2)
    v_r = vseg(F(k, 2) + F(5, 8), F(k, 2) - F(1, 8))
    h_r = hseg(F(k, 2) - F(1, 16), F(k, 2) + F(11, 16))
    return [v_l] + a + [v_r, h_r] + list(reversed(b))


def _component_order(g: Graph, comp: List[int]) -> Tuple[str, List[int]]:
    degs = {v: g.degree(v) for v in comp}
    if len(comp) == 1:
        return "isolated", comp
    if all(d == 2 for d in degs.values()):
        # cycle: walk it
        start = min(comp)
        order = [start]
        prev, cur = None, start
        while True:
            nbrs = [w for w in g.neighbors(cur) if w != prev]
            nxt = nbrs[0]
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        return "cycle", order
    ends = sorted(v for v, d in degs.items() if d <= 1)
    start = ends[0]
    order = [start]
    prev, cur = None, start
    while True:
        nbrs = [w for w in g.neighbors(cur) if w != prev]
        if not nbrs:
            break
        order.append(nbrs[0])
        prev, cur = cur, nbrs[0]
    return "path", order


def _components(g: Graph) -> List[List[int]]:
    seen = set()
    comps = []
    for s in g.vertices():
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


def degree_two_representation(g: Graph) -> Representation:
    """Explicit unit staircase representation for bipartite graphs with
    maximum degree at most two."""
    segments: Dict[int, Segment] = {}
    x_cursor = F(0)
    for comp in _components(g):
        kind, order = _component_order(g, comp)
        if kind == "isolated":
            local = [hseg(0, 0)]
        elif kind == "path":
            local = _path_segments(len(order))
        else:
            local = _cycle_segments(len(order) // 2)
        min_x = min(s.x_interval[0] for s in local)
        max_x = max(s.x_interval[1] for s in local)
        dx = x_cursor - min_x
        for vid, seg in zip(order, local):
            segments[vid] = seg.translated(dx, F(0))
        x_cursor += (max_x - min_x) + 2
    rep = Representation(segments, unit_mode=True)
    assert extract_graph(rep) == g, "degree-two construction failed verification"
    return rep


def quick_reject(g: Graph):
    """NON_BIPARTITE, a TrivialAccept with representation, or None."""
    if bipartition(g) is None:
        return RejectionReason.NON_BIPARTITE
    if g.n > 0 and max_degree(g) <= 2:
        return TrivialAccept(degree_two_representation(g))
    if g.n == 0:
        return TrivialAccept(Representation({}, unit_mode=True))
    return None


# ------------------------------------------------------------------
# canonical-space backtracking


class _Budget:
    def __init__(self, opts: SearchOptions):
        self.nodes = 0
        self.node_budget = opts.node_budget
        self.deadline = time.monotonic() + opts.time_budget

    def tick(self):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"node budget {self.node_budget} exhausted")
        if self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


def _frac_index(q: Fraction, n: int) -> int:
    # q is a multiple of 1/n; fractional slot in 0..n-1
    num = q.numerator * (n // q.denominator)
    return num % n


def _ugig_vertex_order(g: Graph) -> Tuple[List[int], set]:
    comps = _components(g)
    comps.sort(key=lambda c: (-max(g.degree(v) for v in c), c[0]))
    order = []
    comp_first = []
    for comp in comps:
        inner = sorted(comp, key=lambda v: (-g.degree(v), v))
        # keep each component contiguous, highest degree first
        comp_first.append(inner[0])
        order.extend(inner)
    return order, set(comp_first)


def _compatible(g: Graph, placed: Dict[int, Segment], v: int, seg: Segment) -> bool:
    for u, other in placed.items():
        if intersects(seg, other) != g.has_edge(u, v):
            return False
    return True


def recognize_ugig(g: Graph, opts: Optional[SearchOptions] = None):
    """Accept(representation) | Reject | raises nothing; budget exhaustion
    is reported as the BudgetExceeded sentinel value."""
    opts = opts or SearchOptions()
    pre = quick_reject(g)
    if pre is RejectionReason.NON_BIPARTITE:
        return Reject(RejectionReason.NON_BIPARTITE)
    if isinstance(pre, TrivialAccept):
        return Accept(pre.representation)

    color = bipartition(g)
    n = g.n
    extent = opts.grid_extent_override if opts.grid_extent_override is not None else n
    positions = [F(k, n) for k in range(-n, extent * n + 1)]
    order, comp_first = _ugig_vertex_order(g)
    budget = _Budget(opts)
    placed: Dict[int, Segment] = {}
    used_fx = [False] * n
    used_fy = [False] * n
    flip: Dict[int, bool] = {}  # first vertex of component -> flip choice

    def orientation_of(v: int, f: bool) -> Orientation:
        base = color[v] == 1
        return Orientation.V if (base ^ f) else Orientation.H

    def place(i: int) -> Optional[Representation]:
        if i == len(order):
            return Representation(dict(placed), unit_mode=True)
        v = order[i]
        if v in comp_first:
            flips = (False,) if not placed else (False, True)
        else:
            root = next(r for r in flip if color_comp[v] == color_comp[r])
            flips = (flip[root],)
        for f in flips:
            if v in comp_first:
                flip[v] = f
            ori = orientation_of(v, f)
            for x in positions:
                fx = _frac_index(x, n)
                if used_fx[fx]:
                    continue
                for y in positions:
                    fy = _frac_index(y, n)
                    if used_fy[fy]:
                        continue
                    budget.tick()
                    seg = Segment(ori, x, y)
                    if not _compatible(g, placed, v, seg):
                        continue
                    placed[v] = seg
                    used_fx[fx] = used_fy[fy] = True
                    result = place(i + 1)
                    if result is not None:
                        return result
                    del placed[v]
                    used_fx[fx] = used_fy[fy] = False
        if v in comp_first:
            flip.pop(v, None)
        return None

    # component id per vertex, for flip lookups
    color_comp: Dict[int, int] = {}
    for ci, comp in enumerate(_components(g)):
        for v in comp:
            color_comp[v] = ci

    try:
        result = place(0)
    except BudgetExceeded:
        return BudgetExceeded
    if result is None:
        return Reject()
    assert verify(result, g).ok
    return Accept(result)


# ------------------------------------------------------------------
# GIG recognition (integer normal form)


def gig_segment_h(row: int, lo: int, hi: int) -> Segment:
    return Segment(Orientation.H, F(2 * lo - 1, 2), F(row), F(hi - lo + 1))


def gig_segment_v(col: int, lo: int, hi: int) -> Segment:
    return Segment(Orientation.V, F(col), F(2 * lo - 1, 2), F(hi - lo + 1))


def recognize_gig(g: Graph, opts: Optional[SearchOptions] = None):
    opts = opts or SearchOptions()
    pre = quick_reject(g)
    if pre is RejectionReason.NON_BIPARTITE:
        return Reject(RejectionReason.NON_BIPARTITE)
    if isinstance(pre, TrivialAccept):
        return Accept(pre.representation)

    color = bipartition(g)
    n = g.n
    lines = list(range(1, n + 1))
    spans = [(lo, hi) for lo in lines for hi in lines if lo <= hi]
    order, comp_first = _ugig_vertex_order(g)
    color_comp: Dict[int, int] = {}
    for ci, comp in enumerate(_components(g)):
        for v in comp:
            color_comp[v] = ci
    budget = _Budget(opts)
    placed: Dict[int, Segment] = {}
    used_row = [False] * (n + 1)
    used_col = [False] * (n + 1)
    flip: Dict[int, bool] = {}

    def place(i: int):
        if i == len(order):
            return Representation(dict(placed), unit_mode=False)
        v = order[i]
        if v in comp_first:
            flips = (False,) if not placed else (False, True)
        else:
            root = next(r for r in flip if color_comp[v] == color_comp[r])
            flips = (flip[root],)
        for f in flips:
            if v in comp_first:
                flip[v] = f
            vertical = (color[v] == 1) ^ f
            for line in lines:
                if (used_col if vertical else used_row)[line]:
                    continue
                for lo, hi in spans:
                    budget.tick()
                    seg = gig_segment_v(line, lo, hi) if vertical else gig_segment_h(line, lo, hi)
                    if not _compatible(g, placed, v, seg):
                        continue
                    placed[v] = seg
                    (used_col if vertical else used_row)[line] = True
                    result = place(i + 1)
                    if result is not None:
                        return result
                    del placed[v]
                    (used_col if vertical else used_row)[line] = False
        if v in comp_first:
            flip.pop(v, None)
        return None

    try:
        result = place(0)
    except BudgetExceeded:
        return BudgetExceeded
    if result is None:
        return Reject()
    assert verify(result, g).ok
    return Accept(result)


# ------------------------------------------------------------------
# minimum boundary size


def min_boundary(
    g: Graph, cap: Fraction, opts: Optional[SearchOptions] = None
) -> Optional[Tuple[Representation, Fraction]]:
    """Minimum-semiperimeter representation over the canonical UGIG space,
    or None if none exists within `cap`. Raises BudgetExceeded if the search
    could not be exhausted."""
    cap = F(cap)
    if cap <= 0:
        raise ValueError("cap must be positive")
    opts = opts or SearchOptions()
    if bipartition(g) is None:
        return None
    if g.n == 0:
        return None

    color = bipartition(g)
    n = g.n
    extent = opts.grid_extent_override if opts.grid_extent_override is not None else n
    positions = [F(k, n) for k in range(-n, extent * n + 1)]
    order, comp_first = _ugig_vertex_order(g)
    color_comp: Dict[int, int] = {}
    for ci, comp in enumerate(_components(g)):
        for v in comp:
            color_comp[v] = ci
    budget = _Budget(opts)
    placed: Dict[int, Segment] = {}
    used_fx = [False] * n
    used_fy = [False] * n
    flip: Dict[int, bool] = {}
    best: List = [None, cap]  # representation, bound (strictly improve)

    def bbox_semiperimeter() -> Fraction:
        xs0 = min(s.x_interval[0] for s in placed.values())
        xs1 = max(s.x_interval[1] for s in placed.values())
        ys0 = min(s.y_interval[0] for s in placed.values())
        ys1 = max(s.y_interval[1] for s in placed.values())
        return (xs1 - xs0) + (ys1 - ys0)

    def place(i: int):
        if i == len(order):
            size = bbox_semiperimeter()
            if (best[0] is None and size <= best[1]) or size < best[1]:
                best[0] = Representation(dict(placed), unit_mode=True)
                best[1] = size
            return
        v = order[i]
        if v in comp_first:
            flips = (False,) if not placed else (False, True)
        else:
            root = next(r for r in flip if color_comp[v] == color_comp[r])
            flips = (flip[root],)
        for f in flips:
            if v in comp_first:
                flip[v] = f
            ori = Orientation.V if ((color[v] == 1) ^ f) else Orientation.H
            for x in positions:
                fx = _frac_index(x, n)
                if used_fx[fx]:
                    continue
                for y in positions:
                    fy = _frac_index(y, n)
                    if used_fy[fy]:
                        continue
                    budget.tick()
                    seg = Segment(ori, x, y)
                    if not _compatible(g, placed, v, seg):
                        continue
                    placed[v] = seg
                    size = bbox_semiperimeter()
                    prune = size > best[1] or (best[0] is not None and size >= best[1])
                    if not prune:
                        used_fx[fx] = used_fy[fy] = True
                        place(i + 1)
                        used_fx[fx] = used_fy[fy] = False
                    del placed[v]
        if v in comp_first:
            flip.pop(v, None)

    place(0)  # BudgetExceeded propagates
    if best[0] is None:
        return None
    return best[0], best[1]
