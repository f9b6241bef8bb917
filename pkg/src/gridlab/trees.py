"""Tree family T_n used for boundary-size lower bounds.

T_n is a rooted tree: the root has 16n+1 children, every child has exactly
one child (a grandchild at distance two from the root), and each grandchild
is itself the root of a copy of T_{n-1}. T_2 bottoms out the recursion: its
grandchildren are leaves.

The attachment convention (grandchild *is* the root of the nested copy,
rather than hanging the copy one edge lower) keeps depth(T_n) =
2 + depth(T_{n-1}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import Graph, Orientation, Representation, extract_graph
from .recognizer import SearchOptions, min_boundary


class LevelTooSmall(ValueError):
    pass


class InvalidTrace(ValueError):
    pass


def gen_tree(n: int) -> Graph:
    if n < 2:
        raise LevelTooSmall(f"tree family starts at level 2, got {n}")
    edges: List[Tuple[int, int]] = []
    counter = [0]

    def fresh() -> int:
        vid = counter[0]
        counter[0] += 1
        return vid

    def build(level: int, root: int):
        for _ in range(16 * level + 1):
            child = fresh()
            edges.append((root, child))
            grandchild = fresh()
            edges.append((child, grandchild))
            if level > 2:
                build(level - 1, grandchild)

    root = fresh()
    build(n, root)
    return Graph(counter[0], edges)


def tree_depth(g: Graph, root: int = 0) -> int:
    depth = {root: 0}
    frontier = [root]
    best = 0
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w not in depth:
                    depth[w] = depth[u] + 1
                    best = max(best, depth[w])
                    nxt.append(w)
        frontier = nxt
    return best


# ------------------------------------------------------------------
# nesting diagnostic


@dataclass
class PathTrace:
    """An ordered vertex path inside a representation."""

    vertices: List[int]

    def validate(self, rep: Representation, g: Graph):
        if not self.vertices:
            raise InvalidTrace("empty trace")
        for v in self.vertices:
            if v not in rep.vertex_ids():
                raise InvalidTrace(f"vertex {v} not in representation")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(a, b):
                raise InvalidTrace(f"consecutive vertices {a},{b} not adjacent")

    def y_min(self, rep: Representation) -> Fraction:
        return min(rep[v].y_interval[0] for v in self.vertices)

    def y_min_horizontal(self, rep: Representation):
        """y of the lowest horizontal segment on the path; None if the path
        has no horizontal segment."""
        ys = [
            rep[v].y_interval[0]
            for v in self.vertices
            if rep[v].orientation is Orientation.H
        ]
        return min(ys) if ys else None


@dataclass
class NestingReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def verify_nesting(rep: Representation, traces: Sequence[PathTrace]) -> NestingReport:
    """Diagnostic for the staircase-nesting inequalities on a chain of paths
    P_1, P_2, ... (1-based positions):

      * y_min over the horizontal segments of P_{2k} must lie strictly below
        y_min(P_{2k-1});
      * y_min(P_{2k+1}) must lie strictly below y_min(P_{2k}) - 1.

    An even-position path with no horizontal segment skips the first check.
    This reads the inequalities off supplied data; it proves nothing.
    """
    g = extract_graph_like(rep)
    for t in traces:
        t.validate(rep, g)
    report = NestingReport()
    for idx in range(1, len(traces)):
        pos = idx + 1  # 1-based position of traces[idx]
        prev, cur = traces[idx - 1], traces[idx]
        if pos % 2 == 0:
            yh = cur.y_min_horizontal(rep)
            if yh is not None and not yh < prev.y_min(rep):
                report.violations.append(
                    f"P_{pos}: horizontal y_min {yh} not below y_min(P_{pos-1}) {prev.y_min(rep)}"
                )
        else:
            if not cur.y_min(rep) < prev.y_min(rep) - 1:
                report.violations.append(
                    f"P_{pos}: y_min {cur.y_min(rep)} not below y_min(P_{pos-1}) - 1"
                )
    return report


def extract_graph_like(rep: Representation) -> Graph:
    # traces may reference sparse vertex ids; build adjacency directly
    ids = sorted(rep.vertex_ids())
    remap = {v: i for i, v in enumerate(ids)}
    from .geometry import intersects

    g = Graph(len(ids))
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            if intersects(rep[u], rep[v]):
                g.add_edge(remap[u], remap[v])

    class _View:
        def has_edge(self, a, b):
            return g.has_edge(remap[a], remap[b])

    return _View()


# ------------------------------------------------------------------
# empirical minimum boundary


def empirical_bound(n: int, opts: Optional[SearchOptions] = None) -> Fraction:
    """Exhaustive minimum boundary size of T_n over the discretized search
    space. Feasible only for toy inputs; T_2 already has 67 vertices and the
    search raises BudgetExceeded at any realistic budget (see README).
    Propagates BudgetExceeded rather than returning a non-optimal value.
    """
    g = gen_tree(n)
    result = min_boundary(g, cap=Fraction(4), opts=opts)
    assert result is not None, "tree is a UGIG; a representation must exist within the cap"
    rep, size = result
    assert size >= n, f"boundary {size} below the proven lower bound {n}"
    return size
