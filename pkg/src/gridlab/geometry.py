"""Exact rational geometry for axis-aligned unit/grid segment representations.

All coordinates are `fractions.Fraction`; nothing here ever touches a float.
A representation maps vertex ids to axis-aligned segments; its intersection
graph has an edge exactly where two perpendicular closed segments meet.
Parallel segments never produce an edge, and collinear segments overlapping
in more than a point make the representation invalid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Rational = Fraction

ONE = Fraction(1)
ZERO = Fraction(0)


class GeometryError(Exception):
    pass


class InvalidRepresentation(GeometryError):
    pass


class VertexMismatch(GeometryError):
    pass


class EmptyRepresentation(GeometryError):
    pass


class Orientation(enum.Enum):
    H = "H"
    V = "V"

    @property
    def perpendicular(self) -> "Orientation":
        return Orientation.V if self is Orientation.H else Orientation.H


def _frac(value) -> Fraction:
    f = Fraction(value)
    return f


@dataclass(frozen=True)
class Segment:
    """An axis-aligned segment anchored at its left (H) or bottom (V) endpoint."""

    orientation: Orientation
    x: Rational
    y: Rational
    length: Rational = ONE

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))
        object.__setattr__(self, "length", _frac(self.length))
        if self.length <= 0:
            raise InvalidRepresentation(f"segment length must be positive, got {self.length}")

    @property
    def x_interval(self) -> Tuple[Rational, Rational]:
        if self.orientation is Orientation.H:
            return (self.x, self.x + self.length)
        return (self.x, self.x)

    @property
    def y_interval(self) -> Tuple[Rational, Rational]:
        if self.orientation is Orientation.V:
            return (self.y, self.y + self.length)
        return (self.y, self.y)

    def translated(self, dx: Rational, dy: Rational) -> "Segment":
        return Segment(self.orientation, self.x + dx, self.y + dy, self.length)

    @property
    def is_unit(self) -> bool:
        return self.length == 1


def hseg(x, y, length=ONE) -> Segment:
    return Segment(Orientation.H, Fraction(x), Fraction(y), Fraction(length))


def vseg(x, y, length=ONE) -> Segment:
    return Segment(Orientation.V, Fraction(x), Fraction(y), Fraction(length))


def intersects(a: Segment, b: Segment) -> bool:
    """Closed-segment adjacency predicate: perpendicular contact counts,
    parallel segments never do."""
    if a.orientation is b.orientation:
        return False
    ax = a.x_interval
    bx = b.x_interval
    ay = a.y_interval
    by = b.y_interval
    return (
        ax[0] <= bx[1]
        and bx[0] <= ax[1]
        and ay[0] <= by[1]
        and by[0] <= ay[1]
    )


class Representation:
    """Mapping vertex id -> Segment with non-overlap invariants."""

    def __init__(self, segments: Dict[object, Segment], unit_mode: Optional[bool] = None):
        self.segments: Dict[object, Segment] = dict(segments)
        if unit_mode is None:
            unit_mode = all(s.is_unit for s in self.segments.values())
        self.unit_mode = bool(unit_mode)
        if self.unit_mode:
            for vid, seg in self.segments.items():
                if not seg.is_unit:
                    raise InvalidRepresentation(f"unit_mode set but segment {vid!r} has length {seg.length}")
        self._check_parallel_overlaps()

    def _check_parallel_overlaps(self):
        by_line: Dict[Tuple[Orientation, Rational], List[Tuple[Rational, Rational, object]]] = {}
        for vid, seg in self.segments.items():
            if seg.orientation is Orientation.H:
                key = (Orientation.H, seg.y)
                lo, hi = seg.x_interval
            else:
                key = (Orientation.V, seg.x)
                lo, hi = seg.y_interval
            by_line.setdefault(key, []).append((lo, hi, vid))
        for key, items in by_line.items():
            items.sort()
            for (lo1, hi1, v1), (lo2, hi2, v2) in zip(items, items[1:]):
                if lo2 < hi1:
                    raise InvalidRepresentation(
                        f"collinear segments {v1!r} and {v2!r} overlap in more than a point"
                    )

    def __len__(self):
        return len(self.segments)

    def __getitem__(self, vid):
        return self.segments[vid]

    def __iter__(self):
        return iter(self.segments)

    def items(self):
        return self.segments.items()

    def vertex_ids(self):
        return set(self.segments)

    def translated(self, dx, dy) -> "Representation":
        dx = Fraction(dx)
        dy = Fraction(dy)
        return Representation(
            {v: s.translated(dx, dy) for v, s in self.segments.items()}, self.unit_mode
        )

    def bounding_box(self) -> Tuple[Rational, Rational, Rational, Rational]:
        if not self.segments:
            raise EmptyRepresentation("bounding box of empty representation")
        xs_lo, xs_hi, ys_lo, ys_hi = [], [], [], []
        for seg in self.segments.values():
            xi = seg.x_interval
            yi = seg.y_interval
            xs_lo.append(xi[0])
            xs_hi.append(xi[1])
            ys_lo.append(yi[0])
            ys_hi.append(yi[1])
        return (min(xs_lo), min(ys_lo), max(xs_hi), max(ys_hi))

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.segments == other.segments and self.unit_mode == other.unit_mode

    def __repr__(self):
        return f"Representation({len(self.segments)} segments, unit_mode={self.unit_mode})"


class Graph:
    """Simple undirected graph on vertex ids 0..n-1."""

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        self.n = int(n)
        self._adj: List[set] = [set() for _ in range(self.n)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int):
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(self._adj[v]))

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def vertices(self):
        return range(self.n)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def copy(self) -> "Graph":
        return Graph(self.n, self.edges())


@dataclass
class VerificationReport:
    """Adjacency mismatches between a representation and a target graph."""

    missing_edges: List[Tuple[object, object]] = field(default_factory=list)
    spurious_intersections: List[Tuple[object, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing_edges and not self.spurious_intersections

    def __bool__(self):
        return self.ok


def extract_graph(rep: Representation) -> Graph:
    """Intersection graph of a representation; vertex ids must be 0..n-1."""
    ids = sorted(rep.vertex_ids())
    if ids != list(range(len(ids))):
        raise InvalidRepresentation("extract_graph requires vertex ids 0..n-1")
    g = Graph(len(ids))
    items = [(v, rep[v]) for v in ids]
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if intersects(items[i][1], items[j][1]):
                g.add_edge(items[i][0], items[j][0])
    return g


def verify(rep: Representation, g: Graph) -> VerificationReport:
    """List every adjacency mismatch; empty report iff extract_graph(rep) == g."""
    rep_ids = rep.vertex_ids()
    g_ids = set(range(g.n))
    if rep_ids != g_ids:
        raise VertexMismatch(f"representation ids {sorted(rep_ids)} != graph ids 0..{g.n - 1}")
    report = VerificationReport()
    ids = sorted(rep_ids)
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            u, v = ids[i], ids[j]
            geo = intersects(rep[u], rep[v])
            edge = g.has_edge(u, v)
            if edge and not geo:
                report.missing_edges.append((u, v))
            elif geo and not edge:
                report.spurious_intersections.append((u, v))
    return report


def girth(g: Graph):
    """Length of a shortest cycle; math.inf for forests.

    BFS from every vertex; the first non-tree edge seen at each root bounds
    the shortest cycle through that root, and the minimum over roots is exact.
    """
    best = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent.get(w) != u and dist[w] >= dist[u]:
                        # non-tree edge: cycle through root of length <= d(u)+d(w)+1
                        best = min(best, dist[u] + dist[w] + 1)
            frontier = nxt
    return best


def max_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(g.degree(v) for v in g.vertices())


def bipartition(g: Graph) -> Optional[Dict[int, int]]:
    """Proper 2-coloring {vertex: 0|1}, or None if an odd cycle exists."""
    color: Dict[int, int] = {}
    for start in g.vertices():
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def boundary_size(rep: Representation) -> Rational:
    """Semiperimeter (width + height) of the bounding box of all segments."""
    if len(rep) == 0:
        raise EmptyRepresentation("boundary_size of empty representation")
    x0, y0, x1, y1 = rep.bounding_box()
    return (x1 - x0) + (y1 - y0)


def orientation_classes(rep: Representation) -> Tuple[List[object], List[object]]:
    hs = sorted((v for v, s in rep.items() if s.orientation is Orientation.H), key=repr)
    vs = sorted((v for v, s in rep.items() if s.orientation is Orientation.V), key=repr)
    return hs, vs
