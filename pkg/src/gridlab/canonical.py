"""Canonicalization of unit-segment representations.

A valid unit representation on n vertices is compressed, by one sweep per
axis, into the (n+1) x (n+1) grid with every coordinate a multiple of 1/n
and pairwise distinct per-axis fractional parts, without changing the
intersection graph.

Per axis, every segment owns one *assigned* coordinate: its anchor for the
along-axis orientation, and the left/bottom end of the unit extension of its
projection point for the perpendicular one (points are extended towards
smaller coordinates, a fixed arbitrary choice). The sweep re-assigns these
left endpoints to increasing multiples of 1/n while preserving the full
endpoint order, which is exactly what the adjacency relation depends on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .geometry import (
    Graph,
    GeometryError,
    Orientation,
    Representation,
    Segment,
    extract_graph,
    intersects,
)

ONE = Fraction(1)


class PerturbationFailed(GeometryError):
    pass


class NotUnitMode(GeometryError):
    pass


class NotGeneralPosition(GeometryError):
    pass


class CanonicalizationError(GeometryError):
    pass


class Axis(enum.Enum):
    X = "x"
    Y = "y"


@dataclass
class SweepSchedule:
    axis: Axis
    ordered_events: List[Tuple[object, Fraction]]  # (vertex id, extended left endpoint)

    def __post_init__(self):
        positions = [p for _v, p in self.ordered_events]
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise NotGeneralPosition("sweep schedule positions must strictly increase")


def _frac_part(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def _extended_left(seg: Segment, axis: Axis) -> Fraction:
    """Left endpoint of the segment's (extended) projection interval."""
    if axis is Axis.X:
        return seg.x if seg.orientation is Orientation.H else seg.x - seg.length
    return seg.y if seg.orientation is Orientation.V else seg.y - seg.length


def _events(rep: Representation, axis: Axis) -> List[Fraction]:
    vals = []
    for seg in rep.segments.values():
        left = _extended_left(seg, axis)
        vals.append(left)
        vals.append(left + seg.length)
    return vals


def in_general_position(rep: Representation, axis: Axis) -> bool:
    vals = _events(rep, axis)
    return len(set(vals)) == len(vals)


def _axis_constraints(rep: Representation, axis: Axis) -> Dict[object, set]:
    """Precedence edges u -> v meaning offset(u) < offset(v), forced by
    boundary contacts of intersecting perpendicular pairs on this axis."""
    after: Dict[object, set] = {vid: set() for vid in rep.segments}
    items = list(rep.items())
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            (u, su), (v, sv) = items[i], items[j]
            if not intersects(su, sv):
                continue
            if su.orientation is sv.orientation:
                continue
            if su.orientation is Orientation.V:
                (u, su), (v, sv) = (v, sv), (u, su)
            # su horizontal, sv vertical
            if axis is Axis.X:
                lo, hi = su.x_interval
                p = sv.x
            else:
                lo, hi = sv.y_interval
                p = su.y
                u, v = v, u  # interval owner first
            if p == lo:
                after[u].add(v)  # point must move right of the interval start
            elif p == hi:
                after[v].add(u)
    return after


def _topo_ranks(after: Dict[object, set]) -> Dict[object, int]:
    indeg = {v: 0 for v in after}
    for u, succs in after.items():
        for v in succs:
            indeg[v] += 1
    ready = sorted((v for v, d in indeg.items() if d == 0), key=repr)
    ranks: Dict[object, int] = {}
    rank = 0
    while ready:
        u = ready.pop(0)
        ranks[u] = rank
        rank += 1
        added = []
        for v in sorted(after[u], key=repr):
            indeg[v] -= 1
            if indeg[v] == 0:
                added.append(v)
        if added:
            ready = sorted(ready + added, key=repr)
    if len(ranks) != len(after):
        raise PerturbationFailed("cyclic contact constraints; no graph-preserving perturbation")
    return ranks


def perturb_to_general_position(rep: Representation) -> Representation:
    """Shift segments by distinct tiny per-axis offsets so that no two
    (extended) projection endpoints coincide, preserving the graph."""
    if in_general_position(rep, Axis.X) and in_general_position(rep, Axis.Y):
        return rep

    before = extract_graph(rep)
    shifts: Dict[object, List[Fraction]] = {vid: [Fraction(0), Fraction(0)] for vid in rep.segments}
    n = len(rep)
    for k, axis in enumerate((Axis.X, Axis.Y)):
        vals = sorted(set(_events(rep, axis)))
        gaps = [b - a for a, b in zip(vals, vals[1:])]
        gap = min(gaps) if gaps else ONE
        step = gap / (4 * (n + 1))
        ranks = _topo_ranks(_axis_constraints(rep, axis))
        for vid, r in ranks.items():
            shifts[vid][k] = (r + 1) * step

    out = Representation(
        {vid: seg.translated(shifts[vid][0], shifts[vid][1]) for vid, seg in rep.items()},
        rep.unit_mode,
    )
    if not (in_general_position(out, Axis.X) and in_general_position(out, Axis.Y)):
        raise PerturbationFailed("perturbation left coincident endpoints")
    if extract_graph(out) != before:
        raise PerturbationFailed("perturbation changed the intersection graph")
    return out


def build_schedule(rep: Representation, axis: Axis) -> SweepSchedule:
    events = sorted(
        ((vid, _extended_left(seg, axis)) for vid, seg in rep.items()),
        key=lambda e: e[1],
    )
    return SweepSchedule(axis, events)


def sweep_axis(rep: Representation, axis: Axis) -> Representation:
    """Re-assign the chosen axis to increasing multiples of 1/n with distinct
    fractional parts, preserving every point-in-interval and collinear
    disjointness relation of the projections. Slots are chosen smallest-first
    with backtracking: a pure greedy can strand a later segment whose only
    admissible slot shares a fractional part with an earlier, unconstrained
    choice."""
    if not rep.unit_mode:
        raise NotUnitMode("sweep requires a unit-mode representation")
    if len(rep) == 0:
        return rep
    if not in_general_position(rep, axis):
        raise NotGeneralPosition(f"coincident projection endpoints on axis {axis.value}")

    n = len(rep)
    schedule = build_schedule(rep, axis)
    order = schedule.ordered_events

    def is_along(seg: Segment) -> bool:
        return (
            seg.orientation is Orientation.H
            if axis is Axis.X
            else seg.orientation is Orientation.V
        )

    # every slot lives in [-1, n-1] so that all events fit in a span of n+1
    cap = Fraction(n - 1)
    slots: List[Fraction] = [Fraction(0)] * len(order)
    fracs_used: Dict[Fraction, int] = {}

    def candidates(idx: int) -> List[Fraction]:
        vid, left = order[idx]
        if idx == 0:
            return [Fraction(-1)]
        cur = rep[vid]
        cur_along = is_along(cur)
        lower = slots[idx - 1]
        upper: Optional[Fraction] = None
        for oidx in range(idx):
            ovid, oleft = order[oidx]
            oc = slots[oidx]
            other = rep[ovid]
            if cur_along and not is_along(other):
                # the earlier point at oc+1 must stay inside [c, c+1]
                # iff it was inside [left, left+1]
                if left < oleft + 1:
                    upper = oc + 1 if upper is None else min(upper, oc + 1)
                else:
                    lower = max(lower, oc + 1)
            elif cur_along and is_along(other):
                # collinear segments may touch but not overlap
                same_line = cur.y == other.y if axis is Axis.X else cur.x == other.x
                if same_line:
                    lower = max(lower, oc + 1 - Fraction(1, n))
            # a later point always stays right of earlier intervals and
            # points because the slots strictly increase
        out: List[Fraction] = []
        k = (lower * n).numerator // (lower * n).denominator + 1
        while True:
            c = Fraction(k, n)
            if c > cap or (upper is not None and c >= upper):
                break
            if _frac_part(c) not in fracs_used:
                out.append(c)
            k += 1
        return out

    def search(idx: int) -> bool:
        if idx == len(order):
            return True
        for c in candidates(idx):
            slots[idx] = c
            fracs_used[_frac_part(c)] = idx
            if search(idx + 1):
                return True
            del fracs_used[_frac_part(c)]
        return False

    if not search(0):
        raise CanonicalizationError(
            f"no admissible 1/{n} slot assignment found on axis {axis.value}"
        )
    assigned = [(vid, left, slots[i]) for i, (vid, left) in enumerate(order)]

    new_segments = dict(rep.segments)
    for vid, _left, c in assigned:
        seg = rep[vid]
        if axis is Axis.X:
            if seg.orientation is Orientation.H:
                new_segments[vid] = Segment(seg.orientation, c, seg.y, seg.length)
            else:
                new_segments[vid] = Segment(seg.orientation, c + 1, seg.y, seg.length)
        else:
            if seg.orientation is Orientation.V:
                new_segments[vid] = Segment(seg.orientation, seg.x, c, seg.length)
            else:
                new_segments[vid] = Segment(seg.orientation, seg.x, c + 1, seg.length)
    return Representation(new_segments, rep.unit_mode)


def check_canonical(rep: Representation) -> Tuple[bool, List[str]]:
    """Grid granularity 1/n, bounding box at most (n+1) x (n+1), and pairwise
    distinct per-axis fractional parts of the assigned coordinates."""
    violations: List[str] = []
    n = len(rep)
    if n == 0:
        return True, violations
    for vid, seg in rep.items():
        if not seg.is_unit:
            violations.append(f"segment {vid!r} has non-unit length {seg.length}")
        for name, coord in (("x", seg.x), ("y", seg.y)):
            if (coord * n).denominator != 1:
                violations.append(
                    f"segment {vid!r} {name}={coord} is not a multiple of 1/{n}"
                )
    x0, y0, x1, y1 = rep.bounding_box()
    if x1 - x0 > n + 1:
        violations.append(f"bounding box width {x1 - x0} exceeds {n + 1}")
    if y1 - y0 > n + 1:
        violations.append(f"bounding box height {y1 - y0} exceeds {n + 1}")
    for axis, get in ((Axis.X, lambda s: s.x), (Axis.Y, lambda s: s.y)):
        seen: Dict[Fraction, object] = {}
        for vid, seg in sorted(rep.items(), key=lambda kv: repr(kv[0])):
            f = _frac_part(get(seg))
            if f in seen:
                violations.append(
                    f"segments {seen[f]!r} and {vid!r} share {axis.value}-fractional part {f}"
                )
            else:
                seen[f] = vid
    return not violations, violations


def canonicalize(rep: Representation) -> Representation:
    """Perturb, sweep x, sweep y; the result is canonical and has the same
    intersection graph."""
    if not rep.unit_mode:
        raise NotUnitMode("canonicalize is defined for unit representations only")
    if len(rep) == 0:
        return rep
    before = extract_graph(rep)
    out = perturb_to_general_position(rep)
    out = sweep_axis(out, Axis.X)
    out = sweep_axis(out, Axis.Y)
    ok, violations = check_canonical(out)
    if not ok:
        raise CanonicalizationError("sweep produced a non-canonical result: " + "; ".join(violations))
    if extract_graph(out) != before:
        raise CanonicalizationError("canonicalization changed the intersection graph")
    return out
