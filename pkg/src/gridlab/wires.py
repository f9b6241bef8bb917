"""Unit-segment staircase wires.

A wire realizes a graph path between two terminal segments as a chain of
unit segments in which consecutive segments cross and nothing else touches.
It is specified by its crossing points c_0..c_n: c_0 lies on the start
terminal, c_n on the end terminal, and c_i is the crossing of inner
segments i and i+1. Consecutive crossings differ in exactly one coordinate,
alternating axes along the wire; each inner segment is centered on its two
crossings.

A uniform diagonal run with per-axis pitches in (1/3, 1) is self-avoiding:
the nearest non-consecutive segments stay clear by (3p-1)/2. Routes are
composed of one or two such runs (an elbow), solved exactly in rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .geometry import Orientation, Segment, intersects

F = Fraction
Point = Tuple[Fraction, Fraction]

PITCH_MIN = F(1, 3)
PITCH_MAX = F(1)


class RoutingError(ValueError):
    pass


def _axis_of(step: Tuple[Fraction, Fraction]) -> str:
    dx, dy = step
    if dx != 0 and dy == 0:
        return "x"
    if dy != 0 and dx == 0:
        return "y"
    raise RoutingError(f"crossing step must be axis-aligned, got {step}")


def realize(crossings: Sequence[Point]) -> List[Segment]:
    """Inner segments of a wire from its crossing points."""
    segs: List[Segment] = []
    pts = [(F(x), F(y)) for x, y in crossings]
    for i in range(1, len(pts)):
        (x0, y0), (x1, y1) = pts[i - 1], pts[i]
        dx, dy = x1 - x0, y1 - y0
        axis = _axis_of((dx, dy))
        if not PITCH_MIN < abs(dx + dy) < PITCH_MAX:
            raise RoutingError(f"pitch {dx + dy} out of range at step {i}")
        if axis == "x":
            anchor_x = (x0 + x1) / 2 - F(1, 2)
            segs.append(Segment(Orientation.H, anchor_x, y0))
        else:
            anchor_y = (y0 + y1) / 2 - F(1, 2)
            segs.append(Segment(Orientation.V, x0, anchor_y))
    # local sanity: consecutive segments cross, distance-2 do not
    for i in range(1, len(segs)):
        assert intersects(segs[i - 1], segs[i])
        if i >= 2:
            assert not intersects(segs[i - 2], segs[i])
    return segs


def straight_crossings(
    c0: Point, cn: Point, n: int, first_axis: str
) -> List[Point]:
    """Crossing points of a uniform diagonal run with n advances."""
    if n < 1:
        raise RoutingError("need at least one advance")
    counts = {"x": 0, "y": 0}
    axes = []
    axis = first_axis
    for _ in range(n):
        axes.append(axis)
        counts[axis] += 1
        axis = "y" if axis == "x" else "x"
    dx = F(cn[0]) - F(c0[0])
    dy = F(cn[1]) - F(c0[1])
    for delta, count, label in ((dx, counts["x"], "x"), (dy, counts["y"], "y")):
        if count == 0:
            if delta != 0:
                raise RoutingError(f"no {label}-advances but displacement {delta}")
            continue
        if not PITCH_MIN < abs(delta) / count < PITCH_MAX:
            raise RoutingError(
                f"{label}-pitch {delta}/{count} out of (1/3, 1) range"
            )
    px = dx / counts["x"] if counts["x"] else F(0)
    py = dy / counts["y"] if counts["y"] else F(0)
    pts = [(F(c0[0]), F(c0[1]))]
    for a in axes:
        x, y = pts[-1]
        pts.append((x + px, y) if a == "x" else (x, y + py))
    assert pts[-1] == (F(cn[0]), F(cn[1]))
    return pts


def _pitch_candidates() -> List[Fraction]:
    vals = [F(k, 24) for k in range(9, 24)]
    return vals + [-v for v in vals]


def elbow_crossings(
    c0: Point, cn: Point, n: int, first_axis: str, split: int
) -> Optional[List[Point]]:
    """Two uniform runs joined after `split` advances; pitches solved
    per-axis. Returns None if the split admits no in-range pitches."""
    axes = []
    axis = first_axis
    for _ in range(n):
        axes.append(axis)
        axis = "y" if axis == "x" else "x"
    n1 = {"x": axes[:split].count("x"), "y": axes[:split].count("y")}
    n2 = {"x": axes[split:].count("x"), "y": axes[split:].count("y")}
    delta = {"x": F(cn[0]) - F(c0[0]), "y": F(cn[1]) - F(c0[1])}
    pitch1 = {}
    pitch2 = {}
    for ax in ("x", "y"):
        if n1[ax] == 0 and n2[ax] == 0:
            if delta[ax] != 0:
                return None
            pitch1[ax] = pitch2[ax] = F(0)
            continue
        if n1[ax] == 0 or n2[ax] == 0:
            count = n1[ax] + n2[ax]
            p = delta[ax] / count
            if not PITCH_MIN < abs(p) < PITCH_MAX:
                return None
            pitch1[ax] = pitch2[ax] = p
            continue
        found = None
        for p1 in _pitch_candidates():
            p2 = (delta[ax] - n1[ax] * p1) / n2[ax]
            if PITCH_MIN < abs(p2) < PITCH_MAX:
                found = (p1, p2)
                break
        if found is None:
            return None
        pitch1[ax], pitch2[ax] = found
    pts = [(F(c0[0]), F(c0[1]))]
    for i, ax in enumerate(axes):
        p = (pitch1 if i < split else pitch2)[ax]
        x, y = pts[-1]
        pts.append((x + p, y) if ax == "x" else (x, y + p))
    if pts[-1] != (F(cn[0]), F(cn[1])):
        return None
    return pts


def _snake_axis_sequences(
    delta: Fraction, count: int, cap: int = 5
) -> List[List[Fraction]]:
    """Pitch sequences of the given length summing to `delta`, every pitch
    in range, back-and-forth sign changes interleaved evenly so the wire
    oscillates in a narrow band. Small-span sequences first."""
    if count == 0:
        return [[]] if delta == 0 else []
    sign = 1 if delta >= 0 else -1
    mag = abs(delta)
    out: List[Tuple[Fraction, List[Fraction]]] = []
    for fwd in range(count, (count + 1) // 2 - 1, -1):
        back = count - fwd
        if back == 0:
            p = mag / fwd
            if PITCH_MIN < p < PITCH_MAX:
                out.append((p, [sign * p] * fwd))
            continue
        for p in [F(k, 24) for k in range(9, 24)]:
            q = (fwd * p - mag) / back
            if not PITCH_MIN < q < PITCH_MAX:
                continue
            # interleave: spread the `back` reversals evenly among advances
            seq: List[Fraction] = []
            slots = sorted(
                range(count), key=lambda i: ((i * back) % count, i)
            )[:back]
            rev = set(slots)
            run = F(0)
            span = F(0)
            for i in range(count):
                step = -sign * q if i in rev else sign * p
                seq.append(step)
                run += step
                span = max(span, abs(run))
            out.append((span, seq))
            break
    out.sort(key=lambda t: t[0])
    return [seq for _span, seq in out[:cap]]


def snake_crossings(
    c0: Point, cn: Point, n: int, first_axis: str
) -> List[List[Point]]:
    """Crossing-point candidates for an n-advance wire whose per-axis
    sweeps may reverse several times, staying near the chord."""
    nx = sum(1 for i in range(n) if (first_axis == "x") == (i % 2 == 0))
    ny = n - nx
    dx, dy = F(cn[0]) - F(c0[0]), F(cn[1]) - F(c0[1])
    xs_opts = _snake_axis_sequences(dx, nx)
    ys_opts = _snake_axis_sequences(dy, ny)
    candidates: List[List[Point]] = []
    for xs in xs_opts:
        for ys in ys_opts:
            pts = [(F(c0[0]), F(c0[1]))]
            xi = yi = 0
            axis = first_axis
            for _ in range(n):
                x, y = pts[-1]
                if axis == "x":
                    pts.append((x + xs[xi], y))
                    xi += 1
                else:
                    pts.append((x, y + ys[yi]))
                    yi += 1
                axis = "y" if axis == "x" else "x"
            if pts[-1] == (F(cn[0]), F(cn[1])):
                candidates.append(pts)
    return candidates


_DFS_PITCHES = [F(3, 8), F(7, 16), F(1, 2), F(9, 16), F(5, 8), F(3, 4), F(7, 8)]


def dfs_crossings(
    c0: Point,
    cn: Point,
    n: int,
    first_axis: str,
    seg_ok=None,
    region: Optional[Tuple[Fraction, Fraction, Fraction, Fraction]] = None,
    budget: int = 4000,
) -> Optional[List[Point]]:
    """Depth-first search for an n-advance wire from c0 to cn.

    Pitches are chosen greedily toward the target with backtracking; the
    wire stays inside `region` (xlo, xhi, ylo, yhi) if given, and every
    new segment must satisfy `seg_ok(index, segment)` plus self-avoidance
    against the wire built so far."""
    c0 = (F(c0[0]), F(c0[1]))
    cn = (F(cn[0]), F(cn[1]))
    axes = [
        "x" if (first_axis == "x") == (i % 2 == 0) else "y" for i in range(n)
    ]
    rem_after = []  # advances of the same axis remaining after step i
    for i in range(n):
        rem_after.append(sum(1 for j in range(i + 1, n) if axes[j] == axes[i]))
    pts: List[Point] = [c0]
    segs: List[Segment] = []
    nodes = [0]

    def candidates(i: int) -> List[Fraction]:
        ax = axes[i]
        cur = pts[-1][0] if ax == "x" else pts[-1][1]
        tgt = cn[0] if ax == "x" else cn[1]
        delta = tgt - cur
        rem = rem_after[i]
        if rem == 0:
            return [delta] if PITCH_MIN < abs(delta) < PITCH_MAX else []
        ideal = delta / (rem + 1)
        opts = list(_DFS_PITCHES) + [-p for p in _DFS_PITCHES]
        if PITCH_MIN < abs(ideal) < PITCH_MAX:
            opts.append(ideal)
        seen = set()
        uniq = []
        for p in sorted(opts, key=lambda p: abs(p - ideal)):
            if p in seen:
                continue
            seen.add(p)
            nd = delta - p
            if abs(nd) >= rem * PITCH_MAX:
                continue
            if rem == 1 and not PITCH_MIN < abs(nd) < PITCH_MAX:
                continue
            uniq.append(p)
        return uniq

    def step(i: int) -> bool:
        if i == n:
            return True
        for p in candidates(i):
            nodes[0] += 1
            if nodes[0] > budget:
                return False
            x, y = pts[-1]
            nxt = (x + p, y) if axes[i] == "x" else (x, y + p)
            if region is not None and not (
                region[0] <= nxt[0] <= region[1]
                and region[2] <= nxt[1] <= region[3]
            ):
                continue
            if axes[i] == "x":
                seg = Segment(Orientation.H, (x + nxt[0]) / 2 - F(1, 2), y)
            else:
                seg = Segment(Orientation.V, x, (y + nxt[1]) / 2 - F(1, 2))
            bad = False
            for j in range(len(segs) - 1):
                if _parallel_overlap(segs[j], seg) or intersects(segs[j], seg):
                    bad = True
                    break
            if not bad and segs and _parallel_overlap(segs[-1], seg):
                bad = True
            if bad:
                continue
            if seg_ok is not None and not seg_ok(i, seg):
                continue
            pts.append(nxt)
            segs.append(seg)
            if step(i + 1):
                return True
            pts.pop()
            segs.pop()
            if nodes[0] > budget:
                return False
        return False

    if step(0):
        return pts
    return None


def _parallel_overlap(a: Segment, b: Segment) -> bool:
    if a.orientation is not b.orientation:
        return False
    if a.orientation is Orientation.H:
        if a.y_interval[0] != b.y_interval[0]:
            return False
        lo = max(a.x_interval[0], b.x_interval[0])
        hi = min(a.x_interval[1], b.x_interval[1])
    else:
        if a.x_interval[0] != b.x_interval[0]:
            return False
        lo = max(a.y_interval[0], b.y_interval[0])
        hi = min(a.y_interval[1], b.y_interval[1])
    return lo < hi


def _self_avoiding(segs: Sequence[Segment]) -> bool:
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if _parallel_overlap(segs[i], segs[j]):
                return False
            if intersects(segs[i], segs[j]) != (j == i + 1):
                return False
    return True


def _clears_obstacles(
    segs: Sequence[Segment],
    obstacles: Sequence[Segment],
    allowed: frozenset,
) -> bool:
    for oi, obs in enumerate(obstacles):
        for si, seg in enumerate(segs):
            if (oi, si) in allowed:
                if not intersects(obs, seg):
                    return False
                continue
            if _parallel_overlap(obs, seg) or intersects(obs, seg):
                return False
    return True


def auto_route(
    c0: Point,
    cn: Point,
    n: int,
    first_axis: str,
    obstacles: Sequence[Segment] = (),
    allowed: Sequence[Tuple[int, int]] = (),
) -> List[Point]:
    """Straight run if possible, else the first workable elbow split.

    `obstacles` are segments the wire must stay clear of, except for the
    (obstacle_index, inner_segment_index) contacts listed in `allowed`,
    which must occur (typically the two terminals at the wire's ends).
    """
    allowed_set = frozenset(
        (oi, si if si >= 0 else n + si) for oi, si in allowed
    )

    def candidates():
        try:
            yield straight_crossings(c0, cn, n, first_axis)
        except RoutingError:
            pass
        for split in range(1, n):
            pts = elbow_crossings(c0, cn, n, first_axis, split)
            if pts is not None:
                yield pts

    # pitch-range holds per run, but a sign flip at the joint can fold the
    # wire onto itself; accept only fully self-avoiding, obstacle-clear runs
    for pts in candidates():
        try:
            segs = realize(pts)
        except (RoutingError, AssertionError):
            continue
        if not _self_avoiding(segs):
            continue
        if not _clears_obstacles(segs, obstacles, allowed_set):
            continue
        return pts
    raise RoutingError(f"no route with {n} advances from {c0} to {cn}")
