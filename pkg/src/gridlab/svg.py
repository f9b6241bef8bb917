"""Deterministic SVG rendering of segment representations."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .geometry import Representation

DEFAULT_SCALE = Fraction(64)

ROLE_COLORS = {
    "ClausePairRed": "#c0392b",
    "ClausePairBlue": "#2a5db0",
    "RedPathInner": "#e08283",
    "BluePathInner": "#7fa8e0",
    "AnchorPathInner": "#8e44ad",
    "DummyPathInner": "#b7950b",
    "ClauseCycle": "#555555",
    "VarA1": "#1e8449",
    "VarA2": "#117864",
    "SplitterC": "#d35400",
}
DEFAULT_COLOR = "#000000"
STROKE_WIDTH = Fraction(3)
PAD = Fraction(1, 2)


def _fmt(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{float(q):.4f}"


def render_svg(
    rep: Representation,
    roles: Optional[Dict[object, str]] = None,
    scale: Fraction = DEFAULT_SCALE,
) -> str:
    """One line element per segment, colored by role class; byte-for-byte
    deterministic for equal inputs."""
    scale = Fraction(scale)
    roles = roles or {}
    if len(rep) == 0:
        return (
            '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1">\n</svg>\n'
        )
    x0, y0, x1, y1 = rep.bounding_box()
    x0 -= PAD
    y0 -= PAD
    x1 += PAD
    y1 += PAD
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def sx(x):
        return (x - x0) * scale

    def sy(y):
        # svg y grows downward
        return (y1 - y) * scale

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    ]
    for vid in sorted(rep.vertex_ids(), key=repr):
        seg = rep[vid]
        (ax, bx), (ay, by) = seg.x_interval, seg.y_interval
        color = ROLE_COLORS.get(roles.get(vid, ""), DEFAULT_COLOR)
        lines.append(
            f'<line x1="{_fmt(sx(ax))}" y1="{_fmt(sy(ay))}" '
            f'x2="{_fmt(sx(bx))}" y2="{_fmt(sy(by))}" '
            f'stroke="{color}" stroke-width="{_fmt(STROKE_WIDTH)}" '
            f'stroke-linecap="round"><title>{vid}</title></line>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
