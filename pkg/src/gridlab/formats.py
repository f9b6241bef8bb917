"""Text formats for graphs, representations, and SAT instances.

Graph file:       line "n m", then m lines "u v" (0-based ids).
Representation:   one line per vertex: "id H|V xnum/xden ynum/yden lnum/lden".
Instance file:    DIMACS CNF extended with rotation lines
                  "r v c1 c2 [c3 [c4]]"  (clockwise clauses around variable v)
                  "q c v1 v2 v3"         (clockwise variables around clause c)
                  "e id x y"             (embedding point; id>0 variable,
                                          id<0 clause -id; x,y as p/q)
All formats tolerate blank lines and '#' comments; parsers reject anything
they could not round-trip. Rationals are always serialized as "p/q".
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .geometry import Graph, Orientation, Representation, Segment
from .sat import SatInstance

_RATIONAL_RE = re.compile(r"^(-?\d+)/(\d+)$")


class ParseError(Exception):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(token: str, line: Optional[int] = None) -> Fraction:
    m = _RATIONAL_RE.match(token)
    if not m:
        raise ParseError(f"malformed rational {token!r}, expected p/q", line)
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise ParseError(f"zero denominator in {token!r}", line)
    return Fraction(num, den)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


# ---------------------------------------------------------------- graphs

def emit_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("graph header must be 'n m'", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("non-integer graph header", lineno)
    if n < 0 or m < 0:
        raise ParseError("negative counts in graph header", lineno)
    g = Graph(n)
    seen = set()
    edge_lines = lines[1:]
    if len(edge_lines) != m:
        raise ParseError(f"expected {m} edge lines, found {len(edge_lines)}", lineno)
    for lineno, line in edge_lines:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer vertex id", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range in edge ({u},{v})", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge ({u},{v})", lineno)
        seen.add(key)
        g.add_edge(u, v)
    return g


# ------------------------------------------------------- representations

def emit_rep(rep: Representation) -> str:
    lines = []
    for vid in sorted(rep.vertex_ids()):
        seg = rep[vid]
        lines.append(
            f"{vid} {seg.orientation.value} "
            f"{format_rational(seg.x)} {format_rational(seg.y)} {format_rational(seg.length)}"
        )
    return "\n".join(lines) + ("\n" if lines else "")


def parse_rep(text: str) -> Representation:
    segments: Dict[int, Segment] = {}
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 5:
            raise ParseError("representation line must be 'id H|V x y len'", lineno)
        try:
            vid = int(parts[0])
        except ValueError:
            raise ParseError(f"non-integer vertex id {parts[0]!r}", lineno)
        if parts[1] not in ("H", "V"):
            raise ParseError(f"orientation must be H or V, got {parts[1]!r}", lineno)
        if vid in segments:
            raise ParseError(f"duplicate vertex id {vid}", lineno)
        x = parse_rational(parts[2], lineno)
        y = parse_rational(parts[3], lineno)
        length = parse_rational(parts[4], lineno)
        if length <= 0:
            raise ParseError(f"non-positive length {parts[4]}", lineno)
        segments[vid] = Segment(Orientation(parts[1]), x, y, length)
    return Representation(segments)


# ------------------------------------------------------------- instances

def emit_instance(inst: SatInstance) -> str:
    lines = [f"p cnf {inst.var_count} {len(inst.clauses)}"]
    for clause in inst.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    for v in sorted(inst.var_rotation):
        cids = " ".join(str(ci + 1) for ci, _slot in inst.var_rotation[v])
        lines.append(f"r {v} {cids}")
    for ci in sorted(inst.clause_rotation):
        vs = " ".join(str(v) for v in inst.clause_rotation[ci])
        lines.append(f"q {ci + 1} {vs}")
    for v in sorted(inst.var_embedding):
        x, y = inst.var_embedding[v]
        lines.append(f"e {v} {format_rational(x)} {format_rational(y)}")
    for ci in sorted(inst.clause_embedding):
        x, y = inst.clause_embedding[ci]
        lines.append(f"e {-(ci + 1)} {format_rational(x)} {format_rational(y)}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> SatInstance:
    var_count = None
    clause_count = None
    clauses: List[Tuple[int, ...]] = []
    header_line = None
    var_rotation: Dict[int, List[int]] = {}
    clause_rotation: Dict[int, List[int]] = {}
    var_rot_lines: Dict[int, int] = {}
    clause_rot_lines: Dict[int, int] = {}
    var_embedding = {}
    clause_embedding = {}

    for lineno, line in _content_lines(text):
        parts = line.split()
        tag = parts[0]
        if tag == "c":
            continue
        if tag == "p":
            if var_count is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("problem line must be 'p cnf nvars nclauses'", lineno)
            try:
                var_count, clause_count = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts in problem line", lineno)
            header_line = lineno
        elif tag == "r":
            if len(parts) < 3:
                raise ParseError("rotation line must be 'r v c1 c2 ...'", lineno)
            try:
                v = int(parts[1])
                cids = [int(t) for t in parts[2:]]
            except ValueError:
                raise ParseError("non-integer id in rotation line", lineno)
            if v in var_rotation:
                raise ParseError(f"duplicate rotation for variable {v}", lineno)
            var_rotation[v] = [ci - 1 for ci in cids]
            var_rot_lines[v] = lineno
        elif tag == "q":
            if len(parts) < 3:
                raise ParseError("clause rotation line must be 'q c v1 v2 ...'", lineno)
            try:
                ci = int(parts[1]) - 1
                vs = [int(t) for t in parts[2:]]
            except ValueError:
                raise ParseError("non-integer id in clause rotation line", lineno)
            if ci in clause_rotation:
                raise ParseError(f"duplicate rotation for clause {ci + 1}", lineno)
            clause_rotation[ci] = vs
            clause_rot_lines[ci] = lineno
        elif tag == "e":
            if len(parts) != 4:
                raise ParseError("embedding line must be 'e id x y'", lineno)
            try:
                eid = int(parts[1])
            except ValueError:
                raise ParseError("non-integer id in embedding line", lineno)
            x = parse_rational(parts[2], lineno)
            y = parse_rational(parts[3], lineno)
            if eid > 0:
                var_embedding[eid] = (x, y)
            elif eid < 0:
                clause_embedding[-eid - 1] = (x, y)
            else:
                raise ParseError("embedding id must be nonzero", lineno)
        else:
            # clause line
            if var_count is None:
                raise ParseError("clause before problem line", lineno)
            try:
                lits = [int(t) for t in parts]
            except ValueError:
                raise ParseError(f"non-integer literal in clause {line!r}", lineno)
            if not lits or lits[-1] != 0:
                raise ParseError("clause line must end with 0", lineno)
            lits = lits[:-1]
            if not lits:
                raise ParseError("empty clause", lineno)
            if len(lits) > 3:
                raise ParseError(f"clause has {len(lits)} literals, at most 3 allowed", lineno)
            if any(lit == 0 or abs(lit) > var_count for lit in lits):
                raise ParseError("literal out of range", lineno)
            if len({abs(l) for l in lits}) != len(lits):
                raise ParseError("repeated variable within clause", lineno)
            clauses.append(tuple(lits))

    if var_count is None:
        raise ParseError("missing problem line")
    if clause_count is not None and len(clauses) != clause_count:
        raise ParseError(
            f"problem line announces {clause_count} clauses, found {len(clauses)}",
            header_line,
        )

    inst = SatInstance(var_count, clauses)

    # Cross-check rotation lines against clause membership; a variable listing
    # a clause that does not contain it (or vice versa) cites both lines.
    for v, cids in var_rotation.items():
        if not (1 <= v <= var_count):
            raise ParseError(f"rotation for unknown variable {v}", var_rot_lines[v])
        rot = []
        for ci in cids:
            if not (0 <= ci < len(clauses)):
                raise ParseError(
                    f"variable {v} rotation cites unknown clause {ci + 1}", var_rot_lines[v]
                )
            slot = next((s for s, lit in enumerate(clauses[ci]) if abs(lit) == v), None)
            if slot is None:
                other = clause_rot_lines.get(ci)
                msg = f"variable {v} rotation lists clause {ci + 1}, which omits it"
                if other is not None:
                    msg += f"; clause rotation at line {other}"
                raise ParseError(msg, var_rot_lines[v])
            rot.append((ci, slot))
        inst.var_rotation[v] = rot
    for ci, vs in clause_rotation.items():
        if not (0 <= ci < len(clauses)):
            raise ParseError(f"rotation for unknown clause {ci + 1}", clause_rot_lines[ci])
        members = {abs(lit) for lit in clauses[ci]}
        for v in vs:
            if v not in members:
                other = var_rot_lines.get(v)
                msg = f"clause {ci + 1} rotation lists variable {v}, which it does not contain"
                if other is not None:
                    msg += f"; variable rotation at line {other}"
                raise ParseError(msg, clause_rot_lines[ci])
        if set(vs) != members:
            raise ParseError(
                f"clause {ci + 1} rotation omits some of its variables", clause_rot_lines[ci]
            )
        inst.clause_rotation[ci] = list(vs)

    inst.var_embedding = var_embedding
    inst.clause_embedding = clause_embedding
    inst.default_rotations()
    return inst
