"""Builds the graph G(F) from a rotation-annotated 3-SAT(4) instance.

Structure per clause: three adjacent vertex pairs (one per literal, in the
clause's clockwise rotation order), an enclosing long cycle anchored by
paths from two distinguished pair vertices, and five internal connector
paths. Structure per variable depends on the variant:

  UGIG5   - two adjacent vertices a1/a2 carrying four occurrence pairs
            (degree 5);
  GIG4    - a chain of four adjacent splitter pairs, one occurrence pair
            each, synchronized by paths between consecutive chain pairs
            (degree 4);
  STRING8 - the GIG4 chain plus a degradation vertex c joined by paths to
            all eight chain vertices (degree 8). Graph side only; this
            gadget is provisional.

Every path length is the least value >= the girth parameter with the parity
forced by bipartiteness and by the convention that all red-labeled vertices
share one bipartition class. Variables with only three occurrences get a
dummy fourth occurrence whose pair attaches to anchor vertices tied by
connector paths to the midpoints of the first and third occurrence's red
paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import Graph
from .sat import SatInstance

VARIANTS = ("UGIG5", "GIG4", "STRING8")

ROLE_VAR_A1 = "VarA1"
ROLE_VAR_A2 = "VarA2"
ROLE_CLAUSE_CYCLE = "ClauseCycle"
ROLE_PAIR_RED = "ClausePairRed"
ROLE_PAIR_BLUE = "ClausePairBlue"
ROLE_RED_INNER = "RedPathInner"
ROLE_BLUE_INNER = "BluePathInner"
ROLE_ANCHOR_INNER = "AnchorPathInner"
ROLE_DUMMY_INNER = "DummyPathInner"
ROLE_SPLITTER_C = "SplitterC"


class ArityError(ValueError):
    pass


class GirthTooSmall(ValueError):
    pass


class UnsupportedVariant(ValueError):
    pass


class InstanceNotBuildable(ValueError):
    pass


@dataclass
class InstanceReport:
    violations: List[str] = field(default_factory=list)
    low_occurrence: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.low_occurrence

    @property
    def buildable_relaxed(self) -> bool:
        return not self.violations


def validate_instance(inst: SatInstance) -> InstanceReport:
    report = InstanceReport()
    for ci, clause in enumerate(inst.clauses):
        if not 1 <= len(clause) <= 3:
            report.violations.append(f"clause {ci}: arity {len(clause)} out of range")
        if len({abs(l) for l in clause}) != len(clause):
            report.violations.append(f"clause {ci}: repeated variable")
        for lit in clause:
            if not 1 <= abs(lit) <= inst.var_count:
                report.violations.append(f"clause {ci}: literal {lit} out of range")
    for v in inst.variables():
        occs = inst.occurrences(v)
        if len(occs) > 4:
            report.violations.append(f"variable {v}: {len(occs)} occurrences (max 4)")
        elif len(occs) < 3:
            report.low_occurrence.append(v)
    # rotation consistency
    for v, rot in inst.var_rotation.items():
        if sorted(rot) != sorted(inst.occurrences(v)):
            report.violations.append(
                f"variable {v}: rotation {rot} does not match occurrences"
            )
    for ci, rot in inst.clause_rotation.items():
        clause_vars = [abs(l) for l in inst.clauses[ci]]
        if sorted(rot) != sorted(clause_vars):
            report.violations.append(
                f"clause {ci}: rotation {rot} does not match variables {clause_vars}"
            )
    return report


@dataclass
class OrderingTriple:
    red_before_blue: Tuple[bool, bool, bool]

    def __post_init__(self):
        self.red_before_blue = tuple(bool(b) for b in self.red_before_blue)
        if len(self.red_before_blue) != 3:
            raise ValueError("exactly three flags required")


def fit_length(g: int, same_class: bool) -> int:
    """Least path length >= g whose parity keeps (same_class) endpoints in
    the same bipartition class (even) or opposite classes (odd)."""
    want = 0 if same_class else 1
    return g if g % 2 == want else g + 1


class _Builder:
    """Graph under construction with string-named vertices and tracked
    bipartition classes."""

    def __init__(self):
        self.adj: Dict[str, set] = {}
        self.cls: Dict[str, int] = {}
        self.roles: Dict[str, str] = {}

    def vertex(self, name: str, cls: int, role: str) -> str:
        if name in self.adj:
            raise ValueError(f"duplicate vertex {name}")
        self.adj[name] = set()
        self.cls[name] = cls
        self.roles[name] = role
        return name

    def edge(self, u: str, v: str):
        if self.cls[u] == self.cls[v]:
            raise ValueError(f"edge {u}-{v} inside one bipartition class")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def path(self, u: str, v: str, length: int, inner_role: str) -> List[str]:
        """Path of `length` edges between existing u and v; returns the
        inner vertex names in order."""
        assert length >= 1
        same = self.cls[u] == self.cls[v]
        if length % 2 != (0 if same else 1):
            raise ValueError(f"path {u}-{v} length {length} breaks bipartiteness")
        inner = []
        prev = u
        for i in range(length - 1):
            name = f"{u}~{v}#{i}"
            self.vertex(name, 1 - self.cls[prev], inner_role)
            self.edge(prev, name)
            inner.append(name)
            prev = name
        self.edge(prev, v)
        return inner

    def degree(self, name: str) -> int:
        return len(self.adj[name])

    def finalize(self) -> Tuple[Graph, Dict[str, int]]:
        names = sorted(self.adj)
        ids = {name: i for i, name in enumerate(names)}
        g = Graph(len(names))
        for u in names:
            for v in self.adj[u]:
                if ids[u] < ids[v]:
                    g.add_edge(ids[u], ids[v])
        return g, ids


def color_clause(clause: Sequence[int], clause_rotation: Sequence[int]) -> Dict[int, Dict[str, str]]:
    """Red/blue labels for the three vertex pairs of a clause gadget.

    Pairs are indexed 1..3 by the clockwise rotation order of their
    variables. Each pair has two structural slots: 't' (the distinguished
    slot: anchored to the cycle for pairs 2 and 3, the connector hub for
    pair 1... for pair 1 the distinguished slot 's' is the one whose
    connector path reaches pair 3's anchored slot). Returns per pair
    {'red': slot, 'blue': slot}.
    """
    if len(clause) != 3:
        raise ArityError(f"clause gadget needs exactly 3 literals, got {len(clause)}")
    sign = {}
    for lit in clause:
        sign[abs(lit)] = lit > 0
    if sorted(sign) != sorted(clause_rotation) or len(clause_rotation) != 3:
        raise ArityError("rotation must order exactly the clause's variables")
    labels: Dict[int, Dict[str, str]] = {}
    positive = [sign[v] for v in clause_rotation]  # by pair index 0..2
    # pair 3: anchored slot 't' red iff literal positive
    labels[3] = {"red": "t", "blue": "s"} if positive[2] else {"red": "s", "blue": "t"}
    # pair 2: the opposite rule for its anchored slot
    labels[2] = {"red": "s", "blue": "t"} if positive[1] else {"red": "t", "blue": "s"}
    # pair 1: slot 's' (connected to pair 3's anchored slot) red iff positive
    labels[1] = {"red": "s", "blue": "t"} if positive[0] else {"red": "t", "blue": "s"}
    return labels


# structural connector paths inside a clause gadget: five paths between
# pair slots; (pair, slot) endpoints
CLAUSE_INTERNAL_PATHS: Tuple[Tuple[Tuple[int, str], Tuple[int, str]], ...] = (
    ((1, "s"), (3, "t")),
    ((1, "s"), (2, "s")),
    ((1, "t"), (3, "s")),
    ((1, "t"), (2, "t")),
    ((2, "s"), (3, "s")),
)


@dataclass
class ClauseFragment:
    builder: _Builder
    ports: Dict[int, Dict[str, str]]  # pair index -> {'red': name, 'blue': name}
    girth_param: int
    labels: Dict[int, Dict[str, str]]


def build_clause_gadget(
    clause: Sequence[int],
    g: int,
    variant: str = "UGIG5",
    clause_rotation: Optional[Sequence[int]] = None,
    prefix: str = "c",
    builder: Optional[_Builder] = None,
) -> ClauseFragment:
    """Clause gadget fragment: 3 adjacent pairs, enclosing cycle with two
    anchor paths, five connector paths, all paths of length >= g. The
    STRING8 clause gadget reuses the same topology (provisional; the
    degree-8 vertex lives in the variable gadget)."""
    if variant not in VARIANTS:
        raise UnsupportedVariant(variant)
    if g < 3:
        raise GirthTooSmall(f"girth parameter must be at least 3, got {g}")
    rotation = list(clause_rotation) if clause_rotation else [abs(l) for l in clause]
    labels = color_clause(clause, rotation)
    b = builder if builder is not None else _Builder()

    def name(pair: int, slot: str) -> str:
        return f"{prefix}:p{pair}{slot}"

    for pair in (1, 2, 3):
        red_slot = labels[pair]["red"]
        for slot in ("s", "t"):
            role = ROLE_PAIR_RED if slot == red_slot else ROLE_PAIR_BLUE
            b.vertex(name(pair, slot), 0 if slot == red_slot else 1, role)
        b.edge(name(pair, "s"), name(pair, "t"))

    # enclosing cycle: two attachment vertices joined by two long arcs
    ca = b.vertex(f"{prefix}:cycA", 0, ROLE_CLAUSE_CYCLE)
    cb = b.vertex(f"{prefix}:cycB", 0, ROLE_CLAUSE_CYCLE)
    b.path(ca, cb, fit_length(g, True), ROLE_CLAUSE_CYCLE)
    # second arc needs a detour vertex name; reuse path() with a bridge node
    mid = b.vertex(f"{prefix}:cycM", 1, ROLE_CLAUSE_CYCLE)
    b.path(ca, mid, fit_length(g, False), ROLE_CLAUSE_CYCLE)
    b.path(mid, cb, fit_length(g, False), ROLE_CLAUSE_CYCLE)

    # anchor paths from the distinguished slots of pairs 3 and 2
    for pair, cyc in ((3, ca), (2, cb)):
        t = name(pair, "t")
        b.path(t, cyc, fit_length(g, b.cls[t] == b.cls[cyc]), ROLE_ANCHOR_INNER)

    for (pa, sa), (pb, sb) in CLAUSE_INTERNAL_PATHS:
        u, v = name(pa, sa), name(pb, sb)
        inner_role = ROLE_RED_INNER if b.roles[u] == ROLE_PAIR_RED else ROLE_BLUE_INNER
        b.path(u, v, fit_length(g, b.cls[u] == b.cls[v]), inner_role)

    ports = {
        pair: {
            "red": name(pair, labels[pair]["red"]),
            "blue": name(pair, labels[pair]["blue"]),
        }
        for pair in (1, 2, 3)
    }
    return ClauseFragment(b, ports, g, labels)


@dataclass
class GFGraph:
    graph: Graph
    roles: Dict[int, str]
    occurrence_index: Dict[Tuple[int, int], Tuple[int, int]]
    girth_param: int
    variant: str
    names: Dict[str, int] = field(default_factory=dict)
    occurrence_paths: Dict[Tuple[int, int], Dict[str, List[int]]] = field(
        default_factory=dict
    )
    clause_ports: Dict[int, Dict[int, Dict[str, int]]] = field(default_factory=dict)
    instance: Optional[SatInstance] = None


def _embedding_scale(inst: SatInstance) -> Optional[Dict[Tuple[int, int], Fraction]]:
    """Relative occurrence-edge lengths from the optional straight-line
    embedding; Chebyshev distance keeps everything rational."""
    if not inst.var_embedding or not inst.clause_embedding:
        return None
    dist = {}
    for v in inst.variables():
        if v not in inst.var_embedding:
            return None
        vx, vy = inst.var_embedding[v]
        for ci, _slot in inst.occurrences(v):
            if ci not in inst.clause_embedding:
                return None
            cx, cy = inst.clause_embedding[ci]
            dist[(v, ci)] = max(abs(vx - cx), abs(vy - cy))
    shortest = min(d for d in dist.values() if d > 0)
    return {k: d / shortest if d > 0 else Fraction(1) for k, d in dist.items()}


def _occ_length(g: int, same_class: bool, scale: Optional[Fraction]) -> int:
    base = g if scale is None else max(g, math.ceil(g * scale))
    want = 0 if same_class else 1
    return base if base % 2 == want else base + 1


def build_gf(
    inst: SatInstance,
    g: int,
    variant: str = "UGIG5",
    relaxed: bool = False,
) -> GFGraph:
    if variant not in VARIANTS:
        raise UnsupportedVariant(variant)
    inst = inst.default_rotations()
    report = validate_instance(inst)
    if not (report.ok or (relaxed and report.buildable_relaxed)):
        raise InstanceNotBuildable("; ".join(report.violations + [
            f"variable {v} has fewer than 3 occurrences" for v in report.low_occurrence
        ]))
    scale = _embedding_scale(inst)
    b = _Builder()

    fragments: Dict[int, ClauseFragment] = {}
    for ci, clause in enumerate(inst.clauses):
        fragments[ci] = build_clause_gadget(
            clause, g, variant, inst.clause_rotation[ci], prefix=f"c{ci}", builder=b
        )

    occurrence_names: Dict[Tuple[int, int], Tuple[str, str]] = {}
    occ_paths: Dict[Tuple[int, int], Dict[str, List[str]]] = {}

    for v in inst.variables():
        rot = list(inst.var_rotation[v])
        n_occ = len(rot)
        dummy = n_occ == 3

        # terminals per occurrence slot k (1-based): red-side and blue-side
        # variable vertices the k-th occurrence pair starts from
        if variant == "UGIG5":
            a1 = b.vertex(f"v{v}:a1", 0, ROLE_VAR_A1)
            a2 = b.vertex(f"v{v}:a2", 1, ROLE_VAR_A2)
            b.edge(a1, a2)
            red_src = {k: a1 if k % 2 == 1 else a2 for k in range(1, 5)}
            blue_src = {k: a2 if k % 2 == 1 else a1 for k in range(1, 5)}
        else:
            # chain of four splitter pairs, one occurrence each
            p1 = {}
            p2 = {}
            for k in range(1, 5):
                p1[k] = b.vertex(f"v{v}:s{k}a", 0, ROLE_VAR_A1)
                p2[k] = b.vertex(f"v{v}:s{k}b", 1, ROLE_VAR_A2)
                b.edge(p1[k], p2[k])
            for k in range(1, 4):
                b.path(p1[k], p1[k + 1], fit_length(g, True), ROLE_RED_INNER)
                b.path(p2[k], p2[k + 1], fit_length(g, True), ROLE_BLUE_INNER)
            red_src = {k: p1[k] if k % 2 == 1 else p2[k] for k in range(1, 5)}
            blue_src = {k: p2[k] if k % 2 == 1 else p1[k] for k in range(1, 5)}
            if variant == "STRING8":
                c = b.vertex(f"v{v}:c", 0, ROLE_SPLITTER_C)
                for k in range(1, 5):
                    b.path(c, p1[k], fit_length(g, True), ROLE_RED_INNER)
                    b.path(c, p2[k], fit_length(g, False), ROLE_BLUE_INNER)

        for k, (ci, _slot) in enumerate(rot, start=1):
            pair_index = inst.clause_rotation[ci].index(v) + 1
            ports = fragments[ci].ports[pair_index]
            occ_scale = scale.get((v, ci)) if scale else None
            rs, bs = red_src[k], blue_src[k]
            red_inner = b.path(
                rs, ports["red"],
                _occ_length(g, b.cls[rs] == b.cls[ports["red"]], occ_scale),
                ROLE_RED_INNER,
            )
            blue_inner = b.path(
                bs, ports["blue"],
                _occ_length(g, b.cls[bs] == b.cls[ports["blue"]], occ_scale),
                ROLE_BLUE_INNER,
            )
            occurrence_names[(v, k)] = (ports["red"], ports["blue"])
            occ_paths[(v, k)] = {"red": [rs] + red_inner + [ports["red"]],
                                 "blue": [bs] + blue_inner + [ports["blue"]]}

        if dummy:
            k = 4
            dr = b.vertex(f"v{v}:dr", 0, ROLE_DUMMY_INNER)
            db = b.vertex(f"v{v}:db", 1, ROLE_DUMMY_INNER)
            b.edge(dr, db)
            rs, bs = red_src[k], blue_src[k]
            red_inner = b.path(rs, dr, fit_length(g, b.cls[rs] == 0), ROLE_DUMMY_INNER)
            blue_inner = b.path(bs, db, fit_length(g, b.cls[bs] == 1), ROLE_DUMMY_INNER)
            # tie the dummy pair between occurrences 1 and 3: connector paths
            # to the midpoints of those occurrences' red paths
            for anchor, occ in ((dr, 1), (db, 3)):
                red_path = occ_paths[(v, occ)]["red"]
                midpoint = red_path[len(red_path) // 2]
                b.path(
                    anchor, midpoint,
                    fit_length(g, b.cls[anchor] == b.cls[midpoint]),
                    ROLE_DUMMY_INNER,
                )
            occurrence_names[(v, k)] = (dr, db)
            occ_paths[(v, k)] = {"red": [rs] + red_inner + [dr],
                                 "blue": [bs] + blue_inner + [db]}

    graph, ids = b.finalize()
    roles = {ids[name]: role for name, role in b.roles.items()}
    occurrence_index = {
        key: (ids[r], ids[bl]) for key, (r, bl) in occurrence_names.items()
    }
    occurrence_paths = {
        key: {color: [ids[n] for n in path] for color, path in d.items()}
        for key, d in occ_paths.items()
    }
    clause_ports = {
        ci: {
            pair: {color: ids[nm] for color, nm in ports.items()}
            for pair, ports in frag.ports.items()
        }
        for ci, frag in fragments.items()
    }
    return GFGraph(
        graph=graph,
        roles=roles,
        occurrence_index=occurrence_index,
        girth_param=g,
        variant=variant,
        names=ids,
        occurrence_paths=occurrence_paths,
        clause_ports=clause_ports,
        instance=inst,
    )


def clause_ordering_feasible(t: OrderingTriple) -> Tuple[bool, object]:
    """Feasibility of the clockwise red/blue exit order at a clause gadget.

    Exactly the all-blue-before-red triple is infeasible; it corresponds to
    the all-false assignment of an all-positive clause. Feasible triples
    return a witness template id; the infeasible one returns the exhaustive
    half-segment case enumeration (computed lazily by the caller via
    caseanalysis.ordering_feasible_model, which re-derives this table)."""
    flags = t.red_before_blue
    key = "".join("r" if f else "b" for f in flags)
    if any(flags):
        return True, f"clause_{key}"
    return False, {
        "obstruction": "half-segment case enumeration",
        "model": "gridlab.caseanalysis.ordering_feasible_model",
        "triple": flags,
    }
