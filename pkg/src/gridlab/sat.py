"""Rotation-annotated 3-SAT(4) instances.

Variables are 1-based (DIMACS style), clauses are 0-based list indices.
The rotation system records, per variable, the clockwise circular order of
the clauses it occurs in, and per clause the clockwise circular order of
its variables, as read off a planar embedding of the incidence graph.
The rotation system is trusted input; no planarity testing happens here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Literal = int  # signed, nonzero; sign = polarity, abs = variable


@dataclass
class SatInstance:
    var_count: int
    clauses: List[Tuple[Literal, ...]]
    # variable -> clockwise circular order of (clause index, slot in clause)
    var_rotation: Dict[int, List[Tuple[int, int]]] = field(default_factory=dict)
    # clause index -> clockwise circular order of its variables
    clause_rotation: Dict[int, List[int]] = field(default_factory=dict)
    # optional straight-line embedding of the incidence graph
    var_embedding: Dict[int, Tuple[Fraction, Fraction]] = field(default_factory=dict)
    clause_embedding: Dict[int, Tuple[Fraction, Fraction]] = field(default_factory=dict)

    def variables(self):
        return range(1, self.var_count + 1)

    def occurrences(self, v: int) -> List[Tuple[int, int]]:
        """(clause index, slot) pairs where variable v occurs, in clause order."""
        out = []
        for ci, clause in enumerate(self.clauses):
            for slot, lit in enumerate(clause):
                if abs(lit) == v:
                    out.append((ci, slot))
        return out

    def literal_at(self, clause_index: int, v: int) -> Literal:
        for lit in self.clauses[clause_index]:
            if abs(lit) == v:
                return lit
        raise KeyError(f"variable {v} not in clause {clause_index}")

    def is_satisfied(self, assignment: Dict[int, bool]) -> bool:
        for clause in self.clauses:
            if not any(
                assignment[abs(lit)] == (lit > 0) for lit in clause
            ):
                return False
        return True

    def default_rotations(self) -> "SatInstance":
        """Fill any missing rotation entries in clause/occurrence order."""
        for v in self.variables():
            if v not in self.var_rotation:
                self.var_rotation[v] = self.occurrences(v)
        for ci, clause in enumerate(self.clauses):
            if ci not in self.clause_rotation:
                self.clause_rotation[ci] = [abs(lit) for lit in clause]
        return self


def make_instance(
    var_count: int,
    clauses: Sequence[Sequence[Literal]],
    var_rotation: Optional[Dict[int, List[int]]] = None,
    clause_rotation: Optional[Dict[int, List[int]]] = None,
) -> SatInstance:
    """Convenience constructor; var_rotation may list bare clause indices."""
    inst = SatInstance(var_count, [tuple(c) for c in clauses])
    if clause_rotation:
        inst.clause_rotation = {ci: list(vs) for ci, vs in clause_rotation.items()}
    if var_rotation:
        for v, clause_ids in var_rotation.items():
            rot = []
            for ci in clause_ids:
                slot = next(
                    s for s, lit in enumerate(inst.clauses[ci]) if abs(lit) == v
                )
                rot.append((ci, slot))
            inst.var_rotation[v] = rot
    inst.default_rotations()
    return inst


def figure3_formula() -> SatInstance:
    """The four-clause instance used throughout:
    (v1 v2 v3)(~v2 v3 ~v4)(~v1 v2 ~v4)(~v1 ~v3 v4), with rotations from its
    planar embedding (clause order around each variable read clockwise)."""
    clauses = [
        (1, 2, 3),
        (-2, 3, -4),
        (-1, 2, -4),
        (-1, -3, 4),
    ]
    # Clockwise rotations consistent with a planar embedding of the incidence
    # graph: variables v1..v4 around the outside, clauses c1..c4 inside.
    var_rotation = {
        1: [0, 2, 3],
        2: [0, 1, 2],
        3: [0, 3, 1],
        4: [1, 3, 2],
    }
    clause_rotation = {
        0: [1, 2, 3],
        1: [2, 3, 4],
        2: [1, 2, 4],
        3: [1, 3, 4],
    }
    return make_instance(4, clauses, var_rotation, clause_rotation)
