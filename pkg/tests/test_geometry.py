import random
from fractions import Fraction

import pytest

from gridlab.geometry import (
    Graph,
    InvalidRepresentation,
    Orientation,
    Representation,
    Segment,
    VertexMismatch,
    bipartition,
    extract_graph,
    girth,
    hseg,
    intersects,
    max_degree,
    verify,
    vseg,
)
from conftest import random_unit_rep
from oracles import naive_extract_edges

F = Fraction


class TestSegment:
    def test_anchor_and_intervals(self):
        s = hseg(F(1, 2), F(3), F(2))
        assert s.x_interval == (F(1, 2), F(5, 2))
        assert s.y_interval == (F(3), F(3))
        t = vseg(0, 0)
        assert t.is_unit
        assert t.y_interval == (0, 1)

    def test_nonpositive_length_rejected(self):
        with pytest.raises(InvalidRepresentation):
            Segment(Orientation.H, 0, 0, 0)
        with pytest.raises(InvalidRepresentation):
            Segment(Orientation.V, 0, 0, -1)

    def test_translation(self):
        s = vseg(F(1, 3), F(-1, 7)).translated(F(1), F(2))
        assert (s.x, s.y) == (F(4, 3), F(13, 7))


class TestIntersects:
    def test_proper_crossing(self):
        assert intersects(hseg(0, F(1, 2)), vseg(F(1, 2), 0))

    def test_endpoint_touch_counts(self):
        # contact at a single shared point is adjacency, even endpoint-to-
        # endpoint
        assert intersects(hseg(0, 0), vseg(1, 0))
        assert intersects(hseg(0, 0), vseg(0, 0))

    def test_perpendicular_miss(self):
        assert not intersects(hseg(0, 0), vseg(2, 1))
        assert not intersects(hseg(0, 0), vseg(F(1, 2), F(1, 16)))

    def test_parallel_never_intersect(self):
        # even touching collinear segments are non-adjacent by convention
        assert not intersects(hseg(0, 0), hseg(1, 0))
        assert not intersects(hseg(0, 0), hseg(0, 1))
        assert not intersects(vseg(0, 0), vseg(0, 1))

    def test_symmetry(self):
        rnd = random.Random(7)
        for _ in range(200):
            a = Segment(
                rnd.choice((Orientation.H, Orientation.V)),
                F(rnd.randrange(8), 4),
                F(rnd.randrange(8), 4),
            )
            b = Segment(
                rnd.choice((Orientation.H, Orientation.V)),
                F(rnd.randrange(8), 4),
                F(rnd.randrange(8), 4),
            )
            assert intersects(a, b) == intersects(b, a)


class TestRepresentation:
    def test_unit_mode_enforced(self):
        with pytest.raises(InvalidRepresentation):
            Representation({0: hseg(0, 0, 2)}, unit_mode=True)

    def test_collinear_overlap_rejected(self):
        with pytest.raises(InvalidRepresentation):
            Representation({0: hseg(0, 0), 1: hseg(F(1, 2), 0)})

    def test_collinear_point_touch_allowed(self):
        rep = Representation({0: hseg(0, 0), 1: hseg(1, 0)})
        assert len(rep) == 2

    def test_bounding_box(self):
        rep = Representation({0: hseg(0, 0), 1: vseg(3, -1)})
        assert rep.bounding_box() == (0, -1, 3, 0)


class TestExtractAndVerify:
    def test_extract_matches_naive_oracle(self, rng):
        for _ in range(50):
            rep = random_unit_rep(rng, rng.randrange(2, 9))
            g = extract_graph(rep)
            assert set(g.edges()) == naive_extract_edges(rep)

    def test_extract_requires_contiguous_ids(self):
        with pytest.raises(InvalidRepresentation):
            extract_graph(Representation({0: hseg(0, 0), 2: vseg(0, 0)}))

    def test_verify_ok_roundtrip(self, rng):
        rep = random_unit_rep(rng, 6)
        assert verify(rep, extract_graph(rep)).ok

    def test_verify_reports_both_mismatch_kinds(self):
        rep = Representation({0: hseg(0, 0), 1: vseg(F(1, 2), 0), 2: vseg(5, 5)})
        g = Graph(3, [(0, 2)])
        report = verify(rep, g)
        assert report.missing_edges == [(0, 2)]
        assert report.spurious_intersections == [(0, 1)]
        assert not report.ok

    def test_verify_vertex_mismatch(self):
        with pytest.raises(VertexMismatch):
            verify(Representation({0: hseg(0, 0)}), Graph(2))


class TestGraphHelpers:
    def test_girth_of_cycles_and_trees(self):
        c6 = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
        assert girth(c6) == 6
        tree = Graph(4, [(0, 1), (0, 2), (0, 3)])
        assert girth(tree) == float("inf")

    def test_girth_even_cycle_with_chord(self):
        g = Graph(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)])
        assert girth(g) == 4

    def test_bipartition(self):
        even = Graph(4, [(i, (i + 1) % 4) for i in range(4)])
        color = bipartition(even)
        assert color is not None
        assert all(color[u] != color[v] for u, v in even.edges())
        odd = Graph(3, [(0, 1), (1, 2), (2, 0)])
        assert bipartition(odd) is None

    def test_max_degree(self):
        star = Graph(5, [(0, i) for i in range(1, 5)])
        assert max_degree(star) == 4
        assert max_degree(Graph(1)) == 0
