from fractions import Fraction

import pytest

from gridlab.formats import (
    ParseError,
    emit_graph,
    emit_instance,
    emit_rep,
    parse_graph,
    parse_instance,
    parse_rational,
    parse_rep,
)
from gridlab.geometry import Graph, Representation, hseg, vseg
from gridlab.sat import figure3_formula, make_instance
from conftest import random_unit_rep

F = Fraction


class TestRational:
    def test_roundtrip(self):
        for q in (F(0), F(1, 3), F(-7, 2), F(22, 11)):
            assert parse_rational(f"{q.numerator}/{q.denominator}") == q

    def test_decimals_rejected(self):
        for bad in ("0.5", "3", "-1", "1/0", "a/b", ""):
            with pytest.raises(ParseError):
                parse_rational(bad)

    def test_error_carries_line(self):
        with pytest.raises(ParseError) as exc:
            parse_rational("nope", line=17)
        assert exc.value.line == 17
        assert "line 17" in str(exc.value)


class TestGraphFormat:
    def test_roundtrip(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (0, 4)])
        assert parse_graph(emit_graph(g)) == g

    def test_roundtrip_empty_and_edgeless(self):
        assert parse_graph(emit_graph(Graph(0))) == Graph(0)
        assert parse_graph(emit_graph(Graph(3))) == Graph(3)

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ParseError, match="duplicate edge"):
            parse_graph("2 2\n0 1\n1 0\n")

    def test_count_mismatch_rejected(self):
        with pytest.raises(ParseError):
            parse_graph("2 2\n0 1\n")

    def test_loop_and_range_rejected(self):
        with pytest.raises(ParseError, match="loop"):
            parse_graph("2 1\n1 1\n")
        with pytest.raises(ParseError, match="out of range"):
            parse_graph("2 1\n0 2\n")

    def test_comments_and_blanks_ignored(self):
        g = parse_graph("# header\n\n2 1  # counts\n0 1\n")
        assert g == Graph(2, [(0, 1)])


class TestRepFormat:
    def test_roundtrip_six_segments(self, rng):
        rep = random_unit_rep(rng, 6)
        back = parse_rep(emit_rep(rep))
        assert back == rep

    def test_roundtrip_non_unit(self):
        rep = Representation({0: hseg(0, 0, F(5, 2)), 1: vseg(F(1, 2), F(-1, 3))})
        assert parse_rep(emit_rep(rep)) == rep

    def test_malformed_lines_rejected(self):
        for bad in (
            "0 H 0/1 0/1\n",  # missing length
            "0 D 0/1 0/1 1/1\n",  # bad orientation
            "x H 0/1 0/1 1/1\n",  # bad id
            "0 H 0/1 0/1 0/1\n",  # zero length
            "0 H 0/1 0/1 1/1\n0 V 0/1 0/1 1/1\n",  # duplicate id
            "0 H 0.5 0/1 1/1\n",  # decimal coordinate
        ):
            with pytest.raises(ParseError):
                parse_rep(bad)


class TestInstanceFormat:
    def test_roundtrip_figure_formula(self):
        inst = figure3_formula()
        back = parse_instance(emit_instance(inst))
        assert back.var_count == inst.var_count
        assert back.clauses == inst.clauses
        assert back.var_rotation == inst.var_rotation
        assert back.clause_rotation == inst.clause_rotation

    def test_roundtrip_with_embedding(self):
        inst = figure3_formula()
        inst.var_embedding = {1: (F(0), F(0)), 2: (F(1, 2), F(3))}
        inst.clause_embedding = {0: (F(-1), F(2, 7))}
        back = parse_instance(emit_instance(inst))
        assert back.var_embedding == inst.var_embedding
        assert back.clause_embedding == inst.clause_embedding

    def test_inconsistent_rotation_cites_both_lines(self):
        # variable 3's rotation lists clause 1, but clause 1 = (1 2) omits
        # variable 3; the error must cite the r line and the q line
        text = (
            "p cnf 3 2\n"
            "1 2 0\n"
            "1 2 3 0\n"
            "r 3 1 2\n"
            "q 1 1 2\n"
        )
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        msg = str(exc.value)
        assert "line 4" in msg  # the offending r line
        assert "line 5" in msg  # the clause's q line, cross-cited

    def test_clause_arity_enforced(self):
        with pytest.raises(ParseError, match="at most 3"):
            parse_instance("p cnf 4 1\n1 2 3 4 0\n")
        with pytest.raises(ParseError, match="end with 0"):
            parse_instance("p cnf 2 1\n1 2\n")

    def test_missing_problem_line(self):
        with pytest.raises(ParseError, match="problem line"):
            parse_instance("1 2 0\n")

    def test_default_rotations_filled(self):
        inst = parse_instance("p cnf 2 1\n1 -2 0\n")
        assert inst.var_rotation[1] == [(0, 0)]
        assert inst.clause_rotation[0] == [1, 2]

    def test_emitters_deterministic(self, rng):
        rep = random_unit_rep(rng, 5)
        assert emit_rep(rep) == emit_rep(parse_rep(emit_rep(rep)))
        inst = make_instance(3, [(1, -2, 3)])
        assert emit_instance(inst) == emit_instance(parse_instance(emit_instance(inst)))
