"""Tests for the text order format, .cxt parsing, and concept lattices."""

import random

import numpy as np
import pytest

from orddraw.errors import CycleError, ParseError, TooLarge, UnknownLabel
from orddraw.ingest import (FormalContext, concept_lattice, parse_cxt,
                            parse_order_text, serialize_order)
from orddraw.orders import boolean_lattice, cover_relation
from oracles import random_order


class TestOrderText:
    def test_basic_parse(self):
        o = parse_order_text("a < b\nb < c\n")
        assert list(o.ground) == ["a", "b", "c"]
        assert o.lt("a", "c")

    def test_comments_blanks_and_inline_comments(self):
        o = parse_order_text("# heading\n\na < b  # tail comment\n")
        assert o.lt("a", "b")

    def test_elements_line_declares_isolated_labels(self):
        o = parse_order_text("elements: a b c lonely\na < b\n")
        assert o.n == 4
        assert o.incomparable("lonely", "a")

    def test_labels_collected_in_appearance_order(self):
        o = parse_order_text("z < m\na < z\n")
        assert list(o.ground) == ["z", "m", "a"]

    def test_self_relation_is_a_no_op(self):
        o = parse_order_text("a < a\nb < a\n")
        assert o.n == 2 and o.lt("b", "a")

    def test_malformed_lines_carry_line_numbers(self):
        with pytest.raises(ParseError) as err:
            parse_order_text("a < b\nb c\n")
        assert err.value.line == 2
        with pytest.raises(ParseError) as err:
            parse_order_text("a <= b\n")
        assert err.value.line == 1

    def test_angle_bracket_is_not_a_label(self):
        with pytest.raises(ParseError):
            parse_order_text("< < b\n")
        with pytest.raises(ParseError):
            parse_order_text("elements: a < b\n")

    def test_empty_input_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_order_text("# nothing here\n")
        assert err.value.line == 0

    def test_cycle_surfaces_as_cycle_error(self):
        with pytest.raises(CycleError):
            parse_order_text("a < b\nb < a\n")

    def test_round_trip_through_serialization(self):
        rng = random.Random(151)
        for _ in range(25):
            o = random_order(rng, rng.randint(1, 8))
            again = parse_order_text(serialize_order(o))
            assert list(again.ground) == list(o.ground)
            assert (again.matrix == o.matrix).all()

    def test_serialized_form_is_covers_only(self):
        from orddraw.orders import chain
        text = serialize_order(chain(3))
        assert text == "elements: x1 x2 x3\nx1 < x2\nx2 < x3\n"


CXT_SQUARE = """B

2
2
obj_a
obj_b
attr_1
attr_2
X.
.X
"""


class TestCxt:
    def test_parse_square(self):
        ctx = parse_cxt(CXT_SQUARE)
        assert ctx.objects == ("obj_a", "obj_b")
        assert ctx.attributes == ("attr_1", "attr_2")
        assert ctx.incidence.tolist() == [[True, False], [False, True]]

    def test_crlf_and_lowercase_cells(self):
        ctx = parse_cxt("B\r\n2\r\n1\r\na\r\nb\r\np\r\nx\r\n.\r\n")
        assert ctx.incidence.tolist() == [[True], [False]]

    def test_header_must_be_b(self):
        with pytest.raises(ParseError) as err:
            parse_cxt("A\n1\n1\no\na\nX\n")
        assert "header" in err.value.reason

    def test_counts_must_be_integers(self):
        with pytest.raises(ParseError):
            parse_cxt("B\ntwo\n1\no\na\nX\n")

    def test_short_row_is_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_cxt("B\n1\n2\no\na1\na2\nX\n")
        assert "cells" in err.value.reason

    def test_bad_cell_is_rejected(self):
        with pytest.raises(ParseError):
            parse_cxt("B\n1\n1\no\na\n?\n")

    def test_truncated_file(self):
        with pytest.raises(ParseError):
            parse_cxt("B\n2\n2\nonly_object\n")

    def test_incidence_shape_validated(self):
        with pytest.raises(ValueError):
            FormalContext(("a",), ("p", "q"), np.zeros((2, 2), dtype=bool))


def identity_context(n):
    eye = np.eye(n, dtype=bool)
    return FormalContext(tuple(f"g{i}" for i in range(n)),
                         tuple(f"m{i}" for i in range(n)), eye)


def contranominal_context(n):
    inc = ~np.eye(n, dtype=bool)
    return FormalContext(tuple(f"g{i}" for i in range(n)),
                         tuple(f"m{i}" for i in range(n)), inc)


class TestConceptLattice:
    def test_identity_context_gives_a_diamond(self):
        # 2x2 identity: bottom, two atoms, top
        o = concept_lattice(identity_context(2))
        assert o.n == 4
        assert o.strict_pair_count() == boolean_lattice(2).strict_pair_count()
        assert len(cover_relation(o)) == 4

    def test_contranominal_scale_is_a_boolean_lattice(self):
        # complements of singletons generate all subsets
        o = concept_lattice(contranominal_context(3))
        b = boolean_lattice(3)
        assert o.n == b.n == 8
        assert o.strict_pair_count() == b.strict_pair_count()
        assert len(cover_relation(o)) == len(cover_relation(b))

    def test_empty_incidence_collapses(self):
        ctx = FormalContext(("a", "b"), ("p", "q"),
                            np.zeros((2, 2), dtype=bool))
        o = concept_lattice(ctx)
        # only two concepts: (all objects, nothing) and (nothing, all attrs)
        assert o.n == 2
        assert o.lt("{}", "{a,b}")

    def test_full_incidence_collapses_to_a_point(self):
        ctx = FormalContext(("a", "b"), ("p",), np.ones((2, 1), dtype=bool))
        o = concept_lattice(ctx)
        assert o.n == 1

    def test_labels_are_sorted_extents(self):
        o = concept_lattice(identity_context(2))
        assert set(o.ground) == {"{}", "{g0}", "{g1}", "{g0,g1}"}

    def test_result_is_a_lattice(self):
        # unique meets and joins on a few random contexts
        rng = random.Random(157)
        for _ in range(15):
            n_obj, n_att = rng.randint(1, 4), rng.randint(1, 4)
            inc = np.array([[rng.random() < 0.5 for _ in range(n_att)]
                            for _ in range(n_obj)])
            ctx = FormalContext(tuple(f"g{i}" for i in range(n_obj)),
                                tuple(f"m{j}" for j in range(n_att)), inc)
            o = concept_lattice(ctx)
            o.validate()
            m = o.matrix
            for i in range(o.n):
                for j in range(o.n):
                    ups = [k for k in range(o.n) if m[i, k] and m[j, k]]
                    downs = [k for k in range(o.n) if m[k, i] and m[k, j]]
                    joins = [k for k in ups if all(m[k, u] for u in ups)]
                    meets = [k for k in downs if all(m[d, k] for d in downs)]
                    assert len(joins) == 1 and len(meets) == 1

    def test_concept_count_guard(self):
        with pytest.raises(TooLarge):
            concept_lattice(contranominal_context(6), max_concepts=10)
