"""Tests for presentation classification."""

import itertools

import pytest

from onerel.classify import (
    SpecialRelationError,
    classify,
    is_primitive,
    side_graphs,
    small_overlap_index,
    torsion_witness,
)
from onerel.words import parse_presentation


class TestSideGraphs:
    def test_cycles_from_shared_extremal_letters(self):
        p = parse_presentation("a,b | abba = ab")
        left, right = side_graphs(p)
        assert left.has_cycle  # both sides start with a: loop at a
        assert not right.has_cycle  # a vs b: a single edge, no cycle

    def test_special_raises(self):
        with pytest.raises(SpecialRelationError):
            side_graphs(parse_presentation("a,b | ab = 1"))

    def test_matches_predicates_exhaustively(self):
        from onerel.words import (
            has_left_cycles,
            has_right_cycles,
            make_presentation,
            PresentationError,
        )

        for n in range(1, 5):
            for lhs in itertools.product("ab", repeat=n):
                for m in range(1, n + 1):
                    for rhs in itertools.product("ab", repeat=m):
                        try:
                            p = make_presentation(("a", "b"), lhs, rhs)
                        except PresentationError:
                            continue
                        left, right = side_graphs(p)
                        assert left.has_cycle == has_left_cycles(p)
                        assert right.has_cycle == has_right_cycles(p)


class TestPrimitivity:
    @pytest.mark.parametrize(
        "w,expected",
        [("a", True), ("aa", False), ("ab", True), ("abab", False),
         ("aba", True), ("abaaba", False), ("aab", True)],
    )
    def test_examples(self, w, expected):
        assert is_primitive(tuple(w)) is expected

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            is_primitive(())


class TestTorsion:
    def test_bicyclic_shape(self):
        # aba = a: (uv)^1 u = (uv)^0 u with u = a, v = b
        p = parse_presentation("a,b | aba = a")
        assert torsion_witness(p) == (("a",), ("b",), 1, 0)

    def test_power_shape(self):
        # aaa = a: u empty, v = a, m = 3, n = 1
        p = parse_presentation("a | aaa = a")
        assert torsion_witness(p) == ((), ("a",), 3, 1)

    def test_uv_must_be_primitive(self):
        # abab…: lhs = (ab)^2, rhs = (ab)^1 gives u = (), v = ab primitive
        p = parse_presentation("a,b | abab = ab")
        assert torsion_witness(p) == ((), ("a", "b"), 2, 1)

    def test_non_torsion(self):
        p = parse_presentation("a,b | abba = ab")
        assert torsion_witness(p) is None

    def test_witness_reconstructs_relation(self):
        from onerel.words import make_presentation, PresentationError

        for n in range(1, 6):
            for lhs in itertools.product("ab", repeat=n):
                for m in range(0, n):
                    for rhs in itertools.product("ab", repeat=m):
                        try:
                            p = make_presentation(("a", "b"), lhs, rhs)
                        except PresentationError:
                            continue
                        t = torsion_witness(p)
                        if t is None:
                            continue
                        u, v, mm, nn = t
                        assert mm > nn >= 0
                        assert is_primitive(u + v)
                        assert (u + v) * mm + u == p.lhs
                        assert (u + v) * nn + u == p.rhs


class TestSmallOverlap:
    def test_index_one(self):
        p = parse_presentation("a,b | baaba = aba")
        assert small_overlap_index(p).index == 1

    def test_index_two(self):
        p = parse_presentation("a,b | baba = aabb")
        assert small_overlap_index(p).index == 2

    def test_unbounded(self):
        # no factor of either side occurs twice
        p = parse_presentation("a,b,c,d | ab = cd")
        r = small_overlap_index(p)
        assert r.unbounded and r.index is None

    def test_special_raises(self):
        with pytest.raises(SpecialRelationError):
            small_overlap_index(parse_presentation("a,b | ab = 1"))


class TestClassify:
    def test_special(self):
        c = classify(parse_presentation("a,b,c,d | abcabdab = 1"))
        assert c.special and not c.subspecial
        assert c.group_sufficient == "unknown"
        assert c.has_nontrivial_idempotent == "yes"
        assert c.left_cycle_free is None and c.right_cycle_free is None
        assert c.small_overlap is None

    def test_special_group_sufficient(self):
        # C(aba) = {a, b}: all pieces are single letters covering the side
        c = classify(parse_presentation("a,b | aba = 1"))
        assert c.group_sufficient == "yes"
        assert c.has_nontrivial_idempotent == "no"

    def test_subspecial(self):
        c = classify(parse_presentation("a,b | abbbab = ab"))
        assert c.subspecial and not c.special
        assert c.has_nontrivial_idempotent == "yes"

    def test_monadic(self):
        assert classify(parse_presentation("a,b | bba = a")).monadic
        assert classify(parse_presentation("a,b | abb = b")).monadic
        # both ends equal to the rhs letter: subspecial, not monadic
        assert not classify(parse_presentation("a,b | aba = a")).monadic
        assert not classify(parse_presentation("a,b | bab = a")).monadic

    def test_plain_flags(self):
        c = classify(parse_presentation("a,b | abba = ab"))
        assert not (c.special or c.subspecial or c.monadic)
        assert c.left_cycle_free is False
        assert c.right_cycle_free is True
        assert c.has_nontrivial_idempotent == "no"

    def test_weak_alpha_exposed(self):
        c = classify(parse_presentation("a,b | abbaabbbabbbab = abbaab"))
        assert c.weak_alpha == ("a", "b")

    def test_strong_parameters(self):
        c = classify(parse_presentation("a,b | abbaabb = abaababb"))
        assert c.strong_parameters is not None
        C, D, k = c.strong_parameters
        assert k == 1 + min(len(C), len(D)) == 3

    def test_to_record_is_json_ready(self):
        import json

        for text in ["a,b | abba = ab", "a,b | ab = 1", "a,b | aba = a"]:
            record = classify(parse_presentation(text)).to_record()
            json.dumps(record)
