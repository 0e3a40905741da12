"""Tests for the left-divisibility procedure on left-cycle-free
presentations."""

import itertools

import pytest

import onerel.verdict as V
from onerel.adian import (
    DIVISIBLE,
    NOT_DIVISIBLE,
    UNKNOWN,
    AdianBudget,
    adian_divisibility,
    prefix_decompose,
    solve_left_cycle_free,
)
from onerel.words import parse_presentation, parse_word, replay_trace


def w(text, p):
    return parse_word(text, p.alphabet)


class TestPrefixDecompose:
    def setup_method(self):
        self.p = parse_presentation("a,b | baababa = aba")

    def test_with_head(self):
        d = prefix_decompose(w("abbaababa", self.p), self.p)
        assert d.blocks == (("a", "b"),)
        assert d.head == self.p.lhs and d.head_side == "lhs"
        assert d.tail == ()

    def test_blocks_are_proper_prefixes(self):
        d = prefix_decompose(w("abbababab", self.p), self.p)
        assert d.head is None and d.tail == ()
        for b in d.blocks:
            assert self.p.lhs[: len(b)] == b or self.p.rhs[: len(b)] == b
            assert b not in (self.p.lhs, self.p.rhs)

    def test_headless_with_tail(self):
        q = parse_presentation("a,b,c | ba = ac")
        d = prefix_decompose(("c", "b"), q)
        assert d.head is None
        assert d.tail == ("c", "b")

    def test_headless_exhausted(self):
        d = prefix_decompose(w("ab", self.p), self.p)
        assert d.head is None and d.tail == ()
        assert d.blocks == (("a", "b"),)

    def test_rejects_left_cycles(self):
        q = parse_presentation("a,b | abba = ab")
        with pytest.raises(ValueError):
            prefix_decompose(("a",), q)

    def test_render(self):
        d = prefix_decompose(w("abbaababa", self.p), self.p)
        assert d.render() == "ab | [baababa]"
        h = prefix_decompose(w("abbababab", self.p), self.p)
        assert h.render() == "ab | ba | ba | ba | b"


class TestAdianDivisibility:
    def test_divisible_with_witness(self):
        p = parse_presentation("a,b | baababa = aba")
        out = adian_divisibility(w("abbaaababab", p), "b", p)
        assert out.kind == DIVISIBLE
        assert out.steps == 4
        assert out.witness == w("aabababaababababab", p)
        assert replay_trace(out.trace, p) == ("b",) + out.witness

    def test_headless_not_divisible(self):
        p = parse_presentation("a,b | baababa = aba")
        out = adian_divisibility(w("bb", p), "a", p)
        assert out.kind == NOT_DIVISIBLE
        assert out.confidence == V.SOUND

    def test_loop_detection(self):
        p = parse_presentation("a,b | baabbaa = a")
        out = adian_divisibility(w("bbaaa", p), "a", p)
        assert out.kind == NOT_DIVISIBLE
        assert out.reason in ("loop-exact", "loop-embedding")

    def test_loop_exact_without_heuristics(self):
        # heuristics off: only exact word repetition or budget can stop it
        p = parse_presentation("a,b | baabbaa = a")
        out = adian_divisibility(
            w("bbaaa", p), "a", p,
            AdianBudget(max_head_replacements=50, max_letters=100000),
            heuristics=False,
        )
        assert out.kind in (NOT_DIVISIBLE, UNKNOWN)
        if out.kind == NOT_DIVISIBLE:
            assert out.confidence == V.SOUND

    def test_budget_unknown(self):
        p = parse_presentation("a,b | baabbaa = a")
        out = adian_divisibility(
            w("bbaaa", p), "a", p,
            AdianBudget(max_head_replacements=2, max_letters=100000),
            heuristics=False,
        )
        assert out.kind == UNKNOWN and out.reason == "budget"

    def test_divisible_agrees_with_search(self):
        # compare against brute-force search for b * t = word
        from onerel.search import SearchBudget, bfs_decide

        p = parse_presentation("a,b | baababa = aba")
        budget = SearchBudget(max_nodes=3000, max_word_length=14)
        for n in range(1, 6):
            for word in itertools.product("ab", repeat=n):
                out = adian_divisibility(word, "b", p)
                if out.kind == DIVISIBLE:
                    assert out.witness is not None
                    check = bfs_decide(word, ("b",) + out.witness, p, budget)
                    assert check.kind == V.EQUAL


class TestSolveLeftCycleFree:
    def test_equal_after_peeling(self):
        p = parse_presentation("a,b | baaa = aaa")
        out = solve_left_cycle_free(w("baaa", p), w("aaa", p), p)
        assert out.kind == V.EQUAL
        assert "adian" in out.route

    def test_not_equal(self):
        p = parse_presentation("a,b | baaa = aaa")
        out = solve_left_cycle_free(w("ab", p), w("ba", p), p)
        assert out.kind == V.NOT_EQUAL

    def test_empty_vs_nonempty(self):
        p = parse_presentation("a,b | baaa = aaa")
        out = solve_left_cycle_free((), w("a", p), p)
        assert out.kind == V.NOT_EQUAL

    def test_agrees_with_bfs(self):
        from onerel.search import SearchBudget, bfs_decide

        p = parse_presentation("a,b | baaa = aaa")
        budget = SearchBudget(max_nodes=3000, max_word_length=14)
        words = [t for n in range(5) for t in itertools.product("ab", repeat=n)]
        for u in words:
            for v in words:
                s = solve_left_cycle_free(u, v, p)
                b = bfs_decide(u, v, p, budget)
                if V.UNKNOWN not in (s.kind, b.kind):
                    assert s.kind == b.kind, (u, v)
