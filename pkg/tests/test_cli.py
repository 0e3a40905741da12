"""Tests for the routing dispatcher and the command line interface."""

import json

import pytest

import onerel.verdict as V
from onerel.cli import main, solve_word_problem
from onerel.words import parse_presentation, parse_word


def solve(pres, u, v, **kw):
    p = parse_presentation(pres)
    return solve_word_problem(
        p, parse_word(u, p.alphabet), parse_word(v, p.alphabet), **kw
    )


class TestRouting:
    def test_graphical(self):
        out = solve("a,b | abba = ab", "ab", "ab")
        assert out.kind == V.EQUAL and out.route == ("graphical",)

    def test_equal_length_route(self):
        out = solve("a,b | ba = ab", "ab", "ba")
        assert out.kind == V.EQUAL and "equal-length" in out.route

    def test_sof_rewrite_route(self):
        out = solve("a,b | aab = ba", "aaab", "aba")
        assert out.kind == V.EQUAL and "sof-rewrite" in out.route

    def test_special_route(self):
        out = solve("a,b,c,d | abcabdab = 1", "abcabdab", "1")
        assert out.kind == V.EQUAL and "special" in out.route

    def test_special_fallback_route(self):
        out = solve("a,b | abbaab = 1", "a", "b")
        assert out.kind == V.NOT_EQUAL
        assert "special-fallback" in out.route

    def test_weak_route(self):
        out = solve("a,b | abbaabbbabbbab = abbaab", "abbaabbbabbbab", "abbaab")
        assert out.kind == V.EQUAL and "weak" in out.route

    def test_strong_route(self):
        out = solve("a,b | aabbaab = ab", "aabbaab", "ab")
        assert out.kind == V.EQUAL and "strong" in out.route

    def test_adian_route(self):
        out = solve("a,b | baab = ab", "baab", "ab")
        assert out.kind == V.EQUAL and out.route == ("adian",)

    def test_reverse_adian_route(self):
        out = solve("a,b | abba = ab", "abba", "ab")
        assert out.kind == V.EQUAL
        assert out.route == ("reverse", "adian")

    def test_rejects_foreign_letters(self):
        p = parse_presentation("a,b | abba = ab")
        with pytest.raises(ValueError):
            solve_word_problem(p, ("c",), ("a",))

    def test_strict_demotes_heuristics(self):
        # the divisibility loop heuristic fires on this query
        out = solve("a,b | baabbaa = a", "bbaaa", "abbaa")
        strict = solve("a,b | baabbaa = a", "bbaaa", "abbaa", strict=True)
        if out.confidence == V.HEURISTIC:
            assert strict.kind == V.UNKNOWN


class TestCliCommands:
    def test_solve_json(self, capsys):
        rc = main(["solve", "a,b | abba = ab", "abbaa", "aba", "--json"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "equal"
        assert report["route"]

    def test_solve_json_trace(self, capsys):
        rc = main(["solve", "a,b | aab = ba", "aaab", "aba", "--json"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "equal"
        assert report["certificate"]["trace"]["start"] == "aaab"
        assert report["steps"] == len(report["certificate"]["trace"]["steps"])

    def test_solve_plain(self, capsys):
        rc = main(["solve", "a,b | abba = ab", "a", "b"])
        assert rc == 0
        assert "verdict: not_equal" in capsys.readouterr().out

    def test_classify_json(self, capsys):
        rc = main(["classify", "a,b | ab = 1", "--json"])
        assert rc == 0
        record = json.loads(capsys.readouterr().out)
        assert record["special"] is True

    def test_reduce_json(self, capsys):
        rc = main(["reduce", "a,b,c,d | abdadadacbaca = abdadabdaca", "--json"])
        assert rc == 0
        record = json.loads(capsys.readouterr().out)
        kinds = [s["kind"] for s in record["steps"]]
        assert kinds == ["weak", "strong", "reverse", "collapse"]

    def test_divides_json(self, capsys):
        rc = main([
            "divides", "a,b | baababa = aba", "abbaaababab", "b", "--json",
        ])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "divisible"
        assert report["certificate"]["witness"] == "aabababaababababab"
        assert report["steps"] == 4

    def test_adian_trace(self, capsys):
        rc = main(["adian-trace", "a,b | baababa = aba", "abbaaababab", "b"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "verdict: divisible" in out
        assert out.count("->") == 4

    def test_collatz_trace(self, capsys):
        rc = main(["collatz-trace", "a,b | abaab = a", "abaab", "a"])
        assert rc == 0
        assert "verdict: equal" in capsys.readouterr().out

    def test_require_decision_exit_code(self, capsys):
        rc = main([
            "solve", "a,b | abbaab = 1", "ab", "ba",
            "--require-decision", "--budget-nodes", "100",
        ])
        out = capsys.readouterr()
        assert rc in (0, 3)
        if rc == 3:
            assert "unknown" in out.out

    def test_usage_error_exit_code(self, capsys):
        rc = main(["solve", "a,b | abba", "a", "b"])
        assert rc == 2
        assert "error" in capsys.readouterr().err

    def test_strict_flag(self, capsys):
        rc = main([
            "divides", "a,b | baabbaa = a", "bbaaa", "a", "--strict", "--json",
        ])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] in ("unknown", "not_divisible")


class TestCorpus:
    def test_corpus_roundtrip(self, tmp_path, capsys):
        corpus = tmp_path / "queries.txt"
        corpus.write_text(
            "# comment lines and blanks are skipped\n"
            "\n"
            "a,b | abba = ab ;; solve abbaa aba ;; expect equal\n"
            "a,b | abba = ab ;; solve a b ;; expect not-equal\n"
            "a,b | baababa = aba ;; divides abbaaababab b ;; expect divisible\n"
            "a,b | abba = ab ;; classify ;; expect ok\n"
            "a,b,c,d | abdadadacbaca = abdadabdaca ;; reduce ;; expect ok\n"
        )
        rc = main(["corpus", str(corpus), "--json"])
        report = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert report["total"] == 5
        assert report["matched"] == 5
        assert report["mismatched"] == 0

    def test_corpus_mismatch_exit_code(self, tmp_path, capsys):
        corpus = tmp_path / "bad.txt"
        corpus.write_text("a,b | abba = ab ;; solve a b ;; expect equal\n")
        rc = main(["corpus", str(corpus)])
        assert rc == 1
        assert "mismatched" in capsys.readouterr().out


class TestConsoleScript:
    def test_entry_point_runs(self):
        import subprocess

        out = subprocess.run(
            ["onerel", "solve", "a,b | abba = ab", "abbaa", "aba"],
            capture_output=True, text=True,
        )
        assert out.returncode == 0
        assert "verdict: equal" in out.stdout
