"""Command line interface and the route dispatcher for the word problem.

Routing order for ``solve``: graphical equality, equal-length relation,
self-overlap-free rewriting, special presentation (unit group), weak
compression, strong compression, left-cycle-free divisibility (directly
or after reversal), and finally bounded brute-force search.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from functools import lru_cache

from . import adian, classify, collatz, compress, search, units
from . import verdict as V
from .words import (
    Presentation,
    PresentationError,
    Trace,
    has_left_cycles,
    has_right_cycles,
    is_equal_length,
    is_self_overlap_free,
    is_special,
    parse_presentation,
    parse_word,
    render_word,
    reverse_presentation,
    reverse_word,
)


@dataclass(frozen=True)
class SolveBudgets:
    bfs: search.SearchBudget = search.SearchBudget()
    adian: adian.AdianBudget = adian.AdianBudget()


@lru_cache(maxsize=4096)
def _special_oracle(p: Presentation):
    g = units.unit_group_presentation(p)
    return g, units.builtin_oracle(g)


@lru_cache(maxsize=4096)
def _weak(p: Presentation):
    return compress.weak_compress(p)


@lru_cache(maxsize=4096)
def _strong(p: Presentation):
    return compress.strong_compress(p)


def solve_word_problem(
    p: Presentation,
    u,
    v,
    budgets: SolveBudgets = None,
    strict: bool = False,
    _depth: int = 0,
) -> V.Verdict:
    budgets = budgets or SolveBudgets()
    u, v = tuple(u), tuple(v)
    letters = set(p.alphabet)
    for a in u + v:
        if a not in letters:
            raise PresentationError(f"letter {a!r} not in alphabet")
    if _depth > 64:
        return V.unknown({"reason": "recursion limit"}, route=("depth-limit",))

    def recurse(p2, u2, v2):
        return solve_word_problem(p2, u2, v2, budgets, strict, _depth + 1)

    if u == v:
        out = V.equal({"reason": "graphical"}, route=("graphical",))
    elif is_equal_length(p):
        out = search.equal_length_decide(u, v, p, budgets.bfs)
    elif is_self_overlap_free(p.lhs) and len(p.lhs) > len(p.rhs):
        out = search.sof_rewrite_decide(u, v, p)
    elif is_special(p):
        g, oracle = _special_oracle(p)
        if oracle is not None:
            out = units.special_word_problem(p, u, v, oracle)
        else:
            out = search.abelian_decide(u, v, p)
            if out is None:
                out = search.closure_decide(u, v, p, budgets.bfs)
            if out is None:
                out = search.bfs_decide(u, v, p, budgets.bfs)
            out = out.with_route("special-fallback")
    elif _weak(p) is not None:
        out = compress.decide_weak(_weak(p), u, v, recurse)
    elif _strong(p) is not None:
        out = compress.decide_strong(_strong(p), u, v, recurse)
        if (
            strict
            and out.kind == V.EQUAL
            and out.confidence == V.SOUND
            and _depth == 0
        ):
            check = search.bfs_decide(u, v, p, budgets.bfs)
            if check.kind == V.EQUAL:
                out = V.equal(check.certificate, route=out.route + ("bfs-replay",))
            else:
                out = V.Verdict(V.EQUAL, V.REDUCED, out.certificate, out.route)
    elif not has_left_cycles(p):
        out = adian.solve_left_cycle_free(u, v, p, budgets.adian, heuristics=True)
    elif not has_right_cycles(p):
        out = adian.solve_left_cycle_free(
            reverse_word(u), reverse_word(v), reverse_presentation(p),
            budgets.adian, heuristics=True,
        ).with_route("reverse")
    else:
        out = search.abelian_decide(u, v, p)
        if out is None:
            out = search.closure_decide(u, v, p, budgets.bfs)
        if out is None:
            out = search.bfs_decide(u, v, p, budgets.bfs)
    if strict:
        out = V.demote_heuristics(out)
    return out


# ---------------------------------------------------------------------------
# reports


def _jsonable(obj):
    if isinstance(obj, Trace):
        return {
            "start": render_word(obj.start),
            "end": render_word(obj.end),
            "steps": [
                {"position": s.position, "direction": s.direction} for s in obj.steps
            ],
        }
    if isinstance(obj, dict):
        return {str(k): _jsonable(x) for k, x in obj.items()}
    if isinstance(obj, (list, tuple)):
        if obj and all(isinstance(x, str) for x in obj):
            return render_word(tuple(obj))
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def verdict_report(p, query, out: V.Verdict) -> dict:
    cert = dict(out.certificate)
    steps = None
    trace = cert.get("trace")
    if isinstance(trace, Trace):
        steps = len(trace.steps)
    return {
        "presentation": str(p),
        "query": query,
        "verdict": out.kind,
        "confidence": out.confidence,
        "route": list(out.route),
        "certificate": _jsonable(cert),
        "steps": steps,
    }


# ---------------------------------------------------------------------------
# commands


def _budgets(args) -> SolveBudgets:
    bfs = search.SearchBudget(max_nodes=args.budget_nodes)
    ad = adian.AdianBudget(max_head_replacements=args.budget_steps)
    return SolveBudgets(bfs, ad)


def cmd_classify(args) -> int:
    p = parse_presentation(args.presentation)
    record = classify.classify(p).to_record()
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        for key, value in record.items():
            print(f"{key}: {value}")
    return 0


def cmd_reduce(args) -> int:
    p = parse_presentation(args.presentation)
    pipe = compress.reduce_to_canonical(p)
    record = {
        "presentation": str(p),
        "steps": pipe.to_record(),
        "final": str(pipe.final),
    }
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print("source:", record["presentation"])
        for s in record["steps"]:
            print("  %s -> %s" % (s["kind"], s.get("result", "")))
        print("final:", record["final"])
    return 0


def _finish_verdict(args, report) -> int:
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("verdict: %s (%s)" % (report["verdict"], report["confidence"]))
        print("route:", " > ".join(report["route"]) or "-")
        if args.trace and "trace" in report["certificate"]:
            print("trace:", json.dumps(report["certificate"]["trace"]))
    if args.require_decision and report["verdict"] == V.UNKNOWN:
        return 3
    return 0


def cmd_solve(args) -> int:
    p = parse_presentation(args.presentation)
    u = parse_word(args.u, p.alphabet)
    v = parse_word(args.v, p.alphabet)
    out = solve_word_problem(p, u, v, _budgets(args), strict=args.strict)
    report = verdict_report(p, {"u": args.u, "v": args.v}, out)
    return _finish_verdict(args, report)


def cmd_divides(args) -> int:
    p = parse_presentation(args.presentation)
    w = parse_word(args.word, p.alphabet)
    if has_left_cycles(p) or not p.rhs:
        print("error: divisibility procedure needs a left-cycle-free relation",
              file=sys.stderr)
        return 2
    out = adian.adian_divisibility(
        w, args.letter, p, adian.AdianBudget(max_head_replacements=args.budget_steps),
        heuristics=not args.strict,
    )
    kind = out.kind
    confidence = out.confidence
    if args.strict and confidence == V.HEURISTIC:
        kind, confidence = adian.UNKNOWN, V.SOUND
    report = {
        "presentation": str(p),
        "query": {"word": args.word, "letter": args.letter},
        "verdict": kind,
        "confidence": confidence,
        "route": ["adian"],
        "certificate": {
            "reason": out.reason,
            "witness": None if out.witness is None else render_word(out.witness),
            "steps": out.steps,
        },
        "steps": out.steps,
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("verdict: %s (%s)" % (kind, confidence))
        if out.witness is not None:
            print("witness:", render_word(out.witness))
        if args.trace:
            for line in out.lines:
                print(line)
    if args.require_decision and kind == adian.UNKNOWN:
        return 3
    return 0


def cmd_adian_trace(args) -> int:
    args.trace = True
    return cmd_divides(args)


def cmd_collatz_trace(args) -> int:
    p = parse_presentation(args.presentation)
    s = collatz.build_system(p)
    x = parse_word(args.x, p.alphabet)
    y = parse_word(args.y, p.alphabet)
    run = collatz.run_trace(s, x, y, max_steps=args.budget_steps,
                            heuristics=not args.strict)
    out = run.verdict
    if args.strict:
        out = V.demote_heuristics(out)
    report = verdict_report(p, {"x": args.x, "y": args.y}, out)
    report["certificate"]["reason"] = run.reason
    report["states"] = list(run.lines)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for line in run.lines:
            print(line)
        print("verdict: %s (%s)  [%s]" % (out.kind, out.confidence, run.reason))
    if args.require_decision and out.kind == V.UNKNOWN:
        return 3
    return 0


def run_corpus_line(line: str, strict: bool, budgets: SolveBudgets):
    """Returns (verdict string, expected or None)."""
    parts = [part.strip() for part in line.split(";;")]
    if len(parts) < 2:
        raise PresentationError("corpus line needs '<presentation> ;; <command ...>'")
    p = parse_presentation(parts[0])
    expected = None
    if len(parts) >= 3:
        tokens = parts[2].split()
        if len(tokens) != 2 or tokens[0] != "expect":
            raise PresentationError(f"bad expectation {parts[2]!r}")
        expected = tokens[1].replace("-", "_")
    cmd = parts[1].split()
    if not cmd:
        raise PresentationError("empty corpus command")
    name, rest = cmd[0], cmd[1:]
    if name == "solve":
        if len(rest) != 2:
            raise PresentationError("solve needs two words")
        u = parse_word(rest[0], p.alphabet)
        v = parse_word(rest[1], p.alphabet)
        got = solve_word_problem(p, u, v, budgets, strict=strict).kind
    elif name == "divides":
        if len(rest) != 2:
            raise PresentationError("divides needs a word and a letter")
        w = parse_word(rest[0], p.alphabet)
        out = adian.adian_divisibility(w, rest[1], p, budgets.adian,
                                       heuristics=not strict)
        got = out.kind
        if strict and out.confidence == V.HEURISTIC:
            got = adian.UNKNOWN
    elif name == "classify":
        classify.classify(p)
        got = "ok"
    elif name == "reduce":
        compress.reduce_to_canonical(p)
        got = "ok"
    else:
        raise PresentationError(f"unknown corpus command {name!r}")
    return got, expected


def cmd_corpus(args) -> int:
    budgets = _budgets(args)
    total = matched = mismatched = undecided = 0
    failures = []
    with open(args.path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            total += 1
            got, expected = run_corpus_line(line, args.strict, budgets)
            if got in (V.UNKNOWN,):
                undecided += 1
            if expected is None:
                continue
            if got == expected:
                matched += 1
            else:
                mismatched += 1
                failures.append((lineno, line, expected, got))
    report = {
        "total": total,
        "matched": matched,
        "mismatched": mismatched,
        "undecided": undecided,
        "failures": [
            {"line": n, "text": t, "expected": e, "got": g} for n, t, e, g in failures
        ],
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(
            "corpus: %d entries, %d matched, %d mismatched, %d undecided"
            % (total, matched, mismatched, undecided)
        )
        for n, t, e, g in failures:
            print("  line %d: expected %s, got %s  (%s)" % (n, e, g, t))
    if mismatched:
        return 1
    if args.require_decision and undecided == total and total:
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onerel",
        description="word problem toolkit for one-relation monoids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine readable output")
        sp.add_argument("--strict", action="store_true",
                        help="demote heuristic verdicts to unknown")
        sp.add_argument("--budget-steps", type=int, default=10_000)
        sp.add_argument("--budget-nodes", type=int, default=200_000)
        sp.add_argument("--trace", action="store_true", help="print derivations")
        sp.add_argument("--require-decision", action="store_true",
                        help="exit with status 3 when the answer is unknown")

    sp = sub.add_parser("classify", help="structural classification")
    sp.add_argument("presentation")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("reduce", help="compression/collapse pipeline")
    sp.add_argument("presentation")
    common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("solve", help="decide u = v")
    sp.add_argument("presentation")
    sp.add_argument("u")
    sp.add_argument("v")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("divides", help="decide left divisibility by a letter")
    sp.add_argument("presentation")
    sp.add_argument("word")
    sp.add_argument("letter")
    common(sp)
    sp.set_defaults(func=cmd_divides)

    sp = sub.add_parser("adian-trace", help="divisibility with the full derivation")
    sp.add_argument("presentation")
    sp.add_argument("word")
    sp.add_argument("letter")
    common(sp)
    sp.set_defaults(func=cmd_adian_trace)

    sp = sub.add_parser("collatz-trace", help="pair dynamics for a u b = a")
    sp.add_argument("presentation")
    sp.add_argument("x")
    sp.add_argument("y")
    common(sp)
    sp.set_defaults(func=cmd_collatz_trace)

    sp = sub.add_parser("corpus", help="run a corpus file of queries")
    sp.add_argument("path")
    common(sp)
    sp.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PresentationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
