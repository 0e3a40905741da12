"""Left-divisibility by a letter, and the word problem, for
left-cycle-free one-relation presentations.

The procedure repeatedly decomposes the current word from the left into
maximal prefixes of the relation sides; the first factor that is a full
side (the head) is replaced by the other side.  The word is divisible by
the target letter exactly when some iterate begins with it; a headless
decomposition refutes divisibility; otherwise the procedure runs forever,
which is detected exactly (word repetition) or heuristically (an earlier
decomposition's blocks-plus-head recurring as a suffix of the current
blocks with the same head).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import verdict as V
from .words import (
    ElementaryStep,
    LHS_TO_RHS,
    RHS_TO_LHS,
    Presentation,
    Trace,
    apply_step,
    has_left_cycles,
    render_word,
    replay_trace,
)

DIVISIBLE = "divisible"
NOT_DIVISIBLE = "not_divisible"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class AdianBudget:
    max_head_replacements: int = 10_000
    max_letters: int = 1_000_000


@dataclass(frozen=True)
class PrefixDecomposition:
    blocks: tuple  # maximal proper prefixes of the relation sides
    head: Optional[tuple]  # the first full side occurrence, or None
    head_side: Optional[str]  # "lhs" | "rhs"
    tail: tuple  # remainder after the head (or after the blocks)

    def render(self) -> str:
        parts = [render_word(b) for b in self.blocks]
        if self.head is not None:
            seg = "[%s]" % render_word(self.head)
            if self.tail:
                seg += " " + render_word(self.tail)
            parts.append(seg)
        elif self.tail:
            parts.append("<%s>" % render_word(self.tail))
        return " | ".join(parts)


def _check(p: Presentation):
    if not p.lhs or not p.rhs:
        raise ValueError("both relation sides must be non-empty")
    if has_left_cycles(p):
        raise ValueError("presentation must be left-cycle-free")


def prefix_decompose(w, p: Presentation) -> PrefixDecomposition:
    _check(p)
    w = tuple(w)
    blocks = []
    i = 0
    while i < len(w):
        best = 0
        best_side = None
        for side, word_ in (("lhs", p.lhs), ("rhs", p.rhs)):
            n = 0
            while n < len(word_) and i + n < len(w) and w[i + n] == word_[n]:
                n += 1
            if n > best:
                best, best_side = n, side
        if best == 0:
            return PrefixDecomposition(tuple(blocks), None, None, w[i:])
        side_word = p.lhs if best_side == "lhs" else p.rhs
        if best == len(side_word):
            return PrefixDecomposition(
                tuple(blocks), side_word, best_side, w[i + best :]
            )
        blocks.append(w[i : i + best])
        i += best
    return PrefixDecomposition(tuple(blocks), None, None, ())


@dataclass(frozen=True)
class AdianOutcome:
    kind: str  # DIVISIBLE | NOT_DIVISIBLE | UNKNOWN
    confidence: str
    reason: str  # "prefix" | "headless" | "loop-exact" | "loop-embedding" | "budget"
    witness: Optional[tuple]
    steps: int
    trace: Optional[Trace]
    lines: tuple  # formatted iteration lines


def adian_divisibility(
    w, x, p: Presentation, budget: AdianBudget = None, heuristics: bool = True
) -> AdianOutcome:
    """Is ``w`` left-divisible by the letter ``x``?"""
    _check(p)
    if x not in p.alphabet:
        raise ValueError(f"letter {x!r} not in alphabet")
    budget = budget or AdianBudget()
    w = tuple(w)
    current = w
    steps = []
    lines = []
    seen = {w}
    history = []
    letters = 0

    while True:
        if current and current[0] == x:
            trace = Trace(w, tuple(steps), current)
            replay_trace(trace, p)
            return AdianOutcome(
                DIVISIBLE, V.SOUND, "prefix", current[1:], len(steps), trace, tuple(lines)
            )
        d = prefix_decompose(current, p)
        if d.head is None:
            return AdianOutcome(
                NOT_DIVISIBLE, V.SOUND, "headless", None, len(steps), None, tuple(lines)
            )
        if heuristics:
            nb = len(d.blocks)
            for blocks, head in history:
                if head == d.head and nb >= len(blocks) and d.blocks[nb - len(blocks) :] == blocks:
                    return AdianOutcome(
                        NOT_DIVISIBLE,
                        V.HEURISTIC,
                        "loop-embedding",
                        None,
                        len(steps),
                        None,
                        tuple(lines),
                    )
        history.append((d.blocks, d.head))
        pos = sum(len(b) for b in d.blocks)
        direction = LHS_TO_RHS if d.head_side == "lhs" else RHS_TO_LHS
        step = ElementaryStep(pos, direction)
        nxt = apply_step(current, p, step)
        steps.append(step)
        lines.append("%s -> %s" % (d.render(), render_word(nxt)))
        letters += len(current)
        if nxt in seen:
            return AdianOutcome(
                NOT_DIVISIBLE, V.SOUND, "loop-exact", None, len(steps), None, tuple(lines)
            )
        seen.add(nxt)
        current = nxt
        if len(steps) >= budget.max_head_replacements or letters > budget.max_letters:
            return AdianOutcome(
                UNKNOWN, V.SOUND, "budget", None, len(steps), None, tuple(lines)
            )


def solve_left_cycle_free(
    u, v, p: Presentation, budget: AdianBudget = None, heuristics: bool = True
) -> V.Verdict:
    """Word problem by first-letter peeling: strip shared first letters
    (the monoid is left-cancellative) and otherwise ask whether one word
    is left-divisible by the other's first letter."""
    _check(p)
    u, v = tuple(u), tuple(v)
    peeled = 0
    outcomes = []
    while True:
        if u == v:
            return V.equal({"peeled": peeled, "divisions": outcomes}, route=("adian",))
        if not u or not v:
            return V.not_equal(
                {"invariant": "the empty word forms a singleton class"},
                route=("adian",),
            )
        if u[0] == v[0]:
            u, v = u[1:], v[1:]
            peeled += 1
            continue
        out = adian_divisibility(v, u[0], p, budget, heuristics)
        outcomes.append({"letter": u[0], "kind": out.kind, "reason": out.reason,
                         "steps": out.steps})
        if out.kind == DIVISIBLE:
            u, v = u[1:], out.witness
            peeled += 1
            continue
        if out.kind == NOT_DIVISIBLE:
            return V.not_equal(
                {"divisions": outcomes}, confidence=out.confidence, route=("adian",)
            )
        return V.unknown({"divisions": outcomes}, route=("adian",))
