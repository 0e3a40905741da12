"""Right-cancellative dynamics for relations of the shape a u b = a.

A word over {a, b} beginning with ``a`` reads as a binary numeral
(a -> 1, b -> 0).  Deciding X = Y amounts to iterating an accelerated
Collatz-like map on the pair; the word pair is the canonical state, the
numeric view is a partial projection (words with a leading b have no
numeral).

>>> s = build_system(parse_presentation("a,b | abaab = a"))
>>> s.K, s.L
(3, 3)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import verdict as V
from .words import (
    Presentation,
    Word,
    parse_presentation,
    render_word,
    reverse_presentation,
)


@dataclass(frozen=True)
class CollatzSystem:
    presentation: Presentation  # oriented as a u b = a
    a: str
    b: str
    u: Word
    K: int  # numeral read from u
    L: int  # length of u
    reversed_input: bool


def build_system(p: Presentation) -> CollatzSystem:
    """Accepts a u b = a directly and b u a = a through a reversal."""
    if len(p.rhs) != 1 or len(p.lhs) < 2 or len(p.alphabet) != 2:
        raise ValueError("the relation must have the shape a u b = a over two letters")
    a = p.rhs[0]
    reversed_input = False
    if p.lhs[0] != a and p.lhs[-1] == a:
        p = reverse_presentation(p)
        reversed_input = True
    if p.lhs[0] != a or p.lhs[-1] == a:
        raise ValueError("the relation must have the shape a u b = a (or b u a = a)")
    b = p.lhs[-1]
    u = p.lhs[1:-1]
    K = 0
    for letter in u:
        K = 2 * K + (1 if letter == a else 0)
    return CollatzSystem(p, a, b, u, K, len(u), reversed_input)


def numeral(s: CollatzSystem, w: Word) -> Optional[int]:
    """The numeric projection; None for non-empty words with a leading b."""
    w = tuple(w)
    if not w:
        return 0
    if w[0] != s.a:
        return None
    n = 0
    for letter in w:
        n = 2 * n + (1 if letter == s.a else 0)
    return n


@dataclass(frozen=True)
class PairState:
    x: Word
    y: Word

    def render(self, s: CollatzSystem) -> str:
        nx, ny = numeral(s, self.x), numeral(s, self.y)
        base = "(%s, %s)" % (render_word(self.x), render_word(self.y))
        if nx is not None and ny is not None:
            base += "  [num: (%d, %d)]" % (nx, ny)
        return base


@dataclass(frozen=True)
class StepResult:
    kind: str  # "equal" | "not_equal" | "continue"
    state: Optional[PairState]
    flipped: bool
    reason: str


def step(s: CollatzSystem, st: PairState) -> StepResult:
    x, y = st.x, st.y
    if x == y:
        return StepResult("equal", None, False, "identical")
    if not x or not y:
        # one side empty, the other not: the empty word is alone in its class
        return StepResult("not_equal", None, False, "empty-vs-nonempty")
    if len(x) == 1 and y[-1] == x[0]:
        return StepResult("not_equal", None, False, "single-letter-suffix")
    if len(y) == 1 and x[-1] == y[0]:
        return StepResult("not_equal", None, False, "single-letter-suffix")
    if x[-1] == y[-1]:
        return StepResult("continue", PairState(x[:-1], y[:-1]), False, "cancel")
    if x[-1] == s.b:
        return StepResult(
            "continue",
            PairState(x[:-1], y[:-1] + (s.a,) + s.u),
            False,
            "transform",
        )
    return StepResult("continue", PairState(y, x), True, "flip")


def g_function(s: CollatzSystem, x: int, y: int):
    """Numeric shadow of :func:`step` for positive numerals."""
    if x < 1 or y < 1:
        raise ValueError("defined for x, y >= 1")
    if x % 2 == y % 2:
        return (x // 2, y // 2)
    if x % 2 == 0:
        return (x // 2, (1 << s.L) * y + s.K)
    return (y, x)


@dataclass(frozen=True)
class CollatzRun:
    verdict: V.Verdict
    reason: str
    states: tuple  # PairState sequence, initial state first
    flips: tuple
    lines: tuple

    def numeric_states(self, s: CollatzSystem):
        return tuple((numeral(s, st.x), numeral(s, st.y)) for st in self.states)


def run_trace(s: CollatzSystem, x, y, max_steps: int = 10_000,
              heuristics: bool = True) -> CollatzRun:
    st = PairState(tuple(x), tuple(y))
    for w in st.x + st.y:
        if w not in (s.a, s.b):
            raise ValueError(f"letter {w!r} not in the system's alphabet")
    states = [st]
    flips = []
    seen = {st}
    ones = []  # numerals of x at states whose y is the single letter a
    reason = "budget"
    verdict = None
    while len(states) <= max_steps:
        if heuristics and st.y == (s.a,):
            nx = numeral(s, st.x)
            if nx is not None:
                for earlier in ones:
                    if nx > earlier and (nx - earlier) % (1 << s.L) == 0:
                        verdict = V.not_equal(
                            {"loop": "residue", "modulus": 1 << s.L,
                             "repeat": (earlier, nx)},
                            confidence=V.HEURISTIC,
                        )
                        reason = "loop-residue"
                        break
                ones.append(nx)
        if verdict is not None:
            break
        r = step(s, st)
        if r.kind == "equal":
            verdict = V.equal({"reason": r.reason})
            reason = r.reason
            break
        if r.kind == "not_equal":
            verdict = V.not_equal({"reason": r.reason})
            reason = r.reason
            break
        st = r.state
        flips.append(r.flipped)
        states.append(st)
        if st in seen:
            verdict = V.not_equal({"loop": "exact"})
            reason = "loop-exact"
            break
        seen.add(st)
    if verdict is None:
        verdict = V.unknown({"reason": "step budget"})
        reason = "budget"
    verdict = verdict.with_route("collatz")
    lines = tuple(state.render(s) for state in states)
    return CollatzRun(verdict, reason, tuple(states), tuple(flips), lines)


def divisibility_profile(s: CollatzSystem, w, max_power: int,
                         max_steps: int = 10_000) -> list:
    """Right-divisibility of ``w`` by a^k for k = 1..max_power, via the
    pair dynamics restricted to divisibility-preserving moves."""
    out = []
    for k in range(1, max_power + 1):
        x, y = tuple(w), (s.a,) * k
        seen = set()
        result = "unknown"
        for _ in range(max_steps):
            if not y:
                result = "divisible"
                break
            if x == y:
                result = "divisible"
                break
            if not x:
                result = "not_divisible"
                break
            if (x, y) in seen:
                result = "not_divisible"
                break
            seen.add((x, y))
            if x[-1] == y[-1]:
                x, y = x[:-1], y[:-1]
            elif x[-1] == s.b:
                x, y = x[:-1], y[:-1] + (s.a,) + s.u
            else:  # x ends in a, y ends in b: rewrite the a and cancel
                x, y = x[:-1] + s.u, y[:-1]
        out.append({"k": k, "result": result})
    return out
