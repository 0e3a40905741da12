"""Weak and strong compression, generator collapse, and the reduction
pipeline taking a presentation towards the two-generator left-cycle-free
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import verdict as V
from .words import (
    Presentation,
    Word,
    has_left_cycles,
    has_right_cycles,
    is_equal_length,
    is_self_overlap_free,
    is_special,
    make_presentation,
    occurrences,
    render_word,
    reverse_presentation,
    reverse_word,
)


# ---------------------------------------------------------------------------
# weak compression


def common_affixes(p: Presentation):
    """(maximal common prefix, maximal common suffix) of the two sides."""
    u, v = p.lhs, p.rhs
    i = 0
    while i < min(len(u), len(v)) and u[i] == v[i]:
        i += 1
    j = 0
    while j < min(len(u), len(v)) and u[len(u) - 1 - j] == v[len(v) - 1 - j]:
        j += 1
    return u[:i], u[len(u) - j :]


def weak_alpha(p: Presentation, prefer_longest: bool = True) -> Optional[Word]:
    """A self-overlap-free word that is a prefix and a suffix of both
    relation sides (the longest one by default), or None."""
    if not p.lhs or not p.rhs:
        return None
    c, d = common_affixes(p)
    lengths = range(1, min(len(c), len(d)) + 1)
    found = None
    for n in lengths:
        a = p.lhs[:n]
        if p.lhs[len(p.lhs) - n :] == a == p.rhs[len(p.rhs) - n :] and is_self_overlap_free(a):
            found = a
            if not prefer_longest:
                return found
    return found


def block_tails(w: Word, alpha: Word) -> list:
    """Factor w (in alpha A* meet A* alpha) over the suffix code
    Sigma(alpha): returns the tails of the blocks, one per alpha
    occurrence except the trailing one."""
    occ = occurrences(w, alpha)
    if not occ or occ[0] != 0 or occ[-1] != len(w) - len(alpha):
        raise ValueError(
            f"{render_word(w)} does not begin and end with {render_word(alpha)}"
        )
    tails = []
    for a, b in zip(occ, occ[1:]):
        tails.append(w[a + len(alpha) : b])
    return tails


def _block_name(tail: Word) -> str:
    if not tail:
        return "x_1"
    if all(len(a) == 1 for a in tail):
        return "x_" + "".join(tail)
    return "x_" + "_".join(tail)


@dataclass(frozen=True)
class WeakCompression:
    source: Presentation
    alpha: Word
    letter_map: tuple  # ((tail word, fresh letter name), ...) in first-use order
    left_monoid: Presentation

    def encode(self, w: Word, extra=None) -> tuple:
        """Image of a word in alpha A* meet A* alpha under the compressor;
        unseen block tails become fresh free letters via ``extra``."""
        table = dict(self.letter_map)
        if extra is not None:
            table.update(extra)
        out = []
        for tail in block_tails(w, self.alpha):
            if tail not in table:
                name = _block_name(tail)
                table[tail] = name
                if extra is not None:
                    extra[tail] = name
            out.append(table[tail])
        return tuple(out)


def weak_compress(p: Presentation, prefer_longest: bool = True) -> Optional[WeakCompression]:
    if p.lhs == p.rhs:
        return None
    alpha = weak_alpha(p, prefer_longest)
    if alpha is None:
        return None
    table = {}
    images = []
    for side in (p.lhs, p.rhs):
        img = []
        for tail in block_tails(side, alpha):
            if tail not in table:
                table[tail] = _block_name(tail)
        images.append(tuple(table[t] for t in block_tails(side, alpha)))
    alphabet = tuple(table.values())  # insertion order = first use
    left = make_presentation(alphabet, images[0], images[1])
    return WeakCompression(p, alpha, tuple(table.items()), left)


def decide_weak(wc: WeakCompression, u, v, recurse: Callable) -> V.Verdict:
    """Word problem through weak compression.  ``recurse`` solves the word
    problem in (an alphabet extension of) the left monoid."""
    u, v = tuple(u), tuple(v)
    occ_u = occurrences(u, wc.alpha)
    occ_v = occurrences(v, wc.alpha)
    if not occ_u and not occ_v:
        if u == v:
            return V.equal({"reason": "graphical"}, route=("weak",))
        return V.not_equal(
            {"invariant": "alpha-free words form singleton classes"},
            route=("weak",),
        )
    if bool(occ_u) != bool(occ_v):
        return V.not_equal(
            {"invariant": "alpha-containment is preserved"}, route=("weak",)
        )
    la = len(wc.alpha)
    pu, mu, su = u[: occ_u[0]], u[occ_u[0] : occ_u[-1] + la], u[occ_u[-1] + la :]
    pv, mv, sv = v[: occ_v[0]], v[occ_v[0] : occ_v[-1] + la], v[occ_v[-1] + la :]
    if pu != pv or su != sv:
        return V.not_equal(
            {"invariant": "prefix/suffix outside the alpha region"},
            route=("weak",),
        )
    extra = {}
    eu = wc.encode(mu, extra)
    ev = wc.encode(mv, extra)
    alphabet = wc.left_monoid.alphabet + tuple(
        n for n in extra.values() if n not in wc.left_monoid.alphabet
    )
    target = make_presentation(alphabet, wc.left_monoid.lhs, wc.left_monoid.rhs)
    sub = recurse(target, eu, ev)
    return sub.with_route("weak")


# ---------------------------------------------------------------------------
# strong compression


@dataclass(frozen=True)
class StrongCompression:
    source: Presentation
    common_prefix: Word
    common_suffix: Word
    k: int
    m_tau: Presentation

    def window_letter(self, window: Word) -> str:
        base = len(self.source.alphabet)
        pos = {a: i for i, a in enumerate(self.source.alphabet)}
        idx = 0
        for a in window:
            idx = idx * base + pos[a]
        return f"e{idx + 1}"

    def encode(self, w: Word) -> tuple:
        w = tuple(w)
        if len(w) < self.k:
            return ()
        return tuple(
            self.window_letter(w[i : i + self.k]) for i in range(len(w) - self.k + 1)
        )


def strong_compress(p: Presentation) -> Optional[StrongCompression]:
    """Window (de Bruijn style) encoding; defined when both side graphs
    have cycles, i.e. the sides share first and last letters."""
    if is_special(p) or p.lhs == p.rhs:
        return None
    if not (has_left_cycles(p) and has_right_cycles(p)):
        return None
    c, d = common_affixes(p)
    k = 1 + min(len(c), len(d))
    sc = StrongCompression(p, c, d, k, p)  # placeholder m_tau, fixed below
    tl, tr = sc.encode(p.lhs), sc.encode(p.rhs)
    if not tl and not tr:
        return None
    seen = []
    for x in tl + tr:
        if x not in seen:
            seen.append(x)
    alphabet = tuple(sorted(seen, key=lambda n: int(n[1:])))
    m_tau = make_presentation(alphabet, tl, tr)
    return StrongCompression(p, c, d, k, m_tau)


def decide_strong(sc: StrongCompression, u, v, recurse: Callable) -> V.Verdict:
    """Word problem through the window encoding.  Words shorter than the
    shorter relation side have singleton congruence classes."""
    u, v = tuple(u), tuple(v)
    floor = min(len(sc.source.lhs), len(sc.source.rhs))
    if len(u) < floor or len(v) < floor:
        if u == v:
            return V.equal({"reason": "graphical"}, route=("strong",))
        return V.not_equal(
            {"invariant": "word shorter than both relation sides"},
            route=("strong",),
        )
    eu, ev = sc.encode(u), sc.encode(v)
    extra = []
    for x in eu + ev:
        if x not in sc.m_tau.alphabet and x not in extra:
            extra.append(x)
    alphabet = tuple(
        sorted(sc.m_tau.alphabet + tuple(extra), key=lambda n: int(n[1:]))
    )
    target = make_presentation(alphabet, sc.m_tau.lhs, sc.m_tau.rhs)
    sub = recurse(target, eu, ev)
    return sub.with_route("strong")


# ---------------------------------------------------------------------------
# generator collapse


@dataclass(frozen=True)
class CollapseMap:
    representatives: tuple
    mapping: tuple  # ((old letter, new letter), ...)
    merged_name: str


def collapse_generators(p: Presentation):
    """Merge the representative letter of every left-graph component into
    a single letter; lengths are preserved.  Needs a left-cycle-free
    relation with both sides non-empty."""
    if not p.lhs or not p.rhs:
        raise ValueError("collapse needs both relation sides non-empty")
    if has_left_cycles(p):
        raise ValueError("collapse needs a left-cycle-free relation")
    order = {a: i for i, a in enumerate(p.alphabet)}
    edge = {p.lhs[0], p.rhs[0]}
    reps = []
    for a in p.alphabet:
        if a in edge:
            if a == min(edge, key=order.get):
                reps.append(a)
        else:
            reps.append(a)
    merged = "c1"
    while merged in p.alphabet:
        merged += "_"
    mapping = {a: (merged if a in reps else a) for a in p.alphabet}
    alphabet = (merged,) + tuple(a for a in p.alphabet if mapping[a] != merged)
    lhs = tuple(mapping[a] for a in p.lhs)
    rhs = tuple(mapping[a] for a in p.rhs)
    cm = CollapseMap(tuple(reps), tuple(sorted(mapping.items())), merged)
    return cm, make_presentation(alphabet, lhs, rhs)


# ---------------------------------------------------------------------------
# reduction pipeline


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "weak" | "strong" | "reverse" | "collapse"
    data: object
    translates_queries: bool


@dataclass(frozen=True)
class ReductionPipeline:
    source: Presentation
    steps: tuple
    final: Presentation

    def to_record(self) -> list:
        out = []
        for s in self.steps:
            entry = {"kind": s.kind, "translates_queries": s.translates_queries}
            if s.kind == "weak":
                entry["alpha"] = render_word(s.data.alpha)
                entry["result"] = str(s.data.left_monoid)
            elif s.kind == "strong":
                entry["k"] = s.data.k
                entry["result"] = str(s.data.m_tau)
            elif s.kind == "reverse":
                entry["result"] = str(s.data)
            elif s.kind == "collapse":
                cm, q = s.data
                entry["merged"] = cm.merged_name
                entry["result"] = str(q)
            out.append(entry)
        return out


def reduce_to_canonical(p: Presentation) -> ReductionPipeline:
    """Iterate weak compression, then strong compression, then a reversal
    when only the right side is cycle-free, then generator collapse when
    it shrinks the alphabet.  Collapse does not translate word-problem
    queries; the other steps do."""
    steps = []
    current = p
    while True:
        wc = weak_compress(current)
        if wc is not None:
            steps.append(ReductionStep("weak", wc, True))
            current = wc.left_monoid
            continue
        sc = strong_compress(current)
        if sc is not None:
            steps.append(ReductionStep("strong", sc, True))
            current = sc.m_tau
            continue
        break
    if current.lhs and current.rhs:
        if has_left_cycles(current) and not has_right_cycles(current):
            current = reverse_presentation(current)
            steps.append(ReductionStep("reverse", current, True))
        if not has_left_cycles(current):
            cm, collapsed = collapse_generators(current)
            if len(collapsed.alphabet) < len(current.alphabet):
                steps.append(ReductionStep("collapse", (cm, collapsed), False))
                current = collapsed
    return ReductionPipeline(p, tuple(steps), current)
