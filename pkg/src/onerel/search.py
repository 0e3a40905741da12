"""Brute-force decision procedures used as independent oracles.

``bfs_decide`` explores the congruence class of both query words with a
bidirectional breadth-first search.  It answers Equal with a replayable
trace, NotEqual when one class is exhausted without meeting the other
(genuine closure, no budget cut-offs), and Unknown otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import verdict as V
from .words import (
    ElementaryStep,
    LHS_TO_RHS,
    RHS_TO_LHS,
    Presentation,
    Trace,
    concat_traces,
    invert_trace,
    inverse_step,
    is_self_overlap_free,
    occurrences,
    replay_trace,
)


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 200_000
    max_word_length: int = 64


def _neighbours(w, p: Presentation, cap: int):
    """(word, step) pairs one elementary transformation away; the second
    return value says whether some neighbour was pruned by the length cap."""
    out = []
    pruned = False
    for i in occurrences(w, p.lhs):
        out.append((w[:i] + p.rhs + w[i + len(p.lhs) :], ElementaryStep(i, LHS_TO_RHS)))
    grown = len(w) + len(p.lhs) - len(p.rhs)
    for i in occurrences(w, p.rhs):
        if grown > cap:
            pruned = True
            break
        out.append((w[:i] + p.lhs + w[i + len(p.rhs) :], ElementaryStep(i, RHS_TO_LHS)))
    return out, pruned


def _path(parents, w) -> Trace:
    steps = []
    cur = w
    while True:
        prev, step = parents[cur]
        if step is None:
            break
        steps.append(step)
        cur = prev
    steps.reverse()
    return Trace(cur, tuple(steps), w)


def bfs_decide(u, v, p: Presentation, budget: SearchBudget = None) -> V.Verdict:
    budget = budget or SearchBudget()
    u, v = tuple(u), tuple(v)
    if u == v:
        return V.equal({"trace": Trace(u, (), v)}, route=("bfs",))
    cap = max(budget.max_word_length, len(u), len(v))

    # parents[side]: word -> (parent word, step applied to parent)
    parents = ({u: (None, None)}, {v: (None, None)})
    frontiers = [[u], [v]]
    pruned = [False, False]
    nodes = 2

    def stitch(side, w):
        # w is known to both searches
        t0 = _path(parents[0], w)
        t1 = _path(parents[1], w)
        trace = concat_traces(t0, invert_trace(t1))
        replay_trace(trace, p)
        return V.equal({"trace": trace}, route=("bfs",))

    while True:
        live = [i for i in (0, 1) if frontiers[i]]
        if not live:
            break
        side = min(live, key=lambda i: len(frontiers[i]))
        nxt = []
        for w in frontiers[side]:
            nbrs, cut = _neighbours(w, p, cap)
            pruned[side] = pruned[side] or cut
            for w2, step in nbrs:
                if w2 in parents[side]:
                    continue
                parents[side][w2] = (w, step)
                if w2 in parents[1 - side]:
                    return stitch(side, w2)
                nxt.append(w2)
                nodes += 1
                if nodes > budget.max_nodes:
                    return V.unknown({"reason": "node budget"}, route=("bfs",))
        frontiers[side] = nxt
        if not frontiers[side] and not pruned[side]:
            # the whole congruence class of this side has been enumerated
            return V.not_equal(
                {"closed_class_of": "u" if side == 0 else "v",
                 "class_size": len(parents[side])},
                route=("bfs",),
            )
    return V.unknown({"reason": "both searches capped"}, route=("bfs",))


def abelian_decide(u, v, p: Presentation):
    """NotEqual via letter counts, or None.

    Every elementary step adds or subtracts d = counts(lhs) - counts(rhs)
    to the letter-count vector, so equal words must satisfy
    counts(u) - counts(v) = k * d for some integer k."""
    cu = [sum(1 for x in u if x == a) for a in p.alphabet]
    cv = [sum(1 for x in v if x == a) for a in p.alphabet]
    d = [
        sum(1 for x in p.lhs if x == a) - sum(1 for x in p.rhs if x == a)
        for a in p.alphabet
    ]
    diff = [x - y for x, y in zip(cu, cv)]
    k = None
    for di, dd in zip(diff, d):
        if dd == 0:
            if di != 0:
                return V.not_equal({"invariant": "letter counts"}, route=("abelian",))
            continue
        ki, rem = divmod(di, dd)
        if rem != 0 or (k is not None and ki != k):
            return V.not_equal({"invariant": "letter counts"}, route=("abelian",))
        k = ki
    return None


_MAX_CLOSURE_WORDS = 200_000


class ClosureTable:
    """Union-find over all words of length <= cap, glued along elementary
    rewrites.  Classes whose expansions escape the cap are marked open;
    answers about them stay undecided."""

    def __init__(self, p: Presentation, cap: int):
        self.p = p
        self.cap = cap
        words = [()]
        layer = [()]
        for _ in range(cap):
            layer = [w + (a,) for w in layer for a in p.alphabet]
            words.extend(layer)
        self.index = {w: i for i, w in enumerate(words)}
        parent = list(range(len(words)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        open_roots = []
        l, r = p.lhs, p.rhs
        grow = len(l) - len(r)
        for w, i in self.index.items():
            for j in occurrences(w, l):
                k = self.index[w[:j] + r + w[j + len(l):]]
                parent[find(i)] = find(k)
            if grow and occurrences(w, r) and len(w) + grow > cap:
                open_roots.append(i)
        self.parent = parent
        self.find = find
        self.open = {find(i) for i in open_roots}
        self.sizes = {}
        for i in range(len(words)):
            root = find(i)
            self.sizes[root] = self.sizes.get(root, 0) + 1

    def decide(self, u, v):
        """A verdict, or None when the words do not fit in the table."""
        iu, iv = self.index.get(u), self.index.get(v)
        if iu is None or iv is None:
            return None
        ru, rv = self.find(iu), self.find(iv)
        if ru == rv:
            inner = SearchBudget(
                max_nodes=4 * len(self.index), max_word_length=self.cap
            )
            trace = bfs_decide(u, v, self.p, inner).certificate["trace"]
            return V.equal({"trace": trace}, route=("closure",))
        if ru in self.open or rv in self.open:
            return V.unknown(
                {"reason": "open congruence class", "cap": self.cap},
                route=("closure",),
            )
        return V.not_equal(
            {"class_sizes": (self.sizes[ru], self.sizes[rv])},
            route=("closure",),
        )


_closure_tables = {}


def closure_decide(u, v, p: Presentation, budget: SearchBudget = None):
    """Memoised complete search over all short words; None when the word
    table would be too large or the queries cannot be settled."""
    u, v = tuple(u), tuple(v)
    cap = max(len(u), len(v)) + len(p.lhs) + 2
    cap += cap % 2  # quantise so repeated queries share a table
    m = len(p.alphabet)

    def total(c):
        return c + 1 if m == 1 else (m ** (c + 1) - 1) // (m - 1)

    while cap > 0 and total(cap) > _MAX_CLOSURE_WORDS:
        cap -= 2
    if cap < max(len(u), len(v), len(p.lhs)):
        return None
    key = (p, cap)
    table = _closure_tables.get(key)
    if table is None:
        table = _closure_tables[key] = ClosureTable(p, cap)
    return table.decide(u, v)


def equal_length_decide(u, v, p: Presentation, budget: SearchBudget = None) -> V.Verdict:
    """Complete decision when both relation sides have the same length:
    congruence classes are finite (length is conserved)."""
    if len(p.lhs) != len(p.rhs):
        raise ValueError("relation sides must have equal length")
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return V.not_equal({"invariant": "length"}, route=("equal-length",))
    inner = SearchBudget(
        max_nodes=(budget.max_nodes if budget else 10_000_000),
        max_word_length=len(u),
    )
    out = bfs_decide(u, v, p, inner)
    return out.with_route("equal-length")


def sof_rewrite_decide(u, v, p: Presentation) -> V.Verdict:
    """Complete decision when the longer side is self-overlap-free: the
    oriented rule lhs -> rhs has no critical pairs, so leftmost rewriting
    to normal form is confluent."""
    if len(p.lhs) <= len(p.rhs):
        raise ValueError("needs a strictly longer lhs")
    if not is_self_overlap_free(p.lhs):
        raise ValueError("lhs must be self-overlap-free")

    def normalise(w):
        steps = []
        while True:
            occ = occurrences(w, p.lhs)
            if not occ:
                return w, steps
            step = ElementaryStep(occ[0], LHS_TO_RHS)
            steps.append(step)
            w = w[: occ[0]] + p.rhs + w[occ[0] + len(p.lhs) :]

    u, v = tuple(u), tuple(v)
    nu, su = normalise(u)
    nv, sv = normalise(v)
    if nu == nv:
        back = tuple(inverse_step(s) for s in reversed(sv))
        trace = Trace(u, tuple(su) + back, v)
        replay_trace(trace, p)
        return V.equal({"trace": trace}, route=("sof-rewrite",))
    return V.not_equal(
        {"normal_forms": (nu, nv)}, route=("sof-rewrite",)
    )
