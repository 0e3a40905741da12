"""Unit groups of special one-relation monoids <A | w = 1>.

The invertible elements of such a monoid are generated by a finite
biprefix code obtained from ``w`` by repeatedly splitting overlaps:

>>> sorted(render_word(c) for c in sof_code(tuple("abbaab")))
['a', 'b']
>>> sorted(render_word(c) for c in sof_code(tuple("abcabdab")))
['ab', 'cabd']
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from . import verdict as V
from .words import Presentation, Word, is_special, render_word


class FactorizationError(ValueError):
    """A word does not factor over the given code."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


def _overlap_splits(code):
    """All available splits (x, y, u_len): a non-empty suffix of x of
    length u_len equals a prefix of y.  Containments (the suffix is all
    of x, or the prefix is all of y) count; the whole-word case x == y
    does not."""
    out = []
    for x in code:
        for y in code:
            top = min(len(x), len(y)) - (1 if x == y else 0)
            for k in range(1, top + 1):
                if x[len(x) - k :] == y[:k]:
                    out.append((x, y, k))
    return out


def sof_code(w, chooser: Callable = None) -> frozenset:
    """The self-overlap-free code C(w): the fixed point of replacing an
    overlapping pair x = vu, y = uw' by {u, v, w'}.  The result does not
    depend on the order splits are applied in; ``chooser`` (used by the
    tests) picks among the available splits.
    """
    w = tuple(w)
    if not w:
        raise ValueError("w must be non-empty")
    code = {w}
    while True:
        splits = _overlap_splits(code)
        if not splits:
            return frozenset(code)
        if chooser is None:
            split = sorted(splits)[0]
        else:
            split = chooser(splits)
        x, y, k = split
        u, v, w2 = y[:k], x[: len(x) - k], y[k:]
        code -= {x, y}
        code |= {t for t in (u, v, w2) if t}


def is_biprefix(code) -> bool:
    code = list(code)
    for x in code:
        for y in code:
            if x is y or x == y:
                continue
            if len(x) <= len(y) and (y[: len(x)] == x or y[len(y) - len(x) :] == x):
                return False
    return True


def factor_over_code(w, code) -> tuple:
    """Unique factorization of ``w`` over a prefix code; raises
    :class:`FactorizationError` (with the offending position) otherwise."""
    w = tuple(w)
    code = sorted(code, key=len)
    out = []
    i = 0
    while i < len(w):
        matches = [c for c in code if w[i : i + len(c)] == c]
        if not matches:
            raise FactorizationError(
                f"no code word matches at position {i} of {render_word(w)}",
                position=i,
            )
        if len(matches) > 1:
            raise FactorizationError(
                f"ambiguous factorization at position {i} of {render_word(w)}",
                position=i,
            )
        out.append(matches[0])
        i += len(matches[0])
    return tuple(out)


@dataclass(frozen=True)
class GroupPresentation:
    """One-relator group presentation with a positive relator word."""

    generators: tuple  # generator names
    relator: tuple  # tuple of generator names
    code_map: tuple = ()  # ((code word, generator name), ...)

    def __str__(self):
        return "%s | %s" % (",".join(self.generators), render_word(self.relator))


def unit_group_presentation(p: Presentation) -> GroupPresentation:
    if not is_special(p):
        raise ValueError("unit groups are computed for special presentations only")
    code = sof_code(p.lhs)
    factors = factor_over_code(p.lhs, code)
    names = {}
    for c in factors:
        if c not in names:
            names[c] = f"x{len(names) + 1}"
    gens = tuple(names[c] for c in sorted(names, key=lambda c: names[c]))
    relator = tuple(names[c] for c in factors)
    return GroupPresentation(gens, relator, tuple(sorted(names.items())))


# ---------------------------------------------------------------------------
# group words: tuples of (generator name, +1 | -1)


def free_reduce(gword) -> tuple:
    out = []
    for g, e in gword:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_gword(gword) -> tuple:
    return tuple((g, -e) for g, e in reversed(gword))


@dataclass(frozen=True)
class UnitGroupOracle:
    """A decision procedure for 'is this group word the identity'."""

    description: tuple  # (("kind", ...), ...) human/JSON friendly pairs
    is_identity: Callable = field(compare=False, default=None)

    def describe(self) -> dict:
        return dict(self.description)


def builtin_oracle(g: GroupPresentation) -> Optional[UnitGroupOracle]:
    """Recognise a few one-relator group shapes with decidable word problem.

    * a generator occurring exactly once in the relator: Tietze-eliminate
      it; the group is free on the remaining generators
    * relator a power of a single generator: cyclic of that order, free
      product with the unused generators
    * no generators / empty relator: trivial resp. free group

    Returns None when the shape is not recognised.
    """
    gens = g.generators
    relator = g.relator
    counts = {x: 0 for x in gens}
    for x in relator:
        counts[x] += 1

    if not relator:
        def is_id_free(gword):
            return not free_reduce(gword)

        kind = "trivial" if not gens else "free"
        return UnitGroupOracle(
            (("kind", kind), ("rank", len(gens))), is_id_free
        )

    once = [x for x in gens if counts[x] == 1]
    if once:
        t = once[0]
        i = relator.index(t)
        p_part = tuple((x, 1) for x in relator[:i])
        q_part = tuple((x, 1) for x in relator[i + 1 :])
        # p t q = 1  =>  t = p^-1 q^-1; the rest is free
        sub_pos = invert_gword(p_part) + invert_gword(q_part)
        sub_neg = invert_gword(sub_pos)

        def is_id_elim(gword):
            out = []
            for x, e in gword:
                if x == t:
                    out.extend(sub_pos if e == 1 else sub_neg)
                else:
                    out.append((x, e))
            return not free_reduce(tuple(out))

        return UnitGroupOracle(
            (("kind", "free"), ("rank", len(gens) - 1), ("eliminated", t)),
            is_id_elim,
        )

    used = {x for x in relator}
    if len(used) == 1:
        (x0,) = used
        n = counts[x0]

        def is_id_cyclic(gword):
            out = []
            for x, e in gword:
                if out and out[-1][0] == x:
                    out[-1] = (x, out[-1][1] + e)
                else:
                    out.append((x, e))
                top, te = out[-1]
                if top == x0:
                    te %= n
                    out[-1] = (top, te)
                if out[-1][1] == 0:
                    out.pop()
                    # merging may enable another reduction
                    while len(out) >= 2 and out[-1][0] == out[-2][0]:
                        x1 = out[-1][0]
                        e1 = out.pop()[1] + out.pop()[1]
                        if x1 == x0:
                            e1 %= n
                        if e1:
                            out.append((x1, e1))
            return not out

        return UnitGroupOracle(
            (("kind", "cyclic"), ("order", n), ("free_rank", len(gens) - 1)),
            is_id_cyclic,
        )

    return None


# ---------------------------------------------------------------------------
# word problem for special presentations via the unit group


def _scan(w, code):
    """Split ``w`` into maximal code-word runs and free letters.

    Returns a list of ("run", [code words]) and ("free", letter) segments.
    """
    by_length = sorted(code, key=len)
    segs = []
    i = 0
    while i < len(w):
        run = []
        while i < len(w):
            match = None
            for c in by_length:
                if w[i : i + len(c)] == c:
                    match = c
                    break
            if match is None:
                break
            run.append(match)
            i += len(match)
        if run:
            segs.append(("run", run))
        if i < len(w):
            segs.append(("free", w[i]))
            i += 1
    return segs


@lru_cache(maxsize=None)
def _candidates(code: frozenset, max_len: int) -> tuple:
    """All products of code words of total letter length <= max_len,
    shortest first, as tuples of code words."""
    out = [((), 0)]
    frontier = [((), 0)]
    ordered = sorted(code)
    while frontier:
        nxt = []
        for seq, n in frontier:
            for c in ordered:
                if n + len(c) <= max_len:
                    nxt.append((seq + (c,), n + len(c)))
        out.extend(nxt)
        frontier = nxt
    out.sort(key=lambda t: (t[1], t[0]))
    return tuple(seq for seq, _ in out)


class _SpecialMachine:
    """Per-presentation memoised machinery for the special word problem."""

    def __init__(self, p: Presentation, oracle: UnitGroupOracle):
        self.p = p
        self.oracle = oracle
        self.group = unit_group_presentation(p)
        self.name_of = dict(self.group.code_map)
        self.code = frozenset(self.name_of)
        self.max_len = len(p.lhs)
        self.undecided = False
        self._same = {}
        self._shrink = {}
        self._nf = {}

    def phi(self, run):
        return tuple((self.name_of[c], 1) for c in run)

    def same(self, g1, g2):
        key = (g1, g2)
        if key not in self._same:
            self._same[key] = self.oracle.is_identity(
                free_reduce(g1 + invert_gword(g2))
            )
        r = self._same[key]
        if r is None:
            self.undecided = True
        return r

    def shrink(self, window):
        """A strictly shorter code-word sequence equal to ``window`` in
        the unit group, or None."""
        window = tuple(window)
        if window not in self._shrink:
            before = self.undecided
            self.undecided = False
            found = None
            total = sum(len(c) for c in window)
            gw = self.phi(window)
            for cand in _candidates(self.code, total - 1):
                if self.same(gw, self.phi(cand)):
                    found = cand
                    break
            self._shrink[window] = (found, self.undecided)
            self.undecided = self.undecided or before
        found, undecided = self._shrink[window]
        if undecided:
            self.undecided = True
        return found

    def normal_form(self, w):
        w = tuple(w)
        if w in self._nf:
            nf, undecided = self._nf[w]
            if undecided:
                self.undecided = True
            return nf
        original = w
        before = self.undecided
        self.undecided = False
        while True:
            segs = _scan(w, self.code)
            pos = 0
            replaced = False
            for seg in segs:
                if seg[0] == "free":
                    pos += 1
                    continue
                run = seg[1]
                offs = [0]
                for c in run:
                    offs.append(offs[-1] + len(c))
                for a in range(len(run)):
                    if replaced:
                        break
                    for b in range(len(run), a, -1):
                        if offs[b] - offs[a] > self.max_len:
                            continue
                        cand = self.shrink(run[a:b])
                        if cand is not None:
                            flat = tuple(x for c in cand for x in c)
                            w = w[: pos + offs[a]] + flat + w[pos + offs[b] :]
                            replaced = True
                            break
                if replaced:
                    break
                pos += offs[-1]
            if not replaced:
                self._nf[original] = (w, self.undecided)
                self.undecided = self.undecided or before
                return w


_machines = {}


def _machine(p: Presentation, oracle: UnitGroupOracle) -> _SpecialMachine:
    key = (p, oracle.description)
    if key not in _machines:
        _machines[key] = _SpecialMachine(p, oracle)
    return _machines[key]


def special_word_problem(p: Presentation, u, v, oracle: UnitGroupOracle) -> V.Verdict:
    """Decide u = v in a special monoid given an oracle for its unit group.

    Words are reduced to normal form over Delta = C(lhs): maximal
    Delta*-factors are shrunk while the oracle certifies a strictly
    shorter Delta*-replacement (candidates bounded by the relator
    length); the normal forms are then compared segment-wise (free
    letters graphically, runs through the oracle).
    """
    if not is_special(p):
        raise ValueError("special presentations only")
    if oracle is None:
        raise ValueError("a unit-group oracle is required")
    m = _machine(p, oracle)
    m.undecided = False
    u, v = m.normal_form(u), m.normal_form(v)
    su, sv = _scan(u, m.code), _scan(v, m.code)
    result = V.EQUAL
    if len(su) != len(sv):
        result = V.NOT_EQUAL
    else:
        for a, b in zip(su, sv):
            if a[0] != b[0]:
                result = V.NOT_EQUAL
                break
            if a[0] == "free":
                if a[1] != b[1]:
                    result = V.NOT_EQUAL
                    break
            elif not m.same(m.phi(a[1]), m.phi(b[1])):
                result = V.NOT_EQUAL
                break
    if m.undecided:
        return V.unknown({"reason": "unit-group oracle undecided"}, route=("special",))
    cert = {"normal_forms": (u, v), "group": str(m.group), "oracle": oracle.describe()}
    if result == V.EQUAL:
        return V.equal(cert, route=("special",))
    return V.not_equal(cert, route=("special",))
