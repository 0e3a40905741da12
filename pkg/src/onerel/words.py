"""Words, one-relation presentations and elementary rewriting steps.

A word is a tuple of letters; a letter is a non-empty string token.  A
presentation ``<A | lhs = rhs>`` is stored in canonical orientation: ``lhs``
is the longer side, ties broken so that ``lhs`` is the lexicographically
larger side in the alphabet ordering.

Text grammar (used by the CLI and by :func:`parse_presentation`)::

    a,b | baaba = aba           # single-character letters juxtapose
    e2,e12 | e12.e2 = e2        # multi-character letters need '.' separators
    a,b | abbaab = 1            # the literal 1 denotes the empty word

>>> p = parse_presentation("a,b | aba = baaba")
>>> render_word(p.lhs), render_word(p.rhs)
('baaba', 'aba')
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

Letter = str
Word = tuple  # tuple[Letter, ...]

EMPTY: Word = ()

LHS_TO_RHS = "lhs->rhs"
RHS_TO_LHS = "rhs->lhs"


class PresentationError(ValueError):
    """Raised for malformed presentations or unparsable text."""


class RewriteError(ValueError):
    """Raised when an elementary step does not apply at its position."""


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple
    lhs: Word
    rhs: Word

    def __str__(self):
        return render_presentation(self)


@dataclass(frozen=True)
class ElementaryStep:
    """One application of the defining relation at a fixed position."""

    position: int
    direction: str  # LHS_TO_RHS or RHS_TO_LHS


@dataclass(frozen=True)
class Trace:
    start: Word
    steps: tuple  # tuple[ElementaryStep, ...]
    end: Word


def make_presentation(alphabet, lhs, rhs) -> Presentation:
    alphabet = tuple(alphabet)
    lhs, rhs = tuple(lhs), tuple(rhs)
    if not alphabet:
        raise PresentationError("alphabet must be non-empty")
    if len(set(alphabet)) != len(alphabet):
        raise PresentationError("alphabet letters must be distinct")
    for a in alphabet:
        if not a or not isinstance(a, str):
            raise PresentationError("letters must be non-empty strings")
        if a == "1":
            raise PresentationError("the letter '1' is reserved for the empty word")
    index = {a: i for i, a in enumerate(alphabet)}
    for w in (lhs, rhs):
        for a in w:
            if a not in index:
                raise PresentationError(f"letter {a!r} not in alphabet")
    if not lhs and not rhs:
        raise PresentationError("relation sides cannot both be empty")
    ku = (len(lhs), tuple(index[a] for a in lhs))
    kv = (len(rhs), tuple(index[a] for a in rhs))
    if kv > ku:
        lhs, rhs = rhs, lhs
    return Presentation(alphabet, lhs, rhs)


def parse_word(text: str, alphabet) -> Word:
    text = text.strip()
    if text == "1":
        return EMPTY
    if not text:
        raise PresentationError("empty word must be written as 1")
    letters = set(alphabet)
    if "." in text:
        parts = text.split(".")
        for part in parts:
            if part not in letters:
                raise PresentationError(f"unknown letter {part!r}")
        return tuple(parts)
    # greedy longest-prefix match
    by_length = sorted(alphabet, key=len, reverse=True)
    out = []
    i = 0
    while i < len(text):
        for a in by_length:
            if text.startswith(a, i):
                out.append(a)
                i += len(a)
                break
        else:
            raise PresentationError(f"cannot read a letter at {text[i:]!r}")
    return tuple(out)


def parse_presentation(text: str) -> Presentation:
    if "|" not in text:
        raise PresentationError("expected '<alphabet> | <word> = <word>'")
    alpha_part, rel_part = text.split("|", 1)
    alphabet = tuple(a.strip() for a in alpha_part.split(","))
    if any(not a for a in alphabet):
        raise PresentationError("empty letter in alphabet list")
    if "=" not in rel_part:
        raise PresentationError("relation must contain '='")
    left, right = rel_part.split("=", 1)
    lhs = parse_word(left, alphabet)
    rhs = parse_word(right, alphabet)
    return make_presentation(alphabet, lhs, rhs)


def render_word(w: Word, alphabet=None) -> str:
    if not w:
        return "1"
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return ".".join(w)


def render_presentation(p: Presentation) -> str:
    return "%s | %s = %s" % (
        ",".join(p.alphabet),
        render_word(p.lhs),
        render_word(p.rhs),
    )


def occurrences(w: Word, factor: Word) -> list:
    """Start positions of ``factor`` in ``w``; the empty factor occurs
    at every boundary."""
    if not factor:
        return list(range(len(w) + 1))
    n, m = len(w), len(factor)
    return [i for i in range(n - m + 1) if w[i : i + m] == factor]


def is_self_overlap_free(w: Word) -> bool:
    """True when no proper non-empty prefix of ``w`` is also a suffix."""
    if not w:
        raise ValueError("the empty word has no overlaps to speak of")
    return not any(w[:k] == w[len(w) - k :] for k in range(1, len(w)))


def apply_step(w: Word, p: Presentation, step: ElementaryStep) -> Word:
    if step.direction == LHS_TO_RHS:
        old, new = p.lhs, p.rhs
    elif step.direction == RHS_TO_LHS:
        old, new = p.rhs, p.lhs
    else:
        raise RewriteError(f"unknown direction {step.direction!r}")
    i = step.position
    if i < 0 or i + len(old) > len(w) or w[i : i + len(old)] != old:
        raise RewriteError(
            f"{render_word(old)} does not occur at position {i} of {render_word(w)}"
        )
    return w[:i] + new + w[i + len(old) :]


def inverse_step(step: ElementaryStep) -> ElementaryStep:
    other = RHS_TO_LHS if step.direction == LHS_TO_RHS else LHS_TO_RHS
    return ElementaryStep(step.position, other)


def replay_trace(trace: Trace, p: Presentation) -> Word:
    """Apply the steps of ``trace`` and check the endpoints; returns the
    final word (graphically equal to ``trace.end``)."""
    w = trace.start
    for step in trace.steps:
        w = apply_step(w, p, step)
    if w != trace.end:
        raise RewriteError("trace does not end at its declared end word")
    return w


def concat_traces(first: Trace, second: Trace) -> Trace:
    if first.end != second.start:
        raise RewriteError("traces do not compose")
    return Trace(first.start, first.steps + second.steps, second.end)


def invert_trace(trace: Trace) -> Trace:
    steps = tuple(inverse_step(s) for s in reversed(trace.steps))
    return Trace(trace.end, steps, trace.start)


def letter_counts(w: Word, alphabet) -> tuple:
    return tuple(sum(1 for a in w if a == b) for b in alphabet)


def reverse_word(w: Word) -> Word:
    return w[::-1]


def reverse_presentation(p: Presentation) -> Presentation:
    return make_presentation(p.alphabet, p.lhs[::-1], p.rhs[::-1])


def is_special(p: Presentation) -> bool:
    return not p.rhs


def is_equal_length(p: Presentation) -> bool:
    return len(p.lhs) == len(p.rhs)


def has_left_cycles(p: Presentation) -> bool:
    """For a single relation the left graph has a cycle exactly when both
    sides share their first letter (a loop counts)."""
    return bool(p.lhs) and bool(p.rhs) and p.lhs[0] == p.rhs[0]


def has_right_cycles(p: Presentation) -> bool:
    return bool(p.lhs) and bool(p.rhs) and p.lhs[-1] == p.rhs[-1]


def words_over(alphabet, max_len: int) -> Iterator[Word]:
    """All words over ``alphabet`` of length at most ``max_len``,
    in length-lexicographic order."""
    from itertools import product

    for n in range(max_len + 1):
        for tup in product(alphabet, repeat=n):
            yield tup
