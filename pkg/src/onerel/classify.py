"""Structural classification of one-relation presentations.

Covers the side graphs (left/right letter graphs), self-overlap-freeness,
primitivity, special/subspecial/monadic shapes, torsion shape detection,
idempotent and group sufficient conditions, and the small-overlap index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import compress, units
from .words import (
    Presentation,
    Word,
    has_left_cycles,
    has_right_cycles,
    is_equal_length,
    is_self_overlap_free,
    is_special,
    render_word,
)

__all__ = [
    "SideGraph",
    "SpecialRelationError",
    "side_graphs",
    "side_graphs_from_relations",
    "is_self_overlap_free",
    "is_primitive",
    "torsion_witness",
    "SmallOverlapResult",
    "small_overlap_index",
    "Classification",
    "classify",
]


class SpecialRelationError(ValueError):
    """Side graphs are undefined when a relation side is empty."""


@dataclass(frozen=True)
class SideGraph:
    vertices: tuple
    edges: tuple  # tuple of (letter, letter) pairs, loops allowed
    has_cycle: bool


def _build_graph(vertices, edges) -> SideGraph:
    vertices = tuple(vertices)
    edges = tuple(edges)
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cycle = False
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            cycle = True  # loop or second path between the endpoints
        else:
            parent[ra] = rb
    return SideGraph(vertices, edges, cycle)


def side_graphs_from_relations(alphabet, relations):
    """Left and right graphs of an arbitrary relation list (pairs of
    non-empty words); used to reproduce multi-relation figures."""
    left_edges, right_edges = [], []
    for lhs, rhs in relations:
        lhs, rhs = tuple(lhs), tuple(rhs)
        if not lhs or not rhs:
            raise SpecialRelationError("side graphs need non-empty relation sides")
        left_edges.append((lhs[0], rhs[0]))
        right_edges.append((lhs[-1], rhs[-1]))
    return (
        _build_graph(alphabet, left_edges),
        _build_graph(alphabet, right_edges),
    )


def side_graphs(p: Presentation):
    if is_special(p):
        raise SpecialRelationError("special presentation: side graphs undefined")
    return side_graphs_from_relations(p.alphabet, [(p.lhs, p.rhs)])


def is_primitive(w: Word) -> bool:
    """True unless ``w`` is a proper power of a shorter word."""
    w = tuple(w)
    if not w:
        raise ValueError("primitivity is undefined for the empty word")
    doubled = w + w
    return not any(doubled[i : i + len(w)] == w for i in range(1, len(w)))


def torsion_witness(p: Presentation):
    """Return (u, v, m, n) with lhs = (uv)^m u, rhs = (uv)^n u, uv
    primitive and m > n >= 0, or None if the relation has no such shape."""
    lhs, rhs = p.lhs, p.rhs
    for period in range(1, len(lhs) + 1):
        uv = lhs[:period]
        if not is_primitive(uv):
            continue
        for u_len in range(0, period):
            u = lhs[:u_len]
            if (len(lhs) - u_len) % period or (len(rhs) - u_len) % period:
                continue
            m = (len(lhs) - u_len) // period
            n = (len(rhs) - u_len) // period
            if not (m > n >= 0):
                continue
            if uv * m + u == lhs and uv * n + u == rhs:
                return (u, uv[u_len:], m, n)
    return None


@dataclass(frozen=True)
class SmallOverlapResult:
    index: Optional[int]  # None when unbounded
    unbounded: bool
    pieces: frozenset


def small_overlap_index(p: Presentation) -> SmallOverlapResult:
    """Largest n such that no relation word is a product of fewer than n
    pieces (factors occurring at least twice across the relation words)."""
    if is_special(p):
        raise SpecialRelationError("small-overlap index undefined for special relations")
    relation_words = (p.lhs, p.rhs)
    counts = {}
    for w in relation_words:
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                counts[w[i:j]] = counts.get(w[i:j], 0) + 1
    pieces = frozenset(f for f, c in counts.items() if c >= 2)

    INF = float("inf")

    def min_factorization(w):
        dp = [INF] * (len(w) + 1)
        dp[len(w)] = 0
        for i in range(len(w) - 1, -1, -1):
            for piece in pieces:
                if w[i : i + len(piece)] == piece:
                    dp[i] = min(dp[i], 1 + dp[i + len(piece)])
        return dp[0]

    best = min(min_factorization(w) for w in relation_words)
    if best == INF:
        return SmallOverlapResult(None, True, pieces)
    return SmallOverlapResult(int(best), False, pieces)


@dataclass(frozen=True)
class Classification:
    presentation: Presentation
    special: bool
    subspecial: bool
    monadic: bool
    equal_length: bool
    lhs_sof: bool
    left_cycle_free: Optional[bool]  # None for special presentations
    right_cycle_free: Optional[bool]
    torsion: Optional[tuple]  # (u, v, m, n)
    group_sufficient: str  # "yes" | "unknown"
    has_nontrivial_idempotent: str  # "yes" | "no" | "unknown"
    small_overlap: Optional[SmallOverlapResult]
    weak_alpha: Optional[Word]
    strong_parameters: Optional[tuple]  # (C, D, k)

    def to_record(self) -> dict:
        t = self.torsion
        return {
            "presentation": str(self.presentation),
            "special": self.special,
            "subspecial": self.subspecial,
            "monadic": self.monadic,
            "equal_length": self.equal_length,
            "lhs_self_overlap_free": self.lhs_sof,
            "left_cycle_free": self.left_cycle_free,
            "right_cycle_free": self.right_cycle_free,
            "torsion": None
            if t is None
            else {
                "u": render_word(t[0]),
                "v": render_word(t[1]),
                "m": t[2],
                "n": t[3],
            },
            "group_sufficient": self.group_sufficient,
            "has_nontrivial_idempotent": self.has_nontrivial_idempotent,
            "small_overlap_index": None
            if self.small_overlap is None
            else ("unbounded" if self.small_overlap.unbounded else self.small_overlap.index),
            "weakly_compressible_alpha": None
            if self.weak_alpha is None
            else render_word(self.weak_alpha),
            "strongly_compressible": None
            if self.strong_parameters is None
            else {
                "common_prefix": render_word(self.strong_parameters[0]),
                "common_suffix": render_word(self.strong_parameters[1]),
                "k": self.strong_parameters[2],
            },
        }


def classify(p: Presentation) -> Classification:
    special = is_special(p)
    subspecial = (
        not special
        and len(p.lhs) >= len(p.rhs)
        and p.lhs[: len(p.rhs)] == p.rhs
        and p.lhs[len(p.lhs) - len(p.rhs) :] == p.rhs
    )
    monadic = (
        len(p.rhs) == 1
        and len(p.lhs) >= 2
        and (p.lhs[0] == p.rhs[0]) != (p.lhs[-1] == p.rhs[0])
    )

    group_sufficient = "unknown"
    if special:
        code = units.sof_code(p.lhs)
        if all(len(c) == 1 for c in code) and {c[0] for c in code} == set(p.lhs):
            group_sufficient = "yes"

    if special or subspecial:
        idem = "no" if group_sufficient == "yes" else "yes"
    else:
        idem = "no"

    alpha = compress.weak_alpha(p)
    strong = None
    if not special and has_left_cycles(p) and has_right_cycles(p) and p.lhs != p.rhs:
        c, d = compress.common_affixes(p)
        strong = (c, d, 1 + min(len(c), len(d)))

    return Classification(
        presentation=p,
        special=special,
        subspecial=subspecial,
        monadic=monadic,
        equal_length=is_equal_length(p),
        lhs_sof=is_self_overlap_free(p.lhs),
        left_cycle_free=None if special else not has_left_cycles(p),
        right_cycle_free=None if special else not has_right_cycles(p),
        torsion=torsion_witness(p),
        group_sufficient=group_sufficient,
        has_nontrivial_idempotent=idem,
        small_overlap=None if special else small_overlap_index(p),
        weak_alpha=alpha,
        strong_parameters=strong,
    )
