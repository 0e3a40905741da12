"""Tri-state verdicts with certificates and confidence labels."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

EQUAL = "equal"
NOT_EQUAL = "not_equal"
UNKNOWN = "unknown"

SOUND = "sound"
HEURISTIC = "heuristic"
REDUCED = "reduced"


@dataclass(frozen=True)
class Verdict:
    kind: str
    confidence: str = SOUND
    certificate: dict = field(default_factory=dict)
    route: tuple = ()

    def with_route(self, name: str) -> "Verdict":
        return replace(self, route=(name,) + self.route)

    def is_decided(self) -> bool:
        return self.kind != UNKNOWN


def equal(certificate=None, confidence=SOUND, route=()) -> Verdict:
    return Verdict(EQUAL, confidence, certificate or {}, tuple(route))


def not_equal(certificate=None, confidence=SOUND, route=()) -> Verdict:
    return Verdict(NOT_EQUAL, confidence, certificate or {}, tuple(route))


def unknown(certificate=None, route=()) -> Verdict:
    return Verdict(UNKNOWN, SOUND, certificate or {}, tuple(route))


def demote_heuristics(v: Verdict) -> Verdict:
    """Strict mode: heuristically justified decisions become Unknown."""
    if v.kind != UNKNOWN and v.confidence == HEURISTIC:
        cert = dict(v.certificate)
        cert["demoted_from"] = v.kind
        return Verdict(UNKNOWN, SOUND, cert, v.route)
    return v
