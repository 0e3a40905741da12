"""Decision procedures for the word problem in one-relation monoids."""

from .words import (
    ElementaryStep,
    Presentation,
    PresentationError,
    RewriteError,
    Trace,
    apply_step,
    letter_counts,
    make_presentation,
    parse_presentation,
    parse_word,
    render_presentation,
    render_word,
    replay_trace,
    reverse_presentation,
)
from .verdict import Verdict

__all__ = [
    "ElementaryStep",
    "Presentation",
    "PresentationError",
    "RewriteError",
    "Trace",
    "Verdict",
    "apply_step",
    "letter_counts",
    "make_presentation",
    "parse_presentation",
    "parse_word",
    "render_presentation",
    "render_word",
    "replay_trace",
    "reverse_presentation",
]

__version__ = "0.1.0"
