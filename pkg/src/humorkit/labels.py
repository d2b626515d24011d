"""Labels and vote strings shared across the pipeline.

Votes travel as the same normalized strings used on the wire and in
annotations.jsonl: "star1".."star5", "not_humor", "skip".
"""

from __future__ import annotations

import enum


class Label(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    DOUBTFUL = "doubtful"

    def __str__(self) -> str:
        return self.value


STAR_VOTES = tuple(f"star{k}" for k in range(1, 6))
VOTES = STAR_VOTES + ("not_humor", "skip")


def is_valid_vote(vote: str) -> bool:
    return vote in VOTES


def is_star(vote: str) -> bool:
    """True for the five humorous votes, whatever the star value."""
    return vote in STAR_VOTES


def is_countable(vote: str) -> bool:
    """Skips carry no opinion and never enter the humor ratio."""
    return vote != "skip"


def parse_label(s: str) -> Label:
    return Label(s)
