from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking a condition exhaustively.

    ``witness`` is set exactly when ``holds`` is false and names the first
    failing elements in the carrier's input order.  ``lhs`` and ``rhs``
    hold the exact values of the two sides, either at the witness (for
    pairwise scans) or of the whole inequality (for aggregate checks).
    """

    holds: bool
    witness: tuple | None = None
    lhs: Any = None
    rhs: Any = None
    condition: str | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("a witness must be given exactly when the check fails")

    def __bool__(self):
        return self.holds


def passed(lhs=None, rhs=None, condition=None, **details) -> Verdict:
    return Verdict(True, None, lhs, rhs, condition, details)


def failed(witness, lhs=None, rhs=None, condition=None, **details) -> Verdict:
    return Verdict(False, tuple(witness), lhs, rhs, condition, details)
