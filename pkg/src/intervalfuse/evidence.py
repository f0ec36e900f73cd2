"""Interval-valued evidence about a binary hypothesis.

A piece of evidence is an interval [lower, upper]: the pessimistic and
optimistic bounds on the probability that the hypothesis is true.  The
gap between the bounds measures imprecision; [0, 1] carries no
information at all, a point interval is complete certainty.

Everything downstream (the combination rules, the audit engine, the CLI)
consumes the `EvidenceInterval` value type defined here together with its
two derived measures:

* width        -- upper - lower, the imprecision.
* discrimination -- lower + upper - 1, positive when the evidence favours
  the hypothesis, negative when it favours the negation.

Two evidences *conflict* when their discriminations have strictly
opposite signs.  Neutral evidence (discrimination exactly zero) conflicts
with nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "EvidenceInterval",
    "InvalidIntervalError",
    "VACUOUS",
    "NON_FINITE",
    "OUT_OF_RANGE",
    "INVERTED_BOUNDS",
    "make_interval",
    "discrimination",
    "is_conflicting",
    "complement",
]

# Violation codes carried by InvalidIntervalError, one per rejection reason.
NON_FINITE = "non_finite"
OUT_OF_RANGE = "out_of_range"
INVERTED_BOUNDS = "inverted_bounds"


class InvalidIntervalError(ValueError):
    """Bounds that do not form a valid evidence interval.

    The ``code`` attribute identifies which constraint failed:
    ``non_finite``, ``out_of_range`` or ``inverted_bounds``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True, slots=True)
class EvidenceInterval:
    """A validated pair 0 <= lower <= upper <= 1.

    Instances are immutable plain values; equality is componentwise.
    Bounds are checked exactly against the closed unit interval, with no
    epsilon slack: inputs are user data and must already be legal.
    """

    lower: float
    upper: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lower), float(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidIntervalError(
                NON_FINITE, f"interval bounds must be finite, got ({lo!r}, {hi!r})"
            )
        if lo < 0.0 or hi > 1.0 or lo > 1.0 or hi < 0.0:
            raise InvalidIntervalError(
                OUT_OF_RANGE, f"interval bounds must lie in [0, 1], got ({lo!r}, {hi!r})"
            )
        if lo > hi:
            raise InvalidIntervalError(
                INVERTED_BOUNDS, f"lower bound exceeds upper bound: ({lo!r}, {hi!r})"
            )

    @property
    def width(self) -> float:
        """Imprecision of the evidence: upper - lower, in [0, 1]."""
        return self.upper - self.lower

    @property
    def discrimination(self) -> float:
        """lower + upper - 1: sign says which hypothesis the evidence favours."""
        return self.lower + self.upper - 1.0

    def complement(self) -> "EvidenceInterval":
        """The same evidence read as support for the negated hypothesis."""
        return EvidenceInterval(1.0 - self.upper, 1.0 - self.lower)

    def __str__(self) -> str:
        return f"[{self.lower:g}, {self.upper:g}]"


#: The information-free interval [0, 1]; identity of every combination rule.
VACUOUS = EvidenceInterval(0.0, 1.0)


def make_interval(lower: float, upper: float) -> EvidenceInterval:
    """Validate and build an evidence interval.

    Raises InvalidIntervalError with a distinct code per failed
    constraint: non-finite inputs, bounds outside [0, 1], or
    lower > upper.
    """
    return EvidenceInterval(lower, upper)


def discrimination(e: EvidenceInterval) -> float:
    """Signed scalar in [-1, 1]: lower support for the hypothesis minus
    lower support for its negation."""
    return e.discrimination


def is_conflicting(e1: EvidenceInterval, e2: EvidenceInterval) -> bool:
    """True when the two discriminations have strictly opposite signs.

    Zero discrimination on either side never counts as conflict: neutral
    evidence is compatible with everything.
    """
    d1 = e1.discrimination
    d2 = e2.discrimination
    return (d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0)


def complement(e: EvidenceInterval) -> EvidenceInterval:
    """The interval [1 - upper, 1 - lower]."""
    return e.complement()
