"""Combination rules for interval evidence.

Three rules fold evidences about the same binary hypothesis into one:

* ``DS``  -- Dempster's rule on the three-element frame {hypothesis,
  negation, unknown}.  The baseline; always narrows the interval, even
  when the inputs contradict each other.
* ``TP``  -- geometric rule: map both intervals to the upper half plane
  (see :mod:`intervalfuse.geometry`), add the vectors, map back.
  Reinforces agreeing evidence and widens under strong conflict.
* ``MTP`` -- the dependency-aware variant of ``TP``: coordinates combine
  through the signed power mean :func:`ct` instead of plain addition,
  so correlated evidence is not counted twice.  Exponent 1 is exactly
  ``TP``; as the exponent grows the sum approaches the max operator,
  the limit of total dependency.

All rules are commutative and associative (up to float reassociation),
admit the vacuous interval as identity, and commute with taking
complements.  ``fold`` exploits associativity to combine a stream
incrementally, left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .evidence import EvidenceInterval, is_conflicting
from .geometry import (
    WIDTH_FLOOR,
    HalfPlaneVector,
    _check_floor,
    _forward,
    _inverse,
    to_half_plane,
)

__all__ = [
    "MassTriple",
    "DependencyParam",
    "FusionReport",
    "TotalConflictError",
    "EmptyInputError",
    "P_MAX",
    "DS_CONFLICT_EPS",
    "RULE_DS",
    "RULE_TP",
    "RULE_MTP",
    "RULES",
    "ct",
    "estimate_p",
    "combine_tp",
    "combine_mtp",
    "combine_ds",
    "combine_ds_masses",
    "fold",
]

RULE_DS = "DS"
RULE_TP = "TP"
RULE_MTP = "MTP"
RULES = (RULE_DS, RULE_TP, RULE_MTP)

#: Dependency exponents are capped here.  The raw estimate diverges as the
#: two conditional dependency measures approach certainty, and at 64 the
#: signed power sum is already within double-precision noise of the max
#: operator, the limiting behaviour it is approximating.
P_MAX = 64.0

#: Dempster normalization divides by (1 - K); below this the combination is
#: treated as the total-conflict degeneracy rather than a saturated value.
DS_CONFLICT_EPS = 1e-12

# Tolerance on the mass-sum invariant; generous against float rounding.
_MASS_SUM_TOL = 1e-12


class TotalConflictError(ArithmeticError):
    """Dempster combination of fully contradictory certain evidence."""


class EmptyInputError(ValueError):
    """A fold needs at least one evidence."""


@dataclass(frozen=True, slots=True)
class MassTriple:
    """Basic probability assignment on the binary frame.

    Masses on the hypothesis, its negation and the whole frame (the
    unknown); non-negative and summing to one.
    """

    m_h: float
    m_not_h: float
    m_theta: float

    def __post_init__(self) -> None:
        if min(self.m_h, self.m_not_h, self.m_theta) < 0.0:
            raise ValueError(f"mass components must be non-negative: {self}")
        total = self.m_h + self.m_not_h + self.m_theta
        if abs(total - 1.0) > _MASS_SUM_TOL:
            raise ValueError(f"masses must sum to 1, got {total!r}: {self}")

    @classmethod
    def from_interval(cls, e: EvidenceInterval) -> "MassTriple":
        """Support = lower, dissent = 1 - upper, unknown = width."""
        return cls(e.lower, 1.0 - e.upper, e.upper - e.lower)

    def to_interval(self) -> EvidenceInterval:
        """[belief, plausibility] of the hypothesis."""
        lo = self.m_h
        hi = 1.0 - self.m_not_h
        if hi < lo:  # float guard when the unknown mass underflows to zero
            hi = lo
        return EvidenceInterval(lo, hi)


@dataclass(frozen=True, slots=True)
class DependencyParam:
    """Exponent of the signed power mean, with the dependency measures it
    was estimated from (if any).

    p = 1 models independent evidence; larger p, more dependency.
    """

    p: float
    alpha1: Optional[float] = None
    alpha2: Optional[float] = None

    def __post_init__(self) -> None:
        p = float(self.p)
        object.__setattr__(self, "p", p)
        if not math.isfinite(p) or p < 1.0 or p > P_MAX:
            raise ValueError(f"dependency exponent must lie in [1, {P_MAX:g}], got {p!r}")


@dataclass(frozen=True, slots=True)
class FusionReport:
    """Result of a combination plus its provenance.

    ``intermediate`` is the combined half-plane vector for the geometric
    rules; ``ds_conflict_mass`` is the Dempster conflict mass K and is
    present exactly when the rule is DS.
    """

    result: EvidenceInterval
    rule: str
    conflict: bool
    p_used: Optional[float] = None
    intermediate: Optional[HalfPlaneVector] = None
    ds_conflict_mass: Optional[float] = None

    def __post_init__(self) -> None:
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if (self.rule == RULE_DS) != (self.ds_conflict_mass is not None):
            raise ValueError("ds_conflict_mass must be present exactly for DS reports")
        if self.ds_conflict_mass is not None and not (0.0 <= self.ds_conflict_mass < 1.0):
            raise ValueError(f"conflict mass must lie in [0, 1), got {self.ds_conflict_mass!r}")

    @property
    def width(self) -> float:
        return self.result.width

    def to_dict(self) -> dict:
        """JSON-ready view; schema documented in the README."""
        z = self.intermediate
        return {
            "rule": self.rule,
            "result": {"lower": self.result.lower, "upper": self.result.upper},
            "width": self.width,
            "conflict": self.conflict,
            "p_used": self.p_used,
            "intermediate": None if z is None else {"u": z.u, "v": z.v},
            "ds_conflict_mass": self.ds_conflict_mass,
        }


def ct(x: float, y: float, p: float) -> float:
    """Signed power sum: sign(s) * |s|^(1/p) for s = sign(x)|x|^p + sign(y)|y|^p.

    Associative and commutative for any fixed p >= 1; zero is its
    identity.  p = 1 reduces to plain addition, and as p grows the result
    approaches whichever argument is larger in magnitude.  Evaluated with
    the arguments scaled by their magnitude maximum so that large inputs
    cannot overflow at high exponents.
    """
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"arguments must be finite, got ({x!r}, {y!r})")
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"exponent must be a finite value >= 1, got {p!r}")
    if p == 1.0:
        return x + y
    m = max(abs(x), abs(y))
    if m == 0.0:
        return 0.0
    s = math.copysign((abs(x) / m) ** p, x) + math.copysign((abs(y) / m) ** p, y)
    if s == 0.0:
        return 0.0
    return math.copysign(m * abs(s) ** (1.0 / p), s)


def estimate_p(alpha1: float, alpha2: float) -> DependencyParam:
    """Dependency exponent from the two conditional dependency measures.

    Raw value (alpha1 + alpha2) / (2 - (alpha1 + alpha2)), clamped into
    [1, P_MAX]: values below 1 would model anti-dependency the power mean
    cannot express, and the estimate diverges as the measures approach 1.
    """
    for name, a in (("alpha1", alpha1), ("alpha2", alpha2)):
        if not math.isfinite(a) or not (0.0 <= a <= 1.0):
            raise ValueError(f"{name} must lie in [0, 1], got {a!r}")
    s = alpha1 + alpha2
    raw = math.inf if s >= 2.0 else s / (2.0 - s)
    p = min(max(raw, 1.0), P_MAX)
    return DependencyParam(p=p, alpha1=alpha1, alpha2=alpha2)


# -- float kernels shared by the public rules and the audit engine --------
#
# The audit engine drives these directly so that replaying one of its
# counterexamples through the public functions reproduces the identical
# floats.


def _tp_pair(
    e1: EvidenceInterval, e2: EvidenceInterval, width_floor: float
) -> tuple[float, float, float, float]:
    u1, v1 = _forward(e1.lower, e1.upper, width_floor)
    u2, v2 = _forward(e2.lower, e2.upper, width_floor)
    lo, hi = _inverse(u1 + u2, v1 + v2)
    return lo, hi, u1 + u2, v1 + v2


def _mtp_pair(
    e1: EvidenceInterval, e2: EvidenceInterval, p: float, width_floor: float
) -> tuple[float, float, float, float]:
    u1, v1 = _forward(e1.lower, e1.upper, width_floor)
    u2, v2 = _forward(e2.lower, e2.upper, width_floor)
    u = ct(u1, u2, p)
    v = ct(v1, v2, p)
    lo, hi = _inverse(u, v)
    return lo, hi, u, v


def _ds_pair(
    e1: EvidenceInterval, e2: EvidenceInterval
) -> tuple[float, float, float]:
    m1 = MassTriple.from_interval(e1)
    m2 = MassTriple.from_interval(e2)
    combined, k = combine_ds_masses(m1, m2)
    lo_hi = combined.to_interval()
    return lo_hi.lower, lo_hi.upper, k


def combine_ds_masses(m1: MassTriple, m2: MassTriple) -> tuple[MassTriple, float]:
    """Dempster's rule on two binary-frame assignments.

    Returns the normalized combined assignment and the conflict mass K.
    Raises TotalConflictError when 1 - K vanishes (certain, fully
    contradictory inputs), where the normalization is undefined.
    """
    k = m1.m_h * m2.m_not_h + m1.m_not_h * m2.m_h
    num_h = m1.m_h * m2.m_h + m1.m_h * m2.m_theta + m1.m_theta * m2.m_h
    num_not_h = (
        m1.m_not_h * m2.m_not_h + m1.m_not_h * m2.m_theta + m1.m_theta * m2.m_not_h
    )
    num_theta = m1.m_theta * m2.m_theta
    # the surviving mass equals 1 - K exactly; normalizing by its computed
    # sum keeps the output masses summing to 1 even when K is nearly 1,
    # where evaluating 1 - k directly loses most of its digits
    denom = num_h + num_not_h + num_theta
    if denom < DS_CONFLICT_EPS:
        raise TotalConflictError(
            f"total conflict: surviving mass 1 - K = {denom!r} is below {DS_CONFLICT_EPS:g}"
        )
    return MassTriple(num_h / denom, num_not_h / denom, num_theta / denom), k


# -- public pairwise rules -------------------------------------------------


def combine_tp(
    e1: EvidenceInterval, e2: EvidenceInterval, *, width_floor: float = WIDTH_FLOOR
) -> FusionReport:
    """Geometric combination: add the half-plane images, map back."""
    _check_floor(width_floor)
    lo, hi, u, v = _tp_pair(e1, e2, width_floor)
    return FusionReport(
        result=EvidenceInterval(lo, hi),
        rule=RULE_TP,
        conflict=is_conflicting(e1, e2),
        intermediate=HalfPlaneVector(u, v),
    )


def combine_mtp(
    e1: EvidenceInterval,
    e2: EvidenceInterval,
    dep: DependencyParam,
    *,
    width_floor: float = WIDTH_FLOOR,
) -> FusionReport:
    """Dependency-aware combination: power-mean the half-plane images.

    With dep.p = 1 this is exactly combine_tp.
    """
    _check_floor(width_floor)
    lo, hi, u, v = _mtp_pair(e1, e2, dep.p, width_floor)
    return FusionReport(
        result=EvidenceInterval(lo, hi),
        rule=RULE_MTP,
        conflict=is_conflicting(e1, e2),
        p_used=dep.p,
        intermediate=HalfPlaneVector(u, v),
    )


def combine_ds(e1: EvidenceInterval, e2: EvidenceInterval) -> FusionReport:
    """Dempster's rule on the binary frame.

    The result interval is [belief, plausibility] of the hypothesis under
    the combined assignment.  Raises TotalConflictError for certain,
    fully contradictory inputs.
    """
    lo, hi, k = _ds_pair(e1, e2)
    return FusionReport(
        result=EvidenceInterval(lo, hi),
        rule=RULE_DS,
        conflict=is_conflicting(e1, e2),
        ds_conflict_mass=k,
    )


# -- n-ary folding ---------------------------------------------------------


def _singleton_report(
    e: EvidenceInterval, rule: str, dep: Optional[DependencyParam], width_floor: float
) -> FusionReport:
    if rule == RULE_DS:
        return FusionReport(result=e, rule=rule, conflict=False, ds_conflict_mass=0.0)
    return FusionReport(
        result=e,
        rule=rule,
        conflict=False,
        p_used=dep.p if (rule == RULE_MTP and dep is not None) else None,
        intermediate=to_half_plane(e, width_floor=width_floor),
    )


def fold(
    rule: str,
    evidences: Iterable[EvidenceInterval],
    dep: Optional[DependencyParam] = None,
    *,
    width_floor: float = WIDTH_FLOOR,
) -> FusionReport:
    """Left-fold a stream of evidences under one rule.

    Associativity makes the outcome order-independent up to float
    reassociation (about 1e-9 per endpoint); bit-exact order independence
    is not promised.  A singleton stream is returned unchanged.  The
    returned report describes the final combination step: its conflict
    flag (and conflict mass, for DS) belongs to that last pair.

    MTP requires ``dep``; the exponent is fixed across the whole fold,
    since a per-pair exponent would break associativity.
    """
    rule_id = rule.upper()
    if rule_id not in RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES}")
    _check_floor(width_floor)
    if rule_id == RULE_MTP and dep is None:
        raise ValueError("the MTP rule requires a DependencyParam")
    if rule_id != RULE_MTP and dep is not None:
        raise ValueError(f"dependency parameters do not apply to the {rule_id} rule")

    items = list(evidences)
    if not items:
        raise EmptyInputError("cannot fold an empty collection of evidences")

    report = _singleton_report(items[0], rule_id, dep, width_floor)
    acc = items[0]
    for nxt in items[1:]:
        if rule_id == RULE_TP:
            report = combine_tp(acc, nxt, width_floor=width_floor)
        elif rule_id == RULE_MTP:
            report = combine_mtp(acc, nxt, dep, width_floor=width_floor)
        else:
            report = combine_ds(acc, nxt)
        acc = report.result
    return report
