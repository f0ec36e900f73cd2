"""Seeded randomized audit of the algebraic laws of the combination rules.

The engine samples evidence pairs and triples uniformly from the triangle
of valid intervals and checks, for the chosen rule:

* closure            -- the result is again a valid interval
* commutativity      -- combine(x, y) == combine(y, x)
* associativity      -- (x * y) * z == x * (y * z)
* continuity         -- a 1e-6 endpoint perturbation moves the result by
                        a bounded amount (checked for widths >= 0.01)
* identity           -- combining with [0, 1] changes nothing
* negation_symmetry  -- combining complements complements the combination
* conflict_widening  -- strongly conflicting inputs widen the result
                        (checked only inside the highly-conflicting
                        regime; the rules promise nothing outside it)
* reinforcement      -- inputs favouring the same hypothesis narrow the
                        result below both input widths

Failures are data, not errors: each law reports pass/fail/skipped counts,
the worst violation seen and up to ten replayable counterexamples.

Determinism: trial i draws from a SplitMix64 substream derived from
(seed, i), so a report depends only on its config, bit for bit, on any
platform, and would not change if trials were partitioned across workers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from .evidence import EvidenceInterval, VACUOUS
from .geometry import WIDTH_FLOOR, _forward
from .rules import (
    RULE_DS,
    RULE_MTP,
    RULE_TP,
    RULES,
    TotalConflictError,
    _ds_pair,
    _mtp_pair,
    _tp_pair,
)

__all__ = [
    "SplitMix64",
    "trial_stream",
    "sample_interval",
    "MIN_SAMPLE_WIDTH",
    "LAWS",
    "DEFAULT_TOLERANCES",
    "DEFAULT_REGIME_FILTERS",
    "AuditConfig",
    "LawResult",
    "AuditReport",
    "run_audit",
    "replay_counterexample",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

#: Sampled intervals keep at least this much width, staying well clear of
#: the geometric width floor.
MIN_SAMPLE_WIDTH = 1e-6


class SplitMix64:
    """SplitMix64: a fixed, portable 64-bit generator.

    state += 0x9E3779B97F4A7C15; the output mixes the new state with two
    xor-shift-multiply rounds (constants 0xBF58476D1CE4E5B9 and
    0x94D049BB133111EB).  Uniform doubles take the top 53 bits.
    """

    __slots__ = ("_state",)

    def __init__(self, state: int):
        self._state = state & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with full 53-bit resolution."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def trial_stream(seed: int, index: int) -> SplitMix64:
    """Independent substream for one trial, derived from (seed, index)."""
    return SplitMix64(seed ^ ((index * _GAMMA) & _MASK64))


def sample_interval(rng: SplitMix64) -> EvidenceInterval:
    """Uniform sample over the triangle {0 <= lower <= upper <= 1}.

    Two uniform draws, sorted; the width is then clamped up to
    MIN_SAMPLE_WIDTH."""
    a = rng.uniform()
    b = rng.uniform()
    if a > b:
        a, b = b, a
    if b - a < MIN_SAMPLE_WIDTH:
        b = a + MIN_SAMPLE_WIDTH
        if b > 1.0:
            b = 1.0
            a = 1.0 - MIN_SAMPLE_WIDTH
    return EvidenceInterval(a, b)


LAWS = (
    "closure",
    "commutativity",
    "associativity",
    "continuity",
    "identity",
    "negation_symmetry",
    "conflict_widening",
    "reinforcement",
)

DEFAULT_TOLERANCES: Mapping[str, float] = MappingProxyType(
    {
        "closure": 1e-15,
        "commutativity": 1e-12,
        "associativity": 1e-9,
        "identity": 1e-9,
        "negation_symmetry": 1e-9,
        "conflict_widening_slack": 1e-12,
        "reinforcement_slack": 1e-12,
        "continuity_delta": 1e-6,
        "continuity_lipschitz": 1e6,
    }
)

DEFAULT_REGIME_FILTERS: Mapping[str, float] = MappingProxyType(
    {
        # continuity is only claimed away from the width singularity
        "continuity_min_width": 1e-2,
        # "highly conflicting": images nearly opposite along the real axis
        # (v small next to |u|) and nearly cancelling (|u1+u2| small next
        # to both |u|).  Constants are audit configuration, not part of
        # the rules themselves.
        "widening_v_ratio": 0.1,
        "widening_cancel_ratio": 0.1,
    }
)


@dataclass(frozen=True, slots=True)
class AuditConfig:
    """What to audit and how hard.

    ``p`` is required for (and only meaningful with) the MTP rule.
    Tolerances and regime filters default to the documented constants;
    override entries by passing a full mapping.
    """

    seed: int
    trials: int
    rule: str
    p: Optional[float] = None
    width_floor: float = WIDTH_FLOOR
    tolerances: Mapping[str, float] = field(default=DEFAULT_TOLERANCES)
    regime_filters: Mapping[str, float] = field(default=DEFAULT_REGIME_FILTERS)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rule", self.rule.upper())
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}; expected one of {RULES}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int) or not (0 <= self.seed <= _MASK64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if (self.rule == RULE_MTP) != (self.p is not None):
            raise ValueError("an exponent p must be given exactly when rule is MTP")
        if self.p is not None and not (math.isfinite(self.p) and self.p >= 1.0):
            raise ValueError(f"p must be a finite value >= 1, got {self.p!r}")
        for name, value in self.tolerances.items():
            if not (value > 0.0):
                raise ValueError(f"tolerance {name!r} must be positive, got {value!r}")
        if not (0.0 < self.width_floor < 1.0):
            raise ValueError(f"width floor must lie in (0, 1), got {self.width_floor!r}")


@dataclass(frozen=True, slots=True)
class LawResult:
    """Outcome of one law over all trials.

    passes + failures + skipped == trials.  ``worst_violation`` is the
    largest excess over the law's allowance among failures (0.0 when the
    law never failed).  Counterexamples record the sampled inputs, the
    law-specific outputs, the measured deviation and its excess; they are
    capped at ten per law.
    """

    passes: int
    failures: int
    skipped: int
    worst_violation: float
    counterexamples: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "passes": self.passes,
            "failures": self.failures,
            "skipped": self.skipped,
            "worst_violation": self.worst_violation,
            "counterexamples": list(self.counterexamples),
        }


@dataclass(frozen=True, slots=True)
class AuditReport:
    """Per-law results plus the exact configuration that produced them."""

    rng: str
    seed: int
    trials: int
    rule: str
    p: Optional[float]
    width_floor: float
    tolerances: dict
    regime_filters: dict
    laws: dict

    @property
    def failures_total(self) -> int:
        return sum(r.failures for r in self.laws.values())

    def to_dict(self) -> dict:
        return {
            "engine": {
                "rng": self.rng,
                "seed": self.seed,
                "trials": self.trials,
                "rule": self.rule,
                "p": self.p,
                "width_floor": self.width_floor,
                "tolerances": dict(self.tolerances),
                "regime_filters": dict(self.regime_filters),
            },
            "laws": {name: result.to_dict() for name, result in self.laws.items()},
            "failures_total": self.failures_total,
        }

    def to_json(self) -> str:
        """Canonical serialization: sorted keys, two-space indent.

        Identical configs produce byte-identical strings.
        """
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class _Tally:
    __slots__ = ("passes", "failures", "skipped", "worst", "examples")

    def __init__(self) -> None:
        self.passes = 0
        self.failures = 0
        self.skipped = 0
        self.worst = 0.0
        self.examples: list[dict] = []

    def record(self, outcome: Optional[tuple], inputs: dict) -> None:
        if outcome is None:
            self.skipped += 1
            return
        deviation, allowance, outputs = outcome
        excess = deviation - allowance
        if excess > 0.0:
            self.failures += 1
            if excess > self.worst:
                self.worst = excess
            if len(self.examples) < 10:
                self.examples.append(
                    {
                        "inputs": inputs,
                        "outputs": outputs,
                        "deviation": deviation,
                        "excess": excess,
                    }
                )
        else:
            self.passes += 1

    def result(self) -> LawResult:
        return LawResult(
            passes=self.passes,
            failures=self.failures,
            skipped=self.skipped,
            worst_violation=self.worst,
            counterexamples=tuple(self.examples),
        )


def _interval_dev(x: tuple[float, float], y: tuple[float, float]) -> float:
    return max(abs(x[0] - y[0]), abs(x[1] - y[1]))


def _combine(rule: str, p, wf, e1: EvidenceInterval, e2: EvidenceInterval):
    """Endpoint kernel shared with the public rules (replay-exact)."""
    if rule == RULE_TP:
        lo, hi, _, _ = _tp_pair(e1, e2, wf)
    elif rule == RULE_MTP:
        lo, hi, _, _ = _mtp_pair(e1, e2, p, wf)
    else:
        lo, hi, _ = _ds_pair(e1, e2)
    return lo, hi


def _eval_trial(
    rule: str,
    p: Optional[float],
    e1: EvidenceInterval,
    e2: EvidenceInterval,
    e3: EvidenceInterval,
    tol: Mapping[str, float],
    regime: Mapping[str, float],
    wf: float,
) -> dict:
    """Evaluate every law on one sampled triple.

    Returns {law: None | (deviation, allowance, outputs)}; None means the
    trial fell outside the law's regime (or hit a rule error such as DS
    total conflict) and is skipped.  Exposed for unit tests through
    replay_counterexample.
    """
    out: dict = {}

    try:
        r12 = _combine(rule, p, wf, e1, e2)
    except TotalConflictError:
        return {law: None for law in LAWS}

    # closure: result inside the triangle
    lo, hi = r12
    out["closure"] = (
        max(0.0, -lo, hi - 1.0, lo - hi),
        tol["closure"],
        {"result": list(r12)},
    )

    # commutativity
    r21 = _combine(rule, p, wf, e2, e1)
    out["commutativity"] = (
        _interval_dev(r12, r21),
        tol["commutativity"],
        {"xy": list(r12), "yx": list(r21)},
    )

    # associativity
    try:
        left = _combine(rule, p, wf, EvidenceInterval(*r12), e3)
        r23 = _combine(rule, p, wf, e2, e3)
        right = _combine(rule, p, wf, e1, EvidenceInterval(*r23))
    except TotalConflictError:
        out["associativity"] = None
    else:
        out["associativity"] = (
            _interval_dev(left, right),
            tol["associativity"],
            {"left": list(left), "right": list(right)},
        )

    # continuity: bounded response to endpoint perturbations
    min_w = regime["continuity_min_width"]
    if e1.width >= min_w and e2.width >= min_w:
        delta = tol["continuity_delta"]
        bound = tol["continuity_lipschitz"] * delta
        worst = 0.0
        for pa, pb in (
            (e1.lower + delta, e1.upper),
            (e1.lower - delta, e1.upper),
            (e1.lower, e1.upper + delta),
            (e1.lower, e1.upper - delta),
        ):
            if not (0.0 <= pa <= pb <= 1.0):
                continue
            try:
                moved = _combine(rule, p, wf, EvidenceInterval(pa, pb), e2)
            except TotalConflictError:
                continue
            dev = _interval_dev(moved, r12)
            if dev > worst:
                worst = dev
        out["continuity"] = (worst, bound, {"base": list(r12)})
    else:
        out["continuity"] = None

    # identity: combining with the vacuous interval is a no-op
    try:
        rid = _combine(rule, p, wf, e1, VACUOUS)
    except TotalConflictError:
        out["identity"] = None
    else:
        out["identity"] = (
            _interval_dev(rid, (e1.lower, e1.upper)),
            tol["identity"],
            {"result": list(rid)},
        )

    # negation symmetry: complement(x * y) == complement(x) * complement(y)
    try:
        rcc = _combine(rule, p, wf, e1.complement(), e2.complement())
    except TotalConflictError:
        out["negation_symmetry"] = None
    else:
        out["negation_symmetry"] = (
            _interval_dev((1.0 - r12[1], 1.0 - r12[0]), rcc),
            tol["negation_symmetry"],
            {"complemented": list(rcc)},
        )

    # width behaviour under conflict and agreement
    w1 = e1.width
    w2 = e2.width
    w_res = r12[1] - r12[0]

    u1, v1 = _forward(e1.lower, e1.upper, wf)
    u2, v2 = _forward(e2.lower, e2.upper, wf)
    opposite = (u1 > 0.0 and u2 < 0.0) or (u1 < 0.0 and u2 > 0.0)
    v_ratio = regime["widening_v_ratio"]
    cancel = regime["widening_cancel_ratio"]
    if (
        opposite
        and v1 <= v_ratio * abs(u1)
        and v2 <= v_ratio * abs(u2)
        and abs(u1 + u2) <= cancel * min(abs(u1), abs(u2))
    ):
        out["conflict_widening"] = (
            max(w1, w2) - w_res,
            tol["conflict_widening_slack"],
            {"result": list(r12), "widths": [w1, w2]},
        )
    else:
        out["conflict_widening"] = None

    d1 = e1.discrimination
    d2 = e2.discrimination
    if (d1 > 0.0 and d2 > 0.0) or (d1 < 0.0 and d2 < 0.0):
        out["reinforcement"] = (
            w_res - min(w1, w2),
            tol["reinforcement_slack"],
            {"result": list(r12), "widths": [w1, w2]},
        )
    else:
        out["reinforcement"] = None

    return out


def run_audit(config: AuditConfig) -> AuditReport:
    """Run every law against ``config.trials`` sampled triples.

    Deterministic for a fixed config; failures are reported, never
    raised.
    """
    tallies = {law: _Tally() for law in LAWS}
    tol = config.tolerances
    regime = config.regime_filters
    for i in range(config.trials):
        rng = trial_stream(config.seed, i)
        e1 = sample_interval(rng)
        e2 = sample_interval(rng)
        e3 = sample_interval(rng)
        outcomes = _eval_trial(
            config.rule, config.p, e1, e2, e3, tol, regime, config.width_floor
        )
        inputs = {
            "trial": i,
            "e1": [e1.lower, e1.upper],
            "e2": [e2.lower, e2.upper],
            "e3": [e3.lower, e3.upper],
        }
        for law in LAWS:
            tallies[law].record(outcomes[law], inputs)
    return AuditReport(
        rng="splitmix64",
        seed=config.seed,
        trials=config.trials,
        rule=config.rule,
        p=config.p,
        width_floor=config.width_floor,
        tolerances=dict(tol),
        regime_filters=dict(regime),
        laws={law: tallies[law].result() for law in LAWS},
    )


def replay_counterexample(config: AuditConfig, law: str, counterexample: dict) -> dict:
    """Re-run one law on a reported counterexample's inputs.

    Returns {"deviation", "excess", "outputs"}; the deviation reproduces
    the reported one exactly, because the evaluation path is the same.
    """
    if law not in LAWS:
        raise ValueError(f"unknown law {law!r}")
    ins = counterexample["inputs"]
    e1 = EvidenceInterval(*ins["e1"])
    e2 = EvidenceInterval(*ins["e2"])
    e3 = EvidenceInterval(*ins["e3"])
    outcome = _eval_trial(
        config.rule,
        config.p,
        e1,
        e2,
        e3,
        config.tolerances,
        config.regime_filters,
        config.width_floor,
    )[law]
    if outcome is None:
        raise ValueError(f"inputs fall outside the {law} regime; nothing to replay")
    deviation, allowance, outputs = outcome
    return {"deviation": deviation, "excess": deviation - allowance, "outputs": outputs}
