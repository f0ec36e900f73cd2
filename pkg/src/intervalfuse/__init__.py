"""intervalfuse: combine interval-valued evidence about a binary hypothesis.

Provides the interval value type and its measures, a Dempster-Shafer
baseline on the binary frame, a geometric combination rule that maps
intervals to the upper half plane and back, a dependency-aware variant of
it, a seeded randomized audit of the rules' algebraic laws, and a CLI for
streams, scenario comparisons and audits.
"""

from .evidence import (
    INVERTED_BOUNDS,
    NON_FINITE,
    OUT_OF_RANGE,
    VACUOUS,
    EvidenceInterval,
    InvalidIntervalError,
    complement,
    discrimination,
    is_conflicting,
    make_interval,
)
from .geometry import (
    ORIGIN_EPS,
    WIDTH_FLOOR,
    HalfPlaneVector,
    PolarForm,
    from_half_plane,
    polar_of_interval,
    polar_of_vector,
    to_half_plane,
)
from .rules import (
    DS_CONFLICT_EPS,
    P_MAX,
    RULE_DS,
    RULE_MTP,
    RULE_TP,
    RULES,
    DependencyParam,
    EmptyInputError,
    FusionReport,
    MassTriple,
    TotalConflictError,
    combine_ds,
    combine_ds_masses,
    combine_mtp,
    combine_tp,
    ct,
    estimate_p,
    fold,
)
from .audit import (
    DEFAULT_REGIME_FILTERS,
    DEFAULT_TOLERANCES,
    LAWS,
    MIN_SAMPLE_WIDTH,
    AuditConfig,
    AuditReport,
    LawResult,
    SplitMix64,
    replay_counterexample,
    run_audit,
    sample_interval,
    trial_stream,
)

__version__ = "0.1.0"

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
    "HalfPlaneVector",
    "PolarForm",
    "WIDTH_FLOOR",
    "ORIGIN_EPS",
    "to_half_plane",
    "from_half_plane",
    "polar_of_interval",
    "polar_of_vector",
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
    "AuditConfig",
    "AuditReport",
    "LawResult",
    "LAWS",
    "DEFAULT_TOLERANCES",
    "DEFAULT_REGIME_FILTERS",
    "MIN_SAMPLE_WIDTH",
    "SplitMix64",
    "trial_stream",
    "sample_interval",
    "run_audit",
    "replay_counterexample",
    "__version__",
]
