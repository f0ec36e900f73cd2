"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

from hypothesis import settings
from hypothesis import strategies as st

from intervalfuse import EvidenceInterval

# property evaluations here are microseconds of float math; the wall-clock
# deadline only produces spurious failures on loaded CI hosts
settings.register_profile("intervalfuse", deadline=None)
settings.load_profile("intervalfuse")


@st.composite
def intervals(draw, min_width: float = 0.0, max_width: float = 1.0):
    """Valid evidence intervals, optionally with a width window.

    The width promise holds up to one ulp of 1: drawing lower at its cap
    can leave a hair less than min_width of room."""
    lo = draw(
        st.floats(
            min_value=0.0,
            max_value=1.0 - min_width,
            allow_nan=False,
            allow_infinity=False,
        )
    )
    hi_cap = max(min_width, min(max_width, 1.0 - lo))
    w = draw(
        st.floats(
            min_value=min_width, max_value=hi_cap, allow_nan=False, allow_infinity=False
        )
    )
    hi = min(1.0, lo + w)
    return EvidenceInterval(lo, hi)


def endpoints_close(x, y, tol: float) -> bool:
    return abs(x.lower - y.lower) <= tol and abs(x.upper - y.upper) <= tol
