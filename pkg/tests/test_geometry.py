"""Tests for the triangle <-> half-plane homeomorphism.

Forward values are checked against partial sums of the defining series
(an oracle that shares no code with the closed form); inverse values are
checked against brute-force preimage search on a grid of the triangle.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalfuse import (
    ORIGIN_EPS,
    VACUOUS,
    WIDTH_FLOOR,
    EvidenceInterval,
    HalfPlaneVector,
    complement,
    from_half_plane,
    make_interval,
    polar_of_interval,
    polar_of_vector,
    to_half_plane,
)

from conftest import intervals
from oracles import grid_preimage, series_forward


class TestForwardGolden:
    """Closed form vs the series oracle on hand-picked intervals."""

    # (interval, expected image); expectations confirmed by the series
    # partial sums at 500 terms, which agree to ~1e-14 at these widths
    CASES = [
        ((0.2, 0.4), (-3.2, 2.4)),
        ((0.7, 0.9), (3.84, 1.12)),
        ((0.6, 1.0), (1.5, 0.0)),
    ]

    @pytest.mark.parametrize("iv,expected", CASES)
    def test_against_series_oracle(self, iv, expected):
        z = to_half_plane(make_interval(*iv))
        su, sv = series_forward(iv[0], iv[1], 500)
        assert z.u == pytest.approx(float(su), abs=1e-12)
        assert z.v == pytest.approx(float(sv), abs=1e-12)
        assert z.u == pytest.approx(expected[0], abs=1e-12)
        assert z.v == pytest.approx(expected[1], abs=1e-12)

    def test_vacuous_maps_to_origin_exactly(self):
        z = to_half_plane(VACUOUS)
        assert (z.u, z.v) == (0.0, 0.0)

    def test_certain_upper_bound_lands_on_positive_axis(self):
        z = to_half_plane(make_interval(0.6, 1.0))
        assert z.v == 0.0 and z.u > 0.0

    def test_certain_lower_bound_lands_on_negative_axis(self):
        z = to_half_plane(make_interval(0.0, 0.3))
        assert z.v == 0.0 and z.u < 0.0
        assert z.u == pytest.approx(-7.0 / 3.0, abs=1e-12)

    @settings(max_examples=60)
    @given(e=intervals(min_width=0.01, max_width=0.98))
    def test_series_oracle_on_random_intervals(self, e):
        # widths >= 0.01 need ~ 30/width terms before the series settles
        z = to_half_plane(e)
        su, sv = series_forward(e.lower, e.upper, 4000)
        assert z.u == pytest.approx(float(su), rel=1e-9, abs=1e-9)
        assert z.v == pytest.approx(float(sv), rel=1e-9, abs=1e-9)


class TestForwardStructure:
    @given(e=intervals(min_width=1e-6))
    def test_image_in_upper_half_plane(self, e):
        assert to_half_plane(e).v >= 0.0

    @given(e=intervals(min_width=1e-6, max_width=0.999999))
    def test_sign_matches_discrimination(self, e):
        u = to_half_plane(e).u
        d = e.discrimination
        assert (u > 0) == (d > 0) and (u < 0) == (d < 0)

    @given(e=intervals(min_width=0.05))
    def test_reflection_symmetry(self, e):
        # mirrored interval, mirrored image; complementing perturbs the
        # width by up to two ulps of 1 and the radius responds with
        # ulp/width^2, so the absolute 1e-12 form needs width >= 0.05
        # (bound 9e-14 there); the radius-scaled test below covers the rest
        z = to_half_plane(e)
        zc = to_half_plane(complement(e))
        assert zc.u == pytest.approx(-z.u, abs=1e-12)
        assert zc.v == pytest.approx(z.v, abs=1e-12)

    @given(e=intervals(min_width=1e-6))
    def test_reflection_symmetry_radius_scaled(self, e):
        # complementing shifts the width by up to one ulp of 1, and the
        # radius amplifies that by 1/width: relative 1e-9 covers widths
        # down to 1e-6 with margin
        z = to_half_plane(e)
        zc = to_half_plane(complement(e))
        scale = max(1.0, z.norm)
        assert abs(zc.u + z.u) <= 1e-9 * scale
        assert abs(zc.v - z.v) <= 1e-9 * scale

    def test_narrower_means_farther(self):
        # same midpoint, shrinking width: radius must strictly grow
        radii = [
            to_half_plane(make_interval(0.5 - w / 2, 0.5 + w / 2)).norm
            for w in (0.8, 0.4, 0.2, 0.05, 0.01)
        ]
        assert all(r1 < r2 for r1, r2 in zip(radii, radii[1:]))

    def test_width_floor_keeps_point_intervals_finite(self):
        z = to_half_plane(make_interval(0.7, 0.7))
        assert math.isfinite(z.u) and math.isfinite(z.v)
        assert z.norm == pytest.approx((1.0 - WIDTH_FLOOR) / WIDTH_FLOOR, rel=1e-12)

    def test_width_floor_is_configurable(self):
        z = to_half_plane(make_interval(0.7, 0.7), width_floor=1e-3)
        assert z.norm == pytest.approx(999.0, rel=1e-12)


class TestInverse:
    def test_origin_is_vacuous(self):
        assert from_half_plane(HalfPlaneVector(0.0, 0.0)) == VACUOUS

    def test_near_origin_is_vacuous(self):
        assert from_half_plane(HalfPlaneVector(ORIGIN_EPS / 2, 0.0)) == VACUOUS

    def test_conflicting_pair_sum_against_grid_oracle(self):
        # image sum of [0.2,0.4] and [0.7,0.9]
        z = HalfPlaneVector(0.64, 3.52)
        e = from_half_plane(z)
        a, b = grid_preimage(z.u, z.v)
        assert e.lower == pytest.approx(a, abs=5e-5)
        assert e.upper == pytest.approx(b, abs=5e-5)
        assert e.lower == pytest.approx(0.426, abs=1e-3)
        assert e.upper == pytest.approx(0.645, abs=1e-3)

    def test_negative_axis_against_grid_oracle(self):
        # image sum of [0, 0.3] and [0, 0.4], truncated to four decimals
        e = from_half_plane(HalfPlaneVector(-3.8333, 0.0))
        a, b = grid_preimage(-3.8333, 0.0)
        assert e.lower == 0.0 and a == pytest.approx(0.0, abs=5e-5)
        assert e.upper == pytest.approx(b, abs=5e-5)
        assert e.lower == pytest.approx(0.0, abs=5e-4)
        assert e.upper == pytest.approx(0.2069, abs=5e-4)

    def test_rejects_lower_half_plane(self):
        with pytest.raises(ValueError):
            from_half_plane((0.5, -0.1))
        with pytest.raises(ValueError):
            HalfPlaneVector(0.5, -0.1)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            from_half_plane((math.nan, 1.0))
        with pytest.raises(ValueError):
            from_half_plane((1.0, math.inf))

    @given(
        u=st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
        v=st.floats(min_value=0.0, max_value=100.0, allow_nan=False),
    )
    def test_width_law(self, u, v):
        # recovered width is 1 / (1 + radius)
        e = from_half_plane(HalfPlaneVector(u, v))
        r = math.hypot(u, v)
        if r < ORIGIN_EPS:
            assert e == VACUOUS
        else:
            assert e.width == pytest.approx(1.0 / (1.0 + r), abs=1e-12)

    def test_width_law_far_out(self):
        for z in (HalfPlaneVector(-1e6, 3.0), HalfPlaneVector(1e6, 1e5), HalfPlaneVector(0.0, 1e8)):
            e = from_half_plane(z)
            assert e.width == pytest.approx(1.0 / (1.0 + z.norm), abs=1e-12)


class TestRoundTrip:
    @settings(max_examples=300)
    @given(e=intervals(min_width=1e-6))
    def test_round_trip(self, e):
        back = from_half_plane(to_half_plane(e))
        assert back.lower == pytest.approx(e.lower, abs=1e-9)
        assert back.upper == pytest.approx(e.upper, abs=1e-9)

    @pytest.mark.parametrize(
        "iv",
        [
            (0.0, 1.0),
            (0.0, 0.5),  # negative real axis, exercises the mirrored path
            (0.001, 0.002),  # narrow and strongly against
            (0.998, 0.999),  # narrow and strongly for
            (0.3, 0.7),  # neutral: pure imaginary image
            (0.5, 1.0),
        ],
    )
    def test_round_trip_edges(self, iv):
        e = make_interval(*iv)
        back = from_half_plane(to_half_plane(e))
        assert back.lower == pytest.approx(e.lower, abs=1e-9)
        assert back.upper == pytest.approx(e.upper, abs=1e-9)


class TestPolar:
    def test_polar_of_interval_matches_invariants(self):
        e = make_interval(0.2, 0.4)
        p = polar_of_interval(e)
        assert p.r == pytest.approx((1.0 + 0.2 - 0.4) / (0.4 - 0.2), rel=1e-12)
        assert math.tan(p.theta / 2.0) == pytest.approx((1.0 - 0.4) / 0.2, rel=1e-12)

    @given(e=intervals(min_width=1e-6))
    def test_polar_matches_cartesian(self, e):
        z = to_half_plane(e)
        p = polar_of_interval(e)
        assert p.r * math.cos(p.theta) == pytest.approx(z.u, rel=1e-9, abs=1e-9)
        assert p.r * math.sin(p.theta) == pytest.approx(z.v, rel=1e-9, abs=1e-9)

    def test_polar_of_vector(self):
        p = polar_of_vector(HalfPlaneVector(1.0, 1.0))
        assert p.r == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert p.theta == pytest.approx(math.pi / 4.0, rel=1e-15)

    @given(
        u=st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
        v=st.floats(min_value=0.0, max_value=50.0, allow_nan=False),
    )
    def test_vector_angle_range(self, u, v):
        p = polar_of_vector(HalfPlaneVector(u, v))
        assert 0.0 <= p.theta <= math.pi
