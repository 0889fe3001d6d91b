import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovdesign.geometry import (
    DegeneratePointError,
    RegionSpec,
    in_region_H,
    joukowski_preimage,
    joukowski_radius,
    segment_distance,
)

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


class TestSegmentDistance:
    def test_above_interior(self):
        assert segment_distance(0.5 + 1j) == pytest.approx(1.0)

    def test_right_of_endpoint(self):
        assert segment_distance(2.0) == pytest.approx(1.0)

    def test_corner_case(self):
        assert segment_distance(2.0 + 1j) == pytest.approx(np.sqrt(2.0))

    def test_left_of_endpoint(self):
        assert segment_distance(-3.0 - 4j) == pytest.approx(np.sqrt(20.0))

    def test_on_segment(self):
        assert segment_distance(0.25) == 0.0

    @given(x=finite, y=finite)
    @settings(max_examples=200)
    def test_matches_brute_force_min(self, x, y):
        z = complex(x, y)
        lam = np.linspace(-1.0, 1.0, 20001)
        brute = np.min(np.abs(lam - z))
        assert segment_distance(z) <= brute + 1e-12
        assert segment_distance(z) >= brute - 1e-4

    @given(x=finite, y=finite)
    @settings(max_examples=200)
    def test_conjugation_symmetry(self, x, y):
        assert segment_distance(complex(x, y)) == pytest.approx(
            segment_distance(complex(x, -y)))


class TestJoukowski:
    def test_real_point(self):
        # z0 = 1.25 maps back to zeta0 = 2 via (2 + 1/2)/2
        assert joukowski_radius(1.25) == pytest.approx(2.0)

    def test_imaginary_point(self):
        # z0 = 0.75i: zeta0 = (0.75 + 1.25)i = 2i
        assert joukowski_radius(0.75j) == pytest.approx(2.0)

    def test_segment_point_rejected(self):
        with pytest.raises(DegeneratePointError):
            joukowski_radius(0.3)

    @given(x=finite, y=finite)
    @settings(max_examples=200)
    def test_preimage_round_trip(self, x, y):
        z0 = complex(x, y)
        if segment_distance(z0) <= 1e-6:
            return
        zeta = joukowski_preimage(z0)
        assert abs(zeta) > 1.0
        assert (zeta + 1.0 / zeta) / 2.0 == pytest.approx(z0, abs=1e-9)
        assert abs(zeta) == pytest.approx(joukowski_radius(z0))

    @given(x=finite, y=finite)
    @settings(max_examples=200)
    def test_radius_exceeds_one(self, x, y):
        z0 = complex(x, y)
        if segment_distance(z0) <= 1e-6:
            return
        assert joukowski_radius(z0) > 1.0

    @given(x=finite, y=finite)
    @settings(max_examples=200)
    def test_distance_lower_bound_from_radius(self, x, y):
        # d(z0) >= (R-1)^2 / (2R): the segment is inside the Bernstein
        # ellipse of radius 1, z0 sits on the one of radius R
        z0 = complex(x, y)
        if segment_distance(z0) <= 1e-6:
            return
        big_r = joukowski_radius(z0)
        bound = (big_r - 1.0) ** 2 / (2.0 * big_r)
        # equality holds for real z0 outside the segment, hence the slack
        assert segment_distance(z0) >= bound * (1.0 - 1e-9) - 1e-12


class TestRegionH:
    def test_z0_always_inside(self):
        spec = RegionSpec(z0=2.5 + 0.5j, r=1.0)
        assert in_region_H(2.5 + 0.5j, spec)

    def test_far_point_outside(self):
        spec = RegionSpec(z0=2.5 + 0.5j, r=0.5)
        assert not in_region_H(-5.0 + 0.01j, spec)

    def test_right_branch_membership(self):
        spec = RegionSpec(z0=2.5, r=0.9)
        # |z - z0| = 0.5 <= 0.9 * |z - 1| = 0.9
        assert in_region_H(2.0, spec)
        # |z - z0| = 1.3 > 0.9 * |z - 1| = 0.18
        assert not in_region_H(1.2, spec)

    def test_boundary_counts_as_inside(self):
        spec = RegionSpec(z0=3.0, r=0.5)
        # at z = 7/3: |z - 3| = 2/3 = 0.5 * |z - 1|
        assert in_region_H(7.0 / 3.0, spec)

    def test_r_must_stay_below_radius(self):
        with pytest.raises(ValueError):
            RegionSpec(z0=1.25, r=2.0)

    def test_degenerate_z0_rejected(self):
        with pytest.raises(DegeneratePointError):
            RegionSpec(z0=0.5, r=0.5)

    @given(x=finite, y=finite, x0=finite, y0=finite,
           r1=st.floats(min_value=0.05, max_value=0.95),
           r2=st.floats(min_value=0.05, max_value=0.95))
    @settings(max_examples=300)
    def test_monotone_in_r(self, x, y, x0, y0, r1, r2):
        z0 = complex(x0, y0)
        if segment_distance(z0) <= 1e-6:
            return
        lo, hi = sorted((r1, r2))
        big_r = joukowski_radius(z0)
        if hi >= big_r:
            return
        z = complex(x, y)
        if in_region_H(z, RegionSpec(z0=z0, r=lo)):
            assert in_region_H(z, RegionSpec(z0=z0, r=hi))
