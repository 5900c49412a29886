"""Circle intersection angles, certified intervals, disjointness."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwhankel.errors import DomainError, NoIntersectionError, RegimeError
from pwhankel.geometry import (
    R0,
    AngularInterval,
    admissible_radius,
    certified_half_width,
    certify_disjoint,
    circle_intersection_angles,
    closed_form_half_width,
    component_interval,
    lens_area,
    normalize_angle,
)

# frozen from the boundary-maximization oracle (dense scan + bounded
# refinement), cross-checked below against disc sampling
HALF_WIDTH_R004 = 0.2866951388107309


def _bisect_angle(w, lo, hi):
    # root of |w - e^{i theta}| - 1 on [lo, hi]
    def g(theta):
        return math.hypot(w[0] - math.cos(theta), w[1] - math.sin(theta)) - 1.0

    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if g(lo) * g(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


class TestIntersectionAngles:
    def test_tangency(self):
        tm, tp = circle_intersection_angles((2.0, 0.0))
        assert tm == 0.0 and tp == 0.0

    def test_sqrt2_quarter_arc(self):
        w = (math.sqrt(2) * math.cos(math.pi / 3), math.sqrt(2) * math.sin(math.pi / 3))
        tm, tp = circle_intersection_angles(w)
        assert tm == pytest.approx(math.pi / 3 - math.pi / 4, abs=1e-12)
        assert tp == pytest.approx(math.pi / 3 + math.pi / 4, abs=1e-12)

    def test_against_bisection_frozen_example(self):
        tm, tp = circle_intersection_angles((1.8, 0.0))
        root = _bisect_angle((1.8, 0.0), 0.0, math.pi)
        assert tp == pytest.approx(root, abs=1e-12)
        assert tp == pytest.approx(0.4510268118, abs=1e-9)
        assert tm == pytest.approx(-tp, abs=1e-15)

    def test_angles_lie_on_both_circles(self, rng):
        for _ in range(300):
            mag = rng.uniform(math.sqrt(2), 2.0)
            ang = rng.uniform(-math.pi, math.pi)
            w = (mag * math.cos(ang), mag * math.sin(ang))
            for theta in circle_intersection_angles(w):
                assert abs(math.hypot(w[0] - math.cos(theta), w[1] - math.sin(theta)) - 1.0) < 1e-12

    def test_rotational_covariance(self, rng):
        for _ in range(100):
            mag = rng.uniform(math.sqrt(2), 2.0)
            ang = rng.uniform(-math.pi, math.pi)
            alpha = rng.uniform(-math.pi, math.pi)
            w = (mag * math.cos(ang), mag * math.sin(ang))
            wr = (mag * math.cos(ang + alpha), mag * math.sin(ang + alpha))
            tm, tp = circle_intersection_angles(w)
            tmr, tpr = circle_intersection_angles(wr)
            assert abs(normalize_angle(tmr - tm - alpha)) < 1e-12
            assert abs(normalize_angle(tpr - tp - alpha)) < 1e-12

    def test_regime_errors(self):
        with pytest.raises(RegimeError):
            circle_intersection_angles((1.0, 0.0))
        with pytest.raises(NoIntersectionError):
            circle_intersection_angles((2.1, 0.0))

    def test_sector_containment_sampled(self, rng):
        # every point of the lens D(w) has argument inside (theta-, theta+)
        for mag in (math.sqrt(2), 1.6, 1.95):
            w = np.array([mag, 0.0])
            tm, tp = circle_intersection_angles(w)
            pts = rng.uniform(-1, 1, size=(50_000, 2))
            inside = (np.hypot(pts[:, 0], pts[:, 1]) < 1) & (
                np.hypot(pts[:, 0] - w[0], pts[:, 1] - w[1]) < 1
            )
            args = np.arctan2(pts[inside, 1], pts[inside, 0])
            assert inside.sum() > 50
            assert np.all(args > tm) and np.all(args < tp)

    def test_sector_containment_fails_below_sqrt2(self, rng):
        # below the sqrt(2) threshold the same formula no longer contains
        # the lens: exhibit a sampled point with argument outside the arc
        w = np.array([1.2, 0.0])
        arc = math.acos(1.2 / 2.0)
        pts = rng.uniform(-1, 1, size=(200_000, 2))
        inside = (np.hypot(pts[:, 0], pts[:, 1]) < 1) & (
            np.hypot(pts[:, 0] - w[0], pts[:, 1] - w[1]) < 1
        )
        args = np.arctan2(pts[inside, 1], pts[inside, 0])
        assert np.any(np.abs(args) > arc)


class TestLensArea:
    def test_coincident(self):
        assert lens_area(0.0) == pytest.approx(math.pi, abs=1e-15)

    def test_tangent(self):
        assert lens_area(2.0) == 0.0

    def test_unit_distance_closed_form_and_monte_carlo(self, rng):
        want = 2 * math.pi / 3 - math.sqrt(3) / 2
        assert lens_area(1.0) == pytest.approx(want, abs=1e-14)
        pts = rng.uniform(-1, 1, size=(2_000_000, 2))
        inside = (np.hypot(pts[:, 0], pts[:, 1]) < 1) & (
            np.hypot(pts[:, 0] - 1.0, pts[:, 1]) < 1
        )
        assert lens_area(1.0) == pytest.approx(4.0 * inside.mean(), rel=5e-3)

    @given(st.floats(min_value=0.0, max_value=2.0), st.floats(min_value=0.0, max_value=2.0))
    @settings(max_examples=100, deadline=None)
    def test_strictly_decreasing(self, d1, d2):
        lo, hi = sorted([d1, d2])
        if hi - lo > 1e-12:
            assert lens_area(lo) > lens_area(hi)

    def test_domain(self):
        with pytest.raises(DomainError):
            lens_area(2.5)


class TestAdmissibleRadius:
    def test_small_n_pins_r0(self):
        assert admissible_radius(2) == pytest.approx(1 - 1 / math.sqrt(2), abs=1e-15)
        assert str(admissible_radius(2))[:4] == "0.29"

    def test_formula(self):
        assert admissible_radius(4) == 0.25
        assert admissible_radius(10) == pytest.approx(0.04, abs=1e-16)

    def test_domain(self):
        with pytest.raises(DomainError):
            admissible_radius(1)


class TestComponentInterval:
    def test_center(self):
        iv = component_interval(4, 0.25, 2)
        assert iv.center == pytest.approx(math.pi / 2, abs=1e-15)

    def test_half_width_frozen_and_sampled_oracle(self, rng):
        r = 0.04
        hw = certified_half_width(r)
        assert hw == pytest.approx(HALF_WIDTH_R004, rel=1e-9)
        # the sampled maximum of |theta+-| over the closed support disc
        # approaches the certified value from below
        t = np.sqrt(rng.uniform(0, 1, 100_000)) * r
        beta = rng.uniform(0, 2 * math.pi, 100_000)
        wx = (2 - r) + t * np.cos(beta)
        wy = t * np.sin(beta)
        mag = np.minimum(np.hypot(wx, wy), 2.0)
        extremes = np.abs(np.arctan2(wy, wx)) + np.arccos(mag / 2.0)
        sampled = float(extremes.max())
        assert sampled <= hw
        assert sampled >= hw - 5e-5

    def test_three_sqrt_r_bound_on_grid(self):
        for r in np.linspace(1e-4, R0, 1000):
            assert closed_form_half_width(r) <= 3.0 * math.sqrt(r)

    def test_certified_below_closed_form(self):
        for r in (0.01, 0.04, 0.25, R0):
            assert certified_half_width(r) <= closed_form_half_width(r)

    def test_regime_error(self):
        with pytest.raises(RegimeError):
            component_interval(4, R0 + 0.01, 1)

    def test_index_validation(self):
        with pytest.raises(DomainError):
            component_interval(4, 0.25, 5)


class TestCertifyDisjoint:
    def test_all_n_up_to_64(self):
        for n in range(2, 65):
            ok, gap = certify_disjoint(n)
            assert ok and gap > 0

    def test_negative_control_oversized_radius(self):
        ok, gap = certify_disjoint(64, 4.0 * (2.0 / 64) ** 2)
        assert not ok and gap < 0

    def test_domain(self):
        with pytest.raises(DomainError):
            certify_disjoint(1)


class TestAngularInterval:
    def test_wraparound_contains(self):
        iv = AngularInterval(center=math.pi, half_width=0.3)
        assert iv.contains(-math.pi + 0.1)
        assert not iv.contains(0.0)

    def test_gap_mod_2pi(self):
        a = AngularInterval(center=0.1, half_width=0.05)
        b = AngularInterval(center=2 * math.pi + 0.4, half_width=0.05)
        assert a.gap_to(b) == pytest.approx(0.2, abs=1e-12)

    def test_negative_half_width(self):
        with pytest.raises(DomainError):
            AngularInterval(center=0.0, half_width=-1.0)
