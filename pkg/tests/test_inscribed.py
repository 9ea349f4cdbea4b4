import math

import numpy as np
import pytest

from parellipse.conic import Conic, is_ellipse, proportional, relative_residual
from parellipse.inscribed import (
    angle_identity,
    conjugate_diameter_angle,
    equal_conjugate_diameters,
    family_ratio,
    inscribed_conic,
    max_tangency_point_residual,
    min_eccentricity_v,
    min_ratio_sq,
    minimal_eccentricity_ellipse,
    stationarity_residual,
    tangency_interior_params,
    tangency_residuals,
)
from parellipse.numerics import minimize_scalar
from parellipse.parallelogram import canonical_parallelogram, canonicalize
from parellipse.verify import random_parallelogram_params

ROOT2 = math.sqrt(2.0)
SLANTED = canonical_parallelogram(5.0, 4.0, 2.0)
BIELLIPTIC = canonical_parallelogram(6.0, 2.0 * ROOT2, 2.0)
SLANTED_MAX_RATIO = (65.0 - math.sqrt(65.0)) / (65.0 + math.sqrt(65.0))


class TestInscribedConic:
    def test_unit_square_midmember_is_incircle(self):
        ell = inscribed_conic(canonical_parallelogram(1.0, 1.0, 0.0), 0.5)
        g = ell.geometry
        assert g.a == pytest.approx(0.5, rel=1e-12)
        assert g.b == pytest.approx(0.5, rel=1e-12)
        assert g.center == pytest.approx((0.5, 0.5), rel=1e-12)
        midpoints = ((0.5, 0.0), (0.0, 0.5), (0.5, 1.0), (1.0, 0.5))
        for got, want in zip(ell.tangency, midpoints):
            assert got == pytest.approx(want, abs=1e-12)

    def test_rectangle_member_coefficients(self):
        ell = inscribed_conic(canonical_parallelogram(2.0, 1.0, 0.0), 0.25)
        assert proportional(ell.conic, Conic(1.0, 4.0, -1.0, -1.0, -2.0, 0.25))
        expected = ((0.5, 0.0), (0.0, 0.25), (1.5, 1.0), (2.0, 0.75))
        for got, want in zip(ell.tangency, expected):
            assert got == pytest.approx(want, abs=1e-12)
        assert max(tangency_residuals(canonical_parallelogram(2.0, 1.0, 0.0), ell)) < 1e-14

    def test_bielliptic_example_conic(self):
        ell = inscribed_conic(BIELLIPTIC, 1.5 * ROOT2)
        target = Conic(4 * ROOT2, 14 * ROOT2, 2.0, -36 * ROOT2, -72.0, 81 * ROOT2)
        assert proportional(ell.conic, target, rtol=1e-9)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            inscribed_conic(SLANTED, 4.0)
        with pytest.raises(ValueError):
            inscribed_conic(SLANTED, -0.1)

    def test_members_are_ellipses_with_interior_tangency(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            l, k, d = random_parallelogram_params(rng)
            p = canonical_parallelogram(l, k, d)
            v = float(rng.uniform(0.001, 0.999)) * k
            ell = inscribed_conic(p, v)
            assert is_ellipse(ell.conic)
            assert max(tangency_residuals(p, ell)) < 1e-8
            assert max_tangency_point_residual(ell) < 1e-9
            assert all(0.0 < t < 1.0 for t in tangency_interior_params(p, ell))


class TestFamilyRatio:
    def test_square_midmember_is_circle(self):
        assert family_ratio(canonical_parallelogram(1.0, 1.0, 0.0), 0.5).ratio_sq == pytest.approx(
            1.0, abs=1e-12
        )

    def test_slanted_example_max_ratio(self):
        fr = family_ratio(SLANTED, min_eccentricity_v(SLANTED))
        assert fr.ratio_sq == pytest.approx(SLANTED_MAX_RATIO, rel=1e-12)

    def test_ratio_vanishes_at_boundary(self):
        assert family_ratio(SLANTED, 1e-8 * SLANTED.k).ratio_sq < 1e-6

    def test_two_paths_agree(self):
        rng = np.random.default_rng(12)
        for _ in range(40):
            l, k, d = random_parallelogram_params(rng, "moderate")
            p = canonical_parallelogram(l, k, d)
            v = float(rng.uniform(0.02, 0.98)) * k
            closed = family_ratio(p, v).ratio_sq
            extracted = inscribed_conic(p, v).geometry.ratio_sq
            assert closed == pytest.approx(extracted, rel=1e-9)


class TestMinEccentricityV:
    def test_rectangle_midline(self):
        assert min_eccentricity_v(canonical_parallelogram(3.0, 2.0, 0.0)) == pytest.approx(
            1.0, rel=1e-15
        )

    def test_bielliptic_example(self):
        assert min_eccentricity_v(BIELLIPTIC) == pytest.approx(1.5 * ROOT2, rel=1e-12)

    def test_slanted_example_and_oracle(self):
        v = min_eccentricity_v(SLANTED)
        assert v == pytest.approx(26.0 / 9.0, abs=1e-12)

        def e2_of(x):
            return 1.0 - family_ratio(SLANTED, x).ratio_sq

        k = SLANTED.k
        found = minimize_scalar(e2_of, 1e-9 * k, (1.0 - 1e-9) * k, tol=1e-12).x_min
        assert found == pytest.approx(v, abs=1e-8)

    def test_strictly_interior(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            l, k, d = random_parallelogram_params(rng)
            v = min_eccentricity_v(canonical_parallelogram(l, k, d))
            assert 0.0 < v < k


class TestMinimalEllipse:
    def test_unit_square_gives_circle(self):
        ell = minimal_eccentricity_ellipse(canonical_parallelogram(1.0, 1.0, 0.0))
        assert ell.is_minimal
        assert ell.geometry.e == pytest.approx(0.0, abs=1e-8)

    def test_bielliptic_example_ratio(self):
        ell = minimal_eccentricity_ellipse(BIELLIPTIC)
        assert ell.geometry.ratio_sq == pytest.approx(2.0 - math.sqrt(3.0), rel=1e-9)
        assert ell.geometry.e2 == pytest.approx(math.sqrt(3.0) - 1.0, rel=1e-9)

    def test_rhombus_gives_circle(self):
        rhombus = canonical_parallelogram(math.sqrt(5.0), 2.0, 1.0)
        assert min_ratio_sq(rhombus) == pytest.approx(1.0, abs=1e-12)
        ell = minimal_eccentricity_ellipse(rhombus)
        assert ell.geometry.ratio_sq == pytest.approx(1.0, abs=1e-9)

    def test_closed_form_matches_family(self):
        rng = np.random.default_rng(14)
        for _ in range(40):
            l, k, d = random_parallelogram_params(rng, "moderate")
            p = canonical_parallelogram(l, k, d)
            fr = family_ratio(p, min_eccentricity_v(p))
            assert min_ratio_sq(p) == pytest.approx(fr.ratio_sq, rel=1e-9)

    def test_strictly_below_one_off_rhombus(self):
        rng = np.random.default_rng(15)
        for _ in range(40):
            l, k, d = random_parallelogram_params(rng, "wide")
            assert min_ratio_sq(canonical_parallelogram(l, k, d)) < 1.0


class TestStationarity:
    def test_slanted_example(self):
        assert stationarity_residual(SLANTED) < 1e-6

    def test_unit_square(self):
        assert stationarity_residual(canonical_parallelogram(1.0, 1.0, 0.0)) < 1e-6

    def test_random_batch(self):
        rng = np.random.default_rng(16)
        for _ in range(40):
            l, k, d = random_parallelogram_params(rng, "moderate")
            assert stationarity_residual(canonical_parallelogram(l, k, d)) < 1e-5


class TestConjugateDiameters:
    def test_circle_angle(self):
        ell = inscribed_conic(canonical_parallelogram(1.0, 1.0, 0.0), 0.5)
        assert conjugate_diameter_angle(ell) == pytest.approx(math.pi / 2, rel=1e-9)

    def test_slanted_example_angle(self):
        ell = minimal_eccentricity_ellipse(SLANTED)
        assert conjugate_diameter_angle(ell) == pytest.approx(math.atan(8.0), abs=1e-9)

    def test_one_over_root3_ratio(self):
        # tan(theta) = b/a = 1/sqrt(3) gives twice pi/6.
        theta2 = 2.0 * math.atan(1.0 / math.sqrt(3.0))
        assert theta2 == pytest.approx(math.pi / 3, rel=1e-15)

    def test_circle_convention_pm_45_degrees(self):
        ell = inscribed_conic(canonical_parallelogram(2.0, 2.0, 0.0), 1.0)
        first, second = equal_conjugate_diameters(ell)
        for seg, sign in ((first, 1.0), (second, -1.0)):
            dx = seg[1][0] - seg[0][0]
            dy = seg[1][1] - seg[0][1]
            assert math.atan2(dy, dx) == pytest.approx(sign * math.pi / 4, abs=1e-12)

    def test_axis_aligned_endpoints(self):
        ell = inscribed_conic(canonical_parallelogram(4.0, 2.0, 0.0), 1.0)
        g = ell.geometry
        assert (g.a, g.b) == (pytest.approx(2.0, rel=1e-12), pytest.approx(1.0, rel=1e-12))
        half = math.sqrt(2.5)
        for seg in equal_conjugate_diameters(ell):
            for endpoint in seg:
                assert relative_residual(ell.conic, endpoint) < 1e-12
                reach = math.dist(endpoint, g.center)
                assert reach == pytest.approx(half, rel=1e-12)

    def test_endpoints_on_curve_random(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            l, k, d = random_parallelogram_params(rng)
            p = canonical_parallelogram(l, k, d)
            ell = inscribed_conic(p, float(rng.uniform(0.05, 0.95)) * k)
            for seg in equal_conjugate_diameters(ell):
                for endpoint in seg:
                    assert relative_residual(ell.conic, endpoint) < 1e-9


class TestAngleIdentity:
    def test_slanted_example(self):
        result = angle_identity(SLANTED)
        assert result.conjugate_angle == pytest.approx(math.atan(8.0), abs=1e-9)
        assert result.diagonal_angle == pytest.approx(math.atan(8.0), abs=1e-9)
        assert result.delta < 1e-12

    def test_rhombus_right_angle(self):
        result = angle_identity(canonical_parallelogram(math.sqrt(5.0), 2.0, 1.0))
        assert result.conjugate_angle == pytest.approx(math.pi / 2, abs=1e-7)
        assert result.diagonal_angle == pytest.approx(math.pi / 2, abs=1e-12)

    def test_case_with_negative_side_sq_diff(self):
        # l^2 < d^2 + k^2 here; the identity holds regardless.
        assert angle_identity(canonical_parallelogram(2.0, 3.0, 1.0)).delta < 1e-9

    def test_all_sign_cases_random(self):
        rng = np.random.default_rng(18)
        for kind in ("wide", "rhombus", "tall"):
            for _ in range(20):
                l, k, d = random_parallelogram_params(rng, kind)
                assert angle_identity(canonical_parallelogram(l, k, d)).delta < 1e-9


class TestIsometryEquivariance:
    def test_moved_parallelogram_same_shape(self):
        base = canonicalize((0, 0), (2, 4), (7, 4), (5, 0))
        angle = 0.7
        c, s = math.cos(angle), math.sin(angle)
        moved_pts = []
        for x, y in ((0, 0), (2, 4), (7, 4), (5, 0)):
            moved_pts.append((c * x - s * y + 3.0, s * x + c * y - 1.0))
        moved = canonicalize(*moved_pts)
        g1 = minimal_eccentricity_ellipse(base).geometry
        g2 = minimal_eccentricity_ellipse(moved).geometry
        assert g2.a == pytest.approx(g1.a, rel=1e-9)
        assert g2.b == pytest.approx(g1.b, rel=1e-9)
