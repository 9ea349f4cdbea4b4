import math

import pytest
from hypothesis import given, settings, strategies as st

from parellipse.conic import (
    Conic,
    EllipseGeometry,
    MixedSignsError,
    NotAnEllipseError,
    evaluate,
    from_geometry,
    geometry,
    is_ellipse,
    proportional,
    pullback,
    relative_residual,
)

UNIT_CIRCLE = Conic(1.0, 1.0, 0.0, 0.0, 0.0, -1.0)


def phi_gap(x, y):
    gap = abs(x - y) % math.pi
    return min(gap, math.pi - gap)


class TestIsEllipse:
    def test_unit_circle(self):
        assert is_ellipse(UNIT_CIRCLE)

    def test_hyperbola_mixed_signs(self):
        with pytest.raises(MixedSignsError):
            is_ellipse(Conic(1.0, -1.0, 0.0, 0.0, 0.0, -1.0))

    def test_mixed_sign_slanted_conic(self):
        # Despite its large cross and linear terms this is not an ellipse:
        # the quadratic part has mixed signs and AB - C^2 < 0.
        c = Conic(1296.0, -531.0, 2232.0, -18000.0, -13500.0, 62500.0)
        assert c.A * c.B - c.C * c.C < 0.0
        with pytest.raises(MixedSignsError):
            is_ellipse(c)

    def test_negated_ellipse_accepted(self):
        assert is_ellipse(UNIT_CIRCLE.scaled(-1.0))

    def test_imaginary_ellipse_rejected(self):
        # x^2 + y^2 + 1 = 0 has no real points.
        assert not is_ellipse(Conic(1.0, 1.0, 0.0, 0.0, 0.0, 1.0))


class TestGeometry:
    def test_axis_aligned(self):
        g = geometry(Conic(1.0, 4.0, 0.0, 0.0, 0.0, -4.0))
        assert g.a == pytest.approx(2.0, rel=1e-12)
        assert g.b == pytest.approx(1.0, rel=1e-12)
        assert g.phi == 0.0
        assert g.center == pytest.approx((0.0, 0.0), abs=1e-14)

    def test_unit_square_incircle(self):
        g = geometry(Conic(1.0, 1.0, 0.0, -1.0, -1.0, 0.25))
        assert g.a == pytest.approx(0.5, rel=1e-12)
        assert g.b == pytest.approx(0.5, rel=1e-12)
        assert g.phi == 0.0
        assert g.center == pytest.approx((0.5, 0.5), rel=1e-12)

    def test_major_axis_along_y(self):
        # 2x^2 + y^2 = 1 extends further along y.
        g = geometry(Conic(2.0, 1.0, 0.0, 0.0, 0.0, -1.0))
        assert g.a == pytest.approx(1.0, rel=1e-12)
        assert g.phi == pytest.approx(math.pi / 2, rel=1e-12)

    def test_not_an_ellipse(self):
        with pytest.raises(NotAnEllipseError):
            geometry(Conic(1.0, 1.0, 0.0, 0.0, 0.0, 1.0))

    def test_e_and_e2(self):
        g = EllipseGeometry(center=(0.0, 0.0), a=2.0, b=1.0, phi=0.0)
        assert g.e2 == pytest.approx(0.75, rel=1e-15)
        assert g.e == pytest.approx(math.sqrt(0.75), rel=1e-15)
        assert g.ratio_sq == pytest.approx(0.25, rel=1e-15)


class TestEvaluate:
    def test_on_curve(self):
        assert evaluate(UNIT_CIRCLE, (1.0, 0.0)) == 0.0

    def test_at_center(self):
        assert evaluate(UNIT_CIRCLE, (0.0, 0.0)) == -1.0

    def test_relative_residual_scale_free(self):
        p = (math.cos(1.2), math.sin(1.2))
        small = relative_residual(UNIT_CIRCLE, p)
        big = relative_residual(UNIT_CIRCLE.scaled(1e8), p)
        assert small < 1e-15
        assert big == pytest.approx(small, rel=1e-6)


class TestFromGeometry:
    def test_unit_circle_roundtrip(self):
        g = EllipseGeometry(center=(0.0, 0.0), a=1.0, b=1.0, phi=0.0)
        assert proportional(from_geometry(g), UNIT_CIRCLE, rtol=1e-12)

    def test_square_incircle(self):
        g = EllipseGeometry(center=(0.5, 0.5), a=0.5, b=0.5, phi=0.0)
        assert proportional(from_geometry(g), Conic(1.0, 1.0, 0.0, -1.0, -1.0, 0.25))

    def test_rotated_roundtrip(self):
        g = EllipseGeometry(center=(2.5, 2.0), a=2.0, b=1.0, phi=math.pi / 6)
        back = geometry(from_geometry(g))
        assert back.a == pytest.approx(2.0, rel=1e-10)
        assert back.b == pytest.approx(1.0, rel=1e-10)
        assert back.center == pytest.approx((2.5, 2.0), rel=1e-10)
        assert phi_gap(back.phi, math.pi / 6) < 1e-10


@st.composite
def geometries(draw):
    a = draw(st.floats(0.5, 3.0))
    ratio = draw(st.floats(0.2, 0.95))
    return EllipseGeometry(
        center=(draw(st.floats(-5.0, 5.0)), draw(st.floats(-5.0, 5.0))),
        a=a,
        b=a * ratio,
        phi=draw(st.floats(0.0, math.pi, exclude_max=True)),
    )


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(geometries())
    def test_roundtrip(self, g):
        back = geometry(from_geometry(g))
        assert back.a == pytest.approx(g.a, rel=1e-10)
        assert back.b == pytest.approx(g.b, rel=1e-10)
        assert back.center[0] == pytest.approx(g.center[0], rel=1e-10, abs=1e-10)
        assert back.center[1] == pytest.approx(g.center[1], rel=1e-10, abs=1e-10)
        assert phi_gap(back.phi, g.phi) < 1e-10

    @settings(max_examples=100, deadline=None)
    @given(geometries(), st.floats(-3.0, 3.0))
    def test_scale_invariance(self, g, exponent):
        c = from_geometry(g)
        g1 = geometry(c)
        g2 = geometry(c.scaled(10.0**exponent))
        assert g2.a == pytest.approx(g1.a, rel=1e-12)
        assert g2.b == pytest.approx(g1.b, rel=1e-12)
        assert g2.center == pytest.approx(g1.center, rel=1e-9, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(geometries())
    def test_derotation_kills_cross_term(self, g):
        c = from_geometry(g)
        rot = ((math.cos(g.phi), -math.sin(g.phi)), (math.sin(g.phi), math.cos(g.phi)))
        cx, cy = g.center
        t = (cx - rot[0][0] * cx - rot[0][1] * cy, cy - rot[1][0] * cx - rot[1][1] * cy)
        aligned = pullback(c, rot, t)
        assert abs(2.0 * aligned.C) < 1e-10 * max(abs(aligned.A), abs(aligned.B))

    @settings(max_examples=100, deadline=None)
    @given(geometries())
    def test_axis_ordering(self, g):
        back = geometry(from_geometry(g))
        assert back.a >= back.b > 0.0


class TestJson:
    def test_cross_term_doubled_on_wire(self):
        c = Conic(1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
        wire = c.to_json_dict()
        assert wire["xy"] == 6.0
        assert Conic.from_json_dict(wire) == c

    def test_keys(self):
        assert set(UNIT_CIRCLE.to_json_dict()) == {"xx", "yy", "xy", "x", "y", "1"}
