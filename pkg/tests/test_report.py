import json
import math

import pytest

from parellipse.conic import evaluate
from parellipse.report import analyze, render_json

SLANTED = ((0.0, 0.0), (2.0, 4.0), (7.0, 4.0), (5.0, 0.0))


class TestAnalyze:
    def test_slanted_example_values(self):
        report = analyze(SLANTED)
        assert report.parallelogram.l == pytest.approx(5.0, rel=1e-12)
        assert report.inscribed.v == pytest.approx(26.0 / 9.0, abs=1e-12)
        expected = (65.0 - math.sqrt(65.0)) / (65.0 + math.sqrt(65.0))
        assert report.inscribed.geometry.ratio_sq == pytest.approx(expected, rel=1e-9)
        assert report.angles.conjugate_angle == pytest.approx(math.atan(8.0), abs=1e-9)
        assert report.angles.diagonal_angle == pytest.approx(math.atan(8.0), abs=1e-9)
        assert not report.verdict.is_bielliptic

    def test_original_frame_data_consistent(self):
        # Shift and rotate the slanted example; original-frame outputs
        # must live in the input frame.
        angle = 0.4
        c, s = math.cos(angle), math.sin(angle)
        moved = tuple((c * x - s * y - 2.0, s * x + c * y + 1.0) for x, y in SLANTED)
        report = analyze(moved)
        for vertex in moved:
            assert abs(evaluate(report.circumscribed_original_conic, vertex)) < 1e-7
        for point in report.inscribed_original_tangency:
            assert abs(evaluate(report.inscribed_original_conic, point)) < 1e-7
        assert report.inscribed_original_geometry.a == pytest.approx(
            report.inscribed.geometry.a, rel=1e-9
        )

    def test_residual_diagnostics_small(self):
        report = analyze(SLANTED)
        assert report.residuals.tangency < 1e-10
        assert report.residuals.vertex_incidence < 1e-10
        assert report.residuals.stationarity < 1e-6

    def test_rejects_wrong_count(self):
        with pytest.raises(ValueError):
            analyze(((0, 0), (1, 0), (1, 1)))

    def test_dict_structure(self):
        d = analyze(SLANTED).to_dict()
        assert set(d) == {
            "input",
            "canonical",
            "inscribed",
            "circumscribed",
            "angles",
            "bielliptic",
            "residuals",
        }
        assert d["input"]["vertices"] == [[0.0, 0.0], [2.0, 4.0], [7.0, 4.0], [5.0, 0.0]]
        assert set(d["inscribed"]) >= {"v", "ratio_sq", "e2", "e", "canonical", "original"}
        assert set(d["canonical"]) == {"l", "k", "d", "isometry"}
        assert "tangency" in d["inscribed"]["original"]


class TestRenderJson:
    def test_parses_and_sorted(self):
        text = render_json(analyze(SLANTED).to_dict())
        parsed = json.loads(text)
        assert parsed["canonical"]["l"] == 5.0

        def keys_sorted(obj):
            if isinstance(obj, dict):
                ks = list(obj)
                return ks == sorted(ks) and all(keys_sorted(v) for v in obj.values())
            if isinstance(obj, list):
                return all(keys_sorted(v) for v in obj)
            return True

        assert keys_sorted(parsed)

    def test_byte_identical(self):
        first = render_json(analyze(SLANTED).to_dict())
        second = render_json(analyze(SLANTED).to_dict())
        assert first == second

    def test_float_precision_17_digits(self):
        text = render_json({"x": 2.0 / 3.0})
        assert text == '{"x":0.66666666666666663}'

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            render_json({"x": float("inf")})

    def test_scalar_types(self):
        assert render_json([True, False, None, 3, "a\"b"]) == '[true,false,null,3,"a\\"b"]'
