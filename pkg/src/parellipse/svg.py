"""Deterministic SVG rendering of an analysis report.

Hand-assembled markup (no plotting dependency): fixed element order,
fixed attribute order and fixed number formatting make the output
byte-identical for identical input.  The mathematical y-axis points up,
so coordinates are emitted with y negated.

The parallelogram outline is always drawn; the optional layers are
"diagonals", "inscribed", "circumscribed", "tangency" and "diameters".
The two equal conjugate diameters carry a ``data-angle`` attribute with
the angle between them; the root element repeats it next to the
diagonal angle for downstream consumers.
"""

from __future__ import annotations

import math
from typing import Iterable

from .conic import EllipseGeometry
from .inscribed import equal_conjugate_diameters
from .report import AnalysisReport

__all__ = ["LAYERS", "render_svg"]

LAYERS = ("diagonals", "inscribed", "circumscribed", "tangency", "diameters")

Point = tuple[float, float]

_STYLE = (
    ".parallelogram{fill:none;stroke:#1a1a1a}"
    ".diagonal{stroke:#8a8a8a;stroke-dasharray:%(dash)s}"
    ".inscribed{fill:none;stroke:#c23b22}"
    ".circumscribed{fill:none;stroke:#1f77b4}"
    ".tangency{fill:#c23b22;stroke:none}"
    ".diameter{stroke:#2ca02c}"
)


def _fmt(x: float) -> str:
    s = format(x + 0.0, ".12g")
    return "0" if s == "-0" else s


class _Canvas:
    """Collects elements and the bounding box of everything drawn."""

    def __init__(self) -> None:
        self.elements: list[str] = []
        self.min_x = math.inf
        self.max_x = -math.inf
        self.min_y = math.inf
        self.max_y = -math.inf

    def cover(self, x: float, y: float) -> None:
        self.min_x = min(self.min_x, x)
        self.max_x = max(self.max_x, x)
        self.min_y = min(self.min_y, y)
        self.max_y = max(self.max_y, y)

    def polygon(self, pts: Iterable[Point], cls: str) -> None:
        flipped = [(x, -y) for x, y in pts]
        for x, y in flipped:
            self.cover(x, y)
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in flipped)
        self.elements.append(f'<polygon class="{cls}" points="{coords}"/>')

    def line(self, p0: Point, p1: Point, cls: str, extra: str = "") -> None:
        (x0, y0), (x1, y1) = (p0[0], -p0[1]), (p1[0], -p1[1])
        self.cover(x0, y0)
        self.cover(x1, y1)
        self.elements.append(
            f'<line class="{cls}" x1="{_fmt(x0)}" y1="{_fmt(y0)}" '
            f'x2="{_fmt(x1)}" y2="{_fmt(y1)}"{extra}/>'
        )

    def ellipse(self, g: EllipseGeometry, cls: str) -> None:
        cx, cy = g.center[0], -g.center[1]
        ext_x = math.hypot(g.a * math.cos(g.phi), g.b * math.sin(g.phi))
        ext_y = math.hypot(g.a * math.sin(g.phi), g.b * math.cos(g.phi))
        self.cover(cx - ext_x, cy - ext_y)
        self.cover(cx + ext_x, cy + ext_y)
        deg = -math.degrees(g.phi)
        self.elements.append(
            f'<ellipse class="{cls}" cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
            f'rx="{_fmt(g.a)}" ry="{_fmt(g.b)}" '
            f'transform="rotate({_fmt(deg)} {_fmt(cx)} {_fmt(cy)})"/>'
        )

    def dot(self, p: Point, radius: float, cls: str) -> None:
        x, y = p[0], -p[1]
        self.cover(x - radius, y - radius)
        self.cover(x + radius, y + radius)
        self.elements.append(
            f'<circle class="{cls}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}"/>'
        )


def render_svg(report: AnalysisReport, layers: Iterable[str] = LAYERS) -> str:
    """Render the report geometry (original frame) as an SVG document."""
    chosen = set(layers)
    unknown = chosen.difference(LAYERS)
    if unknown:
        raise ValueError(f"unknown layers: {sorted(unknown)}; valid: {list(LAYERS)}")

    o, p, q, r = report.parallelogram.vertices
    scale = max(
        math.hypot(r[0] - o[0], r[1] - o[1]),
        math.hypot(q[0] - p[0], q[1] - p[1]),
    )
    canvas = _Canvas()
    canvas.polygon((o, p, r, q), "parallelogram")

    if "diagonals" in chosen:
        canvas.line(o, r, "diagonal")
        canvas.line(p, q, "diagonal")
    if "circumscribed" in chosen:
        canvas.ellipse(report.circumscribed_original_geometry, "circumscribed")
    if "inscribed" in chosen:
        canvas.ellipse(report.inscribed_original_geometry, "inscribed")
    if "tangency" in chosen:
        for t in report.inscribed_original_tangency:
            canvas.dot(t, 0.012 * scale, "tangency")
    if "diameters" in chosen:
        angle = report.angles.conjugate_angle
        inverse = report.parallelogram.iso.inverse()
        for seg in equal_conjugate_diameters(report.inscribed):
            p0 = inverse.apply(seg[0])
            p1 = inverse.apply(seg[1])
            canvas.line(p0, p1, "diameter", extra=f' data-angle="{angle:.17g}"')

    margin = 0.05 * max(canvas.max_x - canvas.min_x, canvas.max_y - canvas.min_y)
    vx = canvas.min_x - margin
    vy = canvas.min_y - margin
    vw = (canvas.max_x - canvas.min_x) + 2.0 * margin
    vh = (canvas.max_y - canvas.min_y) + 2.0 * margin
    stroke = 0.004 * max(vw, vh)
    dash = f"{_fmt(3.0 * stroke)} {_fmt(2.0 * stroke)}"
    style = _STYLE % {"dash": dash}

    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}" '
        f'data-conjugate-angle="{report.angles.conjugate_angle:.17g}" '
        f'data-diagonal-angle="{report.angles.diagonal_angle:.17g}" '
        f'stroke-width="{_fmt(stroke)}">'
    )
    parts = [head, f"<style>{style}</style>", *canvas.elements, "</svg>"]
    return "\n".join(parts) + "\n"
