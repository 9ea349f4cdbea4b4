"""Full analysis of a parallelogram and stable JSON rendering.

The report carries the minimal-eccentricity inscribed and circumscribed
ellipses in BOTH frames: the canonical frame all family formulas live
in, and the original frame of the input vertices (transported through
the stored isometry).  Every numeric field is finite; serialization is
byte-stable (sorted keys, floats at 17 significant digits).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .circumscribed import (
    BiellipticVerdict,
    CircumscribedEllipse,
    bielliptic_verdict,
    minimal_eccentricity_circumellipse,
    vertex_residuals,
)
from .conic import Conic, EllipseGeometry, geometry, pullback
from .inscribed import (
    AngleIdentity,
    InscribedEllipse,
    angle_identity,
    max_tangency_point_residual,
    minimal_eccentricity_ellipse,
    stationarity_residual,
    tangency_residuals,
)
from .parallelogram import Parallelogram, canonicalize

__all__ = ["AnalysisReport", "ResidualDiagnostics", "analyze", "render_json"]

Point = tuple[float, float]


@dataclass(frozen=True)
class ResidualDiagnostics:
    """Numerical health indicators attached to every report."""

    tangency: float
    vertex_incidence: float
    stationarity: float


@dataclass(frozen=True)
class AnalysisReport:
    """Aggregate result of analyzing one parallelogram.

    ``input_vertices`` echoes the input in the order given; the
    parallelogram's own ``vertices`` carry the canonical labeling.
    """

    input_vertices: tuple[Point, Point, Point, Point]
    parallelogram: Parallelogram
    inscribed: InscribedEllipse
    inscribed_original_conic: Conic
    inscribed_original_geometry: EllipseGeometry
    inscribed_original_tangency: tuple[Point, ...]
    circumscribed: CircumscribedEllipse
    circumscribed_original_conic: Conic
    circumscribed_original_geometry: EllipseGeometry
    angles: AngleIdentity
    verdict: BiellipticVerdict
    residuals: ResidualDiagnostics

    def to_dict(self) -> dict[str, object]:
        ins_geom = self.inscribed.geometry
        circ_geom = self.circumscribed.geometry
        return {
            "input": {"vertices": [list(v) for v in self.input_vertices]},
            "canonical": self.parallelogram.to_json_dict(),
            "inscribed": {
                "v": self.inscribed.v,
                "ratio_sq": ins_geom.ratio_sq,
                "e2": ins_geom.e2,
                "e": ins_geom.e,
                "canonical": {
                    "conic": self.inscribed.conic.to_json_dict(),
                    "geometry": ins_geom.to_json_dict(),
                    "tangency": [list(t) for t in self.inscribed.tangency],
                },
                "original": {
                    "conic": self.inscribed_original_conic.to_json_dict(),
                    "geometry": self.inscribed_original_geometry.to_json_dict(),
                    "tangency": [list(t) for t in self.inscribed_original_tangency],
                },
            },
            "circumscribed": {
                "u": self.circumscribed.u,
                "ratio_sq": circ_geom.ratio_sq,
                "e2": circ_geom.e2,
                "e": circ_geom.e,
                "canonical": {
                    "conic": self.circumscribed.conic.to_json_dict(),
                    "geometry": circ_geom.to_json_dict(),
                },
                "original": {
                    "conic": self.circumscribed_original_conic.to_json_dict(),
                    "geometry": self.circumscribed_original_geometry.to_json_dict(),
                },
            },
            "angles": {
                "conjugate_diameters": self.angles.conjugate_angle,
                "diagonals": self.angles.diagonal_angle,
                "difference": self.angles.delta,
            },
            "bielliptic": self.verdict.to_json_dict(),
            "residuals": {
                "tangency": self.residuals.tangency,
                "vertex_incidence": self.residuals.vertex_incidence,
                "stationarity": self.residuals.stationarity,
            },
        }


def analyze(vertices) -> AnalysisReport:
    """Run the full pipeline on four vertices given in any order."""
    pts = tuple((float(x), float(y)) for x, y in vertices)
    if len(pts) != 4:
        raise ValueError(f"need exactly four vertices, got {len(pts)}")
    p = canonicalize(*pts)

    ell = minimal_eccentricity_ellipse(p)
    circ = minimal_eccentricity_circumellipse(p)

    m, t = p.iso.matrix, p.iso.translation
    ins_conic_orig = pullback(ell.conic, m, t)
    circ_conic_orig = pullback(circ.conic, m, t)
    inverse = p.iso.inverse()
    tangency_orig = tuple(inverse.apply(pt) for pt in ell.tangency)

    residuals = ResidualDiagnostics(
        tangency=max(
            max(tangency_residuals(p, ell)),
            max_tangency_point_residual(ell),
        ),
        vertex_incidence=max(vertex_residuals(p, circ)),
        stationarity=stationarity_residual(p),
    )

    return AnalysisReport(
        input_vertices=pts,
        parallelogram=p,
        inscribed=ell,
        inscribed_original_conic=ins_conic_orig,
        inscribed_original_geometry=geometry(ins_conic_orig),
        inscribed_original_tangency=tangency_orig,
        circumscribed=circ,
        circumscribed_original_conic=circ_conic_orig,
        circumscribed_original_geometry=geometry(circ_conic_orig),
        angles=angle_identity(p),
        verdict=bielliptic_verdict(p),
        residuals=residuals,
    )


def _render(obj: object, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite value {obj!r} cannot be serialized")
        out.append(format(obj, ".17g"))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _render(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _render(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(obj: object) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    out: list[str] = []
    _render(obj, out)
    return "".join(out)
