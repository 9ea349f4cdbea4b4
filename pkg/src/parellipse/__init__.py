"""Ellipse families of parallelograms.

Construction, optimization and verification of the one-parameter
families of ellipses inscribed in and circumscribed about a
parallelogram: closed-form minimal-eccentricity members, the equal
conjugate diameter / diagonal angle identity, midpoint-ellipse
extremality for rectangles, and the bielliptic criterion, each
cross-checked by independent numerical oracles.
"""

__version__ = "0.1.0"

from .circumscribed import (
    BiellipticVerdict,
    CircumscribedEllipse,
    bielliptic_verdict,
    circumscribed_conic,
    min_eccentricity_u,
    minimal_eccentricity_circumellipse,
)
from .conic import (
    Conic,
    EllipseGeometry,
    MixedSignsError,
    NotAnEllipseError,
    evaluate,
    from_geometry,
    geometry,
    is_ellipse,
)
from .inscribed import (
    AngleIdentity,
    FamilyRatio,
    InscribedEllipse,
    angle_identity,
    conjugate_diameter_angle,
    equal_conjugate_diameters,
    family_ratio,
    inscribed_conic,
    min_eccentricity_v,
    minimal_eccentricity_ellipse,
)
from .numerics import MinimizeResult, QuadratureResult, integrate, minimize_scalar
from .parallelogram import (
    DegenerateParallelogramError,
    DiagonalInvariants,
    Isometry,
    NotAParallelogramError,
    Parallelogram,
    canonical_parallelogram,
    canonicalize,
    diagonal_invariants,
    shear_to_rectangle,
)
from .rectangle import (
    RectangleFamilyMetrics,
    ellipse_arc_length,
    midpoint_ellipse,
    rectangle_metrics,
    verify_midpoint_extremality,
)
from .report import AnalysisReport, analyze, render_json

__all__ = [
    "__version__",
    "AnalysisReport",
    "AngleIdentity",
    "BiellipticVerdict",
    "CircumscribedEllipse",
    "Conic",
    "DegenerateParallelogramError",
    "DiagonalInvariants",
    "EllipseGeometry",
    "FamilyRatio",
    "InscribedEllipse",
    "Isometry",
    "MinimizeResult",
    "MixedSignsError",
    "NotAParallelogramError",
    "NotAnEllipseError",
    "Parallelogram",
    "QuadratureResult",
    "RectangleFamilyMetrics",
    "analyze",
    "angle_identity",
    "bielliptic_verdict",
    "canonical_parallelogram",
    "canonicalize",
    "circumscribed_conic",
    "conjugate_diameter_angle",
    "diagonal_invariants",
    "ellipse_arc_length",
    "equal_conjugate_diameters",
    "evaluate",
    "family_ratio",
    "from_geometry",
    "geometry",
    "inscribed_conic",
    "integrate",
    "is_ellipse",
    "midpoint_ellipse",
    "min_eccentricity_u",
    "min_eccentricity_v",
    "minimal_eccentricity_circumellipse",
    "minimal_eccentricity_ellipse",
    "minimize_scalar",
    "rectangle_metrics",
    "render_json",
    "shear_to_rectangle",
    "verify_midpoint_extremality",
]
