"""Rectangle-specific shape metrics and the midpoint ellipse.

For an l x k rectangle the inscribed family member at parameter v has

    a^2 = (p + sqrt(X)) / 8,   b^2 = 2 l^2 (k - v) v / (p + sqrt(X)),
    p = k^2 + l^2,             X = p^2 - 16 l^2 (k - v) v,

algebraically identical to the usual paired closed forms
2 l^2 (k-v) v / (p -+ sqrt(X)) but free of cancellation near the family
boundary.  Two identities fall out: a^2 + b^2 = p / 4 for every member
(the sum never varies over the family), and a^2 - b^2 = sqrt(X) / 4.

The member tangent at the four side midpoints (v = k/2) simultaneously
minimizes eccentricity and maximizes both area and arc length over the
whole family; :func:`verify_midpoint_extremality` demonstrates all three
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .inscribed import InscribedEllipse, inscribed_conic
from .parallelogram import canonical_parallelogram

__all__ = [
    "RectangleFamilyMetrics",
    "MidpointExtremality",
    "ellipse_arc_length",
    "midpoint_ellipse",
    "rectangle_metrics",
    "verify_midpoint_extremality",
    "rectangle_semi_axes_sq",
]

ARC_ABS_TOL = 1e-10
ARC_REL_TOL = 1e-12


@dataclass(frozen=True)
class RectangleFamilyMetrics:
    """Shape metrics of one rectangle-inscribed family member."""

    v: float
    ecc2: float
    area: float
    arc_length: float
    sum_sq: float
    diff_sq: float


@dataclass(frozen=True)
class MidpointExtremality:
    """Extremizers of the three metrics over the family, after refinement."""

    ecc_minimizer: float
    area_maximizer: float
    arc_maximizer: float
    grid: int


def rectangle_semi_axes_sq(l: float, k: float, v: float) -> tuple[float, float]:
    """(a^2, b^2) of the rectangle family member at v."""
    p = k * k + l * l
    x = p * p - 16.0 * l * l * (k - v) * v
    root = math.sqrt(max(x, 0.0))
    a_sq = 0.125 * (p + root)
    b_sq = 2.0 * l * l * (k - v) * v / (p + root)
    return a_sq, b_sq


def ellipse_arc_length(
    a: float,
    b: float,
    abs_tol: float = ARC_ABS_TOL,
    rel_tol: float = ARC_REL_TOL,
) -> float:
    """Perimeter of an ellipse with semi-axes a, b by adaptive quadrature.

    Uses the integrand sqrt(a^2 + b^2 - (a^2 - b^2) cos(2t)) over
    [0, pi/2]; the parametric speed identity
    2 (a^2 sin^2 t + b^2 cos^2 t) = a^2 + b^2 - (a^2 - b^2) cos 2t
    fixes the overall constant at 2*sqrt(2).
    """
    s = a * a + b * b
    d = a * a - b * b

    def integrand(t: np.ndarray) -> np.ndarray:
        return np.sqrt(s - d * np.cos(2.0 * t))

    result = numerics.integrate(integrand, 0.0, 0.5 * math.pi, abs_tol, rel_tol)
    return 2.0 * math.sqrt(2.0) * result.value


def midpoint_ellipse(l: float, k: float) -> InscribedEllipse:
    """The ellipse tangent at the four side midpoints of an l x k rectangle.

    Axis-aligned with center (l/2, k/2) and semi-axes l/2 and k/2.
    """
    if not (l > 0.0 and k > 0.0):
        raise ValueError(f"need positive sides, got l={l}, k={k}")
    return inscribed_conic(canonical_parallelogram(l, k, 0.0), 0.5 * k)


def rectangle_metrics(l: float, k: float, v: float) -> RectangleFamilyMetrics:
    """All family metrics at parameter v for an l x k rectangle."""
    if not (l > 0.0 and k > 0.0):
        raise ValueError(f"need positive sides, got l={l}, k={k}")
    if not 0.0 < v < k:
        raise ValueError(f"family parameter v={v} outside (0, {k})")
    a_sq, b_sq = rectangle_semi_axes_sq(l, k, v)
    a = math.sqrt(a_sq)
    b = math.sqrt(b_sq)
    return RectangleFamilyMetrics(
        v=v,
        ecc2=1.0 - b_sq / a_sq,
        area=math.pi * a * b,
        arc_length=ellipse_arc_length(a, b),
        sum_sq=a_sq + b_sq,
        diff_sq=a_sq - b_sq,
    )


def verify_midpoint_extremality(l: float, k: float, grid: int = 1001) -> MidpointExtremality:
    """Locate the three family extremizers by sweep plus refinement.

    Sweeps a uniform grid over (0, k), then refines each winner with a
    bracketed golden-section search on the surrounding grid cell.  All
    three land on k/2.
    """
    if grid < 3:
        raise ValueError("grid must be at least 3")

    vs = [k * (i + 1) / (grid + 1) for i in range(grid)]
    step = k / (grid + 1)

    def axes(v: float) -> tuple[float, float]:
        a_sq, b_sq = rectangle_semi_axes_sq(l, k, v)
        return math.sqrt(a_sq), math.sqrt(b_sq)

    def ecc2(v: float) -> float:
        a_sq, b_sq = rectangle_semi_axes_sq(l, k, v)
        return 1.0 - b_sq / a_sq

    def neg_area(v: float) -> float:
        a, b = axes(v)
        return -math.pi * a * b

    def neg_arc(v: float) -> float:
        return -ellipse_arc_length(*axes(v))

    def refine(objective, values: list[float]) -> float:
        best = min(range(grid), key=values.__getitem__)
        lo = max(vs[best] - step, vs[0] * 0.5)
        hi = min(vs[best] + step, 0.5 * (vs[-1] + k))
        return numerics.minimize_scalar(objective, lo, hi, tol=1e-12, grid=32).x_min

    ecc_values = [ecc2(v) for v in vs]
    area_values = [neg_area(v) for v in vs]
    arc_values = [neg_arc(v) for v in vs]
    return MidpointExtremality(
        ecc_minimizer=refine(ecc2, ecc_values),
        area_maximizer=refine(neg_area, area_values),
        arc_maximizer=refine(neg_arc, arc_values),
        grid=grid,
    )
