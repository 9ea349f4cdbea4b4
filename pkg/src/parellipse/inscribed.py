"""The one-parameter family of ellipses inscribed in a parallelogram.

In the canonical frame the family member at parameter v (0 < v < k) has
the conic

    k^3 x^2 + (k (d+l)^2 - 4 d l v) y^2 - 2 k (k d - 2 l v + k l) x y
        - 2 k^2 l v x + 2 k l v (d - l) y + k l^2 v^2 = 0,

which for d = 0 reduces (up to scale) to the rectangle family

    k^2 x^2 + l^2 y^2 - 2 l (k - 2 v) x y - 2 l k v x - 2 l^2 v y + l^2 v^2 = 0

tangent to the rectangle at (l v / k, 0), (0, v), (l (k - v) / k, k) and
(l, k - v).  For d > 0 the tangency points are the images of those
rectangle points under the inverse of the shear that flattens the
parallelogram; affine maps preserve tangency, so they are tangency
points of the sheared conic as well.

Eccentricity is minimized (equivalently, the squared axis ratio
b^2/a^2 is maximized) at exactly one parameter value, available in
closed form; see :func:`min_eccentricity_v`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .conic import Conic, EllipseGeometry, geometry, is_ellipse, evaluate, relative_residual
from .parallelogram import Parallelogram, diagonal_invariants, shear_to_rectangle

__all__ = [
    "InscribedEllipse",
    "FamilyRatio",
    "AngleIdentity",
    "inscribed_conic",
    "family_ratio",
    "min_eccentricity_v",
    "min_ratio_sq",
    "minimal_eccentricity_ellipse",
    "stationarity_residual",
    "conjugate_diameter_angle",
    "angle_identity",
    "equal_conjugate_diameters",
    "tangency_residuals",
]

Point = tuple[float, float]
Segment = tuple[Point, Point]


@dataclass(frozen=True)
class InscribedEllipse:
    """One member of the inscribed family, in the canonical frame.

    ``tangency`` lists one point per side in the order bottom (OP),
    left (OQ), top (QR), right (PR).
    """

    v: float
    conic: Conic
    geometry: EllipseGeometry
    tangency: tuple[Point, Point, Point, Point]
    is_minimal: bool = False


@dataclass(frozen=True)
class FamilyRatio:
    """Closed-form shape data of the family member at parameter v.

    ``ratio_sq`` is b^2/a^2.  ``excess`` is 8 k^2 l^2 (ratio_sq - 1),
    the quantity whose maximization picks out the minimal-eccentricity
    member.  ``discriminant`` is the polynomial (B - A)^2 + 4 C^2 of the
    family conic; it sits under the square root in the closed form and
    is nonnegative on the whole family.
    """

    v: float
    discriminant: float
    excess: float
    ratio_sq: float


@dataclass(frozen=True)
class AngleIdentity:
    """Conjugate-diameter angle vs. diagonal angle, and their gap."""

    conjugate_angle: float
    diagonal_angle: float
    delta: float


def _check_v(p: Parallelogram, v: float) -> None:
    if not 0.0 < v < p.k:
        raise ValueError(f"family parameter v={v} outside (0, {p.k})")


def inscribed_conic(p: Parallelogram, v: float) -> InscribedEllipse:
    """The inscribed family member at parameter v, with tangency points."""
    _check_v(p, v)
    l, k, d = p.l, p.k, p.d
    conic = Conic(
        A=k**3,
        B=k * (d + l) ** 2 - 4.0 * d * l * v,
        C=-k * (k * d - 2.0 * l * v + k * l),
        D=-2.0 * k**2 * l * v,
        E=2.0 * k * l * v * (d - l),
        F=k * l**2 * v**2,
    )
    if not is_ellipse(conic):
        raise AssertionError(f"family member at v={v} failed the ellipse test")
    shear = shear_to_rectangle(p)
    rect_tangency = (
        (l * v / k, 0.0),
        (0.0, v),
        (l * (k - v) / k, k),
        (l, k - v),
    )
    tangency = tuple(shear.invert_point(t) for t in rect_tangency)
    return InscribedEllipse(v=v, conic=conic, geometry=geometry(conic), tangency=tangency)


def family_ratio(p: Parallelogram, v: float) -> FamilyRatio:
    """Closed-form b^2/a^2 of the family member at v (no conic needed).

    The discriminant is evaluated in its factored sum-of-squares form
    (B - A)^2 + 4 C^2 over the family coefficients rather than as the
    expanded quartic in v: the two are identical polynomials, but the
    expansion cancels catastrophically near its minimum (e.g. for a
    square at v = k/2) while the factored form stays fully accurate.
    """
    _check_v(p, v)
    l, k, d = p.l, p.k, p.d
    b_minus_a = k * (d + l) ** 2 - 4.0 * d * l * v - k**3
    c_coef = -k * (k * d - 2.0 * l * v + k * l)
    m = b_minus_a**2 + 4.0 * c_coef**2
    scale = k**2 * (2.0 * d * l + l**2 + d**2 + k**2) ** 2
    if m < 0.0:
        if m >= -1e-12 * scale:
            m = 0.0
        else:
            raise RuntimeError(
                f"negative discriminant {m} at v={v} (l={l}, k={k}, d={d}); "
                "the family closed form does not admit this"
            )
    root = math.sqrt(m)
    coef = 4.0 * d * l * v - k * ((d + l) ** 2 + k**2)
    excess = (m + coef * root) / ((k - v) * v)
    ratio_sq = 1.0 + excess / (8.0 * k**2 * l**2)
    if -1e-12 < ratio_sq < 0.0:
        ratio_sq = 0.0
    return FamilyRatio(v=v, discriminant=m, excess=excess, ratio_sq=ratio_sq)


def min_eccentricity_v(p: Parallelogram) -> float:
    """Parameter of the unique minimal-eccentricity inscribed ellipse.

    v = k ((d+l)^2 + k^2) / (2 (k^2 + d^2 + l^2)), strictly inside (0, k).
    """
    l, k, d = p.l, p.k, p.d
    return 0.5 * k * ((d + l) ** 2 + k**2) / (k**2 + d**2 + l**2)


def min_ratio_sq(p: Parallelogram) -> float:
    """Closed-form maximal b^2/a^2 over the inscribed family.

    Equals 1 + |i| (|i| - sqrt(g h)) / (2 k^2 l^2) with g, h the squared
    diagonal lengths and i = l^2 - d^2 - k^2.  The absolute value matters:
    taking i with its sign is wrong whenever i < 0 (it would yield a
    ratio above 1), while |i| agrees with the family closed form for
    every parallelogram; see the two-path tests.
    """
    inv = diagonal_invariants(p)
    i_abs = abs(inv.side_sq_diff)
    gh_root = math.sqrt(inv.diag1_sq * inv.diag2_sq)
    return 1.0 + i_abs * (i_abs - gh_root) / (2.0 * p.k**2 * p.l**2)


def minimal_eccentricity_ellipse(p: Parallelogram) -> InscribedEllipse:
    """The unique inscribed ellipse of minimal eccentricity."""
    ell = inscribed_conic(p, min_eccentricity_v(p))
    return replace(ell, is_minimal=True)


def stationarity_residual(p: Parallelogram) -> float:
    """|d(ratio_sq)/dv| at the closed-form optimum, by central differences.

    A vanishing derivative at the claimed maximizer is the numerical
    stationarity check; the step is 1e-6 * k, shrunk if the optimum sits
    close to a family boundary.
    """
    v = min_eccentricity_v(p)
    step = min(1e-6 * p.k, 0.5 * v, 0.5 * (p.k - v))
    hi = family_ratio(p, v + step).ratio_sq
    lo = family_ratio(p, v - step).ratio_sq
    return abs(hi - lo) / (2.0 * step)


def conjugate_diameter_angle(ell: InscribedEllipse) -> float:
    """Smallest nonnegative angle between the equal conjugate diameters.

    Equals 2 * atan(b / a), in (0, pi/2]; pi/2 for a circle, where every
    pair of perpendicular diameters is conjugate and equal.
    """
    g = ell.geometry
    return 2.0 * math.atan(g.b / g.a)


def angle_identity(p: Parallelogram) -> AngleIdentity:
    """Equal-conjugate-diameter angle of the minimal ellipse vs. diagonals.

    The two angles coincide for every parallelogram; ``delta`` reports
    the numerically observed gap.
    """
    ell = minimal_eccentricity_ellipse(p)
    conjugate = conjugate_diameter_angle(ell)
    diagonal = diagonal_invariants(p).angle
    return AngleIdentity(
        conjugate_angle=conjugate,
        diagonal_angle=diagonal,
        delta=abs(conjugate - diagonal),
    )


def equal_conjugate_diameters(ell: InscribedEllipse) -> tuple[Segment, Segment]:
    """Endpoints of the two equal conjugate diameters.

    They pass through the center at angles +-theta from the major axis
    (tan(theta) = b/a), each with semi-length sqrt((a^2 + b^2) / 2), and
    their endpoints lie on the ellipse.  For a circle every diameter
    qualifies; by convention the pair at +-45 degrees from the x axis is
    returned.
    """
    g = ell.geometry
    if g.a == g.b:
        theta = 0.25 * math.pi
        base = 0.0
    else:
        theta = math.atan(g.b / g.a)
        base = g.phi
    half = math.sqrt(0.5 * (g.a**2 + g.b**2))
    cx, cy = g.center

    def diameter(angle: float) -> Segment:
        ux = half * math.cos(angle)
        uy = half * math.sin(angle)
        return ((cx - ux, cy - uy), (cx + ux, cy + uy))

    return diameter(base + theta), diameter(base - theta)


def tangency_residuals(p: Parallelogram, ell: InscribedEllipse) -> list[float]:
    """Dimensionless double-root residual of the conic on each side line.

    Restricting the conic to a side P0 + t (P1 - P0) gives a quadratic
    alpha t^2 + beta t + gamma; tangency means a vanishing discriminant
    beta^2 - 4 alpha gamma.  The residual is |discriminant| / s^2 with
    s = max(|alpha|, |beta|, |gamma|).
    """
    o, pt, q, r = p.canonical_vertices
    residuals = []
    for p0, p1 in ((o, pt), (o, q), (q, r), (pt, r)):
        dx = p1[0] - p0[0]
        dy = p1[1] - p0[1]
        c = ell.conic
        alpha = c.A * dx * dx + c.B * dy * dy + 2.0 * c.C * dx * dy
        beta = (
            2.0 * c.A * p0[0] * dx
            + 2.0 * c.B * p0[1] * dy
            + 2.0 * c.C * (p0[0] * dy + p0[1] * dx)
            + c.D * dx
            + c.E * dy
        )
        gamma = evaluate(c, p0)
        scale = max(abs(alpha), abs(beta), abs(gamma))
        residuals.append(abs(beta * beta - 4.0 * alpha * gamma) / scale**2)
    return residuals


def tangency_interior_params(p: Parallelogram, ell: InscribedEllipse) -> list[float]:
    """Side parameter t in (0, 1) of each tangency point."""
    o, pt, q, r = p.canonical_vertices
    params = []
    for (p0, p1), touch in zip(((o, pt), (o, q), (q, r), (pt, r)), ell.tangency):
        dx = p1[0] - p0[0]
        dy = p1[1] - p0[1]
        norm_sq = dx * dx + dy * dy
        t = ((touch[0] - p0[0]) * dx + (touch[1] - p0[1]) * dy) / norm_sq
        params.append(t)
    return params


def max_tangency_point_residual(ell: InscribedEllipse) -> float:
    """Worst curve-membership residual over the four tangency points."""
    return max(relative_residual(ell.conic, t) for t in ell.tangency)
