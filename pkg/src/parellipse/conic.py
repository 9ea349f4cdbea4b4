"""General conics and ellipse metric extraction.

A conic is stored as the six coefficients of

    A*x**2 + B*y**2 + 2*C*x*y + D*x + E*y + F = 0

Note the factor of two on the cross term: ``C`` is HALF the xy
coefficient.  The JSON wire format stores the full xy coefficient under
the key ``"xy"`` to avoid any ambiguity.

Coefficients are stored exactly as given; scaling all six by a positive
constant describes the same curve, so curve equality is always tested up
to positive scale (see :func:`proportional`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Conic",
    "EllipseGeometry",
    "MixedSignsError",
    "NotAnEllipseError",
    "is_ellipse",
    "geometry",
    "evaluate",
    "from_geometry",
    "pullback",
    "proportional",
    "relative_residual",
]

Point = tuple[float, float]
Matrix2 = tuple[tuple[float, float], tuple[float, float]]

# Threshold below which the quadratic part is treated as circular and the
# rotation angle is reported as 0 (the angle formula is undefined there).
_CIRCLE_EPS = 1e-14


class MixedSignsError(ValueError):
    """Quadratic part has mixed signs; no positive-scale normalization exists."""


class NotAnEllipseError(ValueError):
    """The conic does not describe a (real, nondegenerate) ellipse."""


@dataclass(frozen=True)
class Conic:
    """Six coefficients of a general second-degree plane curve."""

    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    @property
    def coefficients(self) -> tuple[float, float, float, float, float, float]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def scaled(self, s: float) -> "Conic":
        return Conic(s * self.A, s * self.B, s * self.C, s * self.D, s * self.E, s * self.F)

    def to_json_dict(self) -> dict[str, float]:
        """Wire format; ``"xy"`` carries the FULL cross coefficient (2*C)."""
        return {
            "xx": self.A,
            "yy": self.B,
            "xy": 2.0 * self.C,
            "x": self.D,
            "y": self.E,
            "1": self.F,
        }

    @classmethod
    def from_json_dict(cls, obj: dict[str, float]) -> "Conic":
        return cls(
            A=float(obj["xx"]),
            B=float(obj["yy"]),
            C=0.5 * float(obj["xy"]),
            D=float(obj["x"]),
            E=float(obj["y"]),
            F=float(obj["1"]),
        )


@dataclass(frozen=True)
class EllipseGeometry:
    """Metric description of an ellipse: center, semi-axes, orientation.

    ``phi`` is the direction of the major axis, normalized to [0, pi);
    a circle reports ``phi = 0``.  ``e2`` is the quantity 1 - b**2/a**2
    and ``e = sqrt(e2)`` is the eccentricity proper.
    """

    center: Point
    a: float
    b: float
    phi: float

    def __post_init__(self) -> None:
        if not (self.a >= self.b > 0.0):
            raise ValueError(f"need a >= b > 0, got a={self.a}, b={self.b}")
        phi = self.phi % math.pi
        if phi >= math.pi:
            phi = 0.0
        if self.a == self.b:
            phi = 0.0
        object.__setattr__(self, "phi", phi + 0.0)

    @property
    def e2(self) -> float:
        return 1.0 - (self.b / self.a) ** 2

    @property
    def e(self) -> float:
        return math.sqrt(max(self.e2, 0.0))

    @property
    def ratio_sq(self) -> float:
        """The squared axis ratio b**2/a**2."""
        return (self.b / self.a) ** 2

    def to_json_dict(self) -> dict[str, object]:
        return {
            "center": list(self.center),
            "a": self.a,
            "b": self.b,
            "phi": self.phi,
            "e": self.e,
            "e2": self.e2,
            "ratio_sq": self.ratio_sq,
        }


def _sign_normalized(c: Conic) -> Conic:
    # A concave-down pair (A, B < 0) is the same curve scaled by -1.
    if c.A < 0.0 and c.B < 0.0:
        c = c.scaled(-1.0)
    if c.A <= 0.0 or c.B <= 0.0:
        raise MixedSignsError(
            f"quadratic part has non-positive or mixed signs: A={c.A}, B={c.B}"
        )
    return c


def _positivity(c: Conic) -> float:
    """The quantity A*E**2 + B*D**2 + 4*F*C**2 - 2*C*D*E - 4*A*B*F.

    Positive exactly when the (already sign-normalized) conic is a real,
    nondegenerate ellipse rather than a point or the empty set.  The five
    terms can cancel heavily (they scale with the square of the center
    offset), so they are summed with compensation.
    """
    A, B, C, D, E, F = c.coefficients
    return math.fsum(
        (A * E * E, B * D * D, 4.0 * F * C * C, -2.0 * C * D * E, -4.0 * A * B * F)
    )


def is_ellipse(c: Conic) -> bool:
    """True iff the curve is a real ellipse.

    Requires a sign-normalizable quadratic part (raises MixedSignsError
    otherwise); the test itself is AB - C**2 > 0 together with positivity
    of the discriminant combination checked by :func:`_positivity`.
    """
    c = _sign_normalized(c)
    return (c.A * c.B - c.C * c.C) > 0.0 and _positivity(c) > 0.0


def evaluate(c: Conic, p: Point) -> float:
    """Value of the defining polynomial at ``p``; zero on the curve."""
    x, y = p
    return (
        c.A * x * x
        + c.B * y * y
        + 2.0 * c.C * x * y
        + c.D * x
        + c.E * y
        + c.F
    )


def relative_residual(c: Conic, p: Point) -> float:
    """Scale-free curve-membership residual at ``p``.

    |evaluate| divided by (coefficient magnitude * squared coordinate
    scale), so "on the curve" can be tested against a dimensionless
    tolerance regardless of how the conic happens to be scaled.
    """
    x, y = p
    coef = max(abs(v) for v in c.coefficients)
    scale = coef * (1.0 + x * x + y * y)
    return abs(evaluate(c, p)) / scale


def geometry(c: Conic) -> EllipseGeometry:
    """Extract center, semi-axes and major-axis direction of an ellipse.

    Semi-axis lengths come from the classical closed forms

        a^2 = P / (2 (AB - C^2) (A + B - r)),
        b^2 = P / (2 (AB - C^2) (A + B + r)),  r = sqrt((B-A)^2 + 4 C^2),

    with P the positivity quantity above.  The rotation angle is
    phi0 = atan2(2C, A - B) / 2, shifted by pi/2 when that direction
    carries the larger eigenvalue of the quadratic form (so that ``phi``
    always points along the MAJOR axis), and folded into [0, pi).  The
    center solves the 2x2 linear system grad(Q) = 0, which is
    nonsingular whenever AB - C^2 > 0.
    """
    c = _sign_normalized(c)
    A, B, C, D, E, F = c.coefficients
    den = A * B - C * C
    pos = _positivity(c)
    if den <= 0.0 or pos <= 0.0:
        raise NotAnEllipseError(
            f"not an ellipse: AB - C^2 = {den}, positivity = {pos}"
        )

    rsq = (B - A) * (B - A) + 4.0 * C * C
    r = math.sqrt(rsq)
    a_sq = pos / (2.0 * den * (A + B - r))
    b_sq = pos / (2.0 * den * (A + B + r))

    # Center: A*x0 + C*y0 = -D/2, C*x0 + B*y0 = -E/2.
    x0 = (C * E - B * D) / (2.0 * den)
    y0 = (C * D - A * E) / (2.0 * den)

    if rsq < _CIRCLE_EPS * (A + B) * (A + B):
        radius = math.sqrt(pos / (2.0 * den * (A + B)))
        return EllipseGeometry(center=(x0, y0), a=radius, b=radius, phi=0.0)

    phi = 0.5 * math.atan2(2.0 * C, A - B)
    cs = math.cos(phi)
    sn = math.sin(phi)
    along = A * cs * cs + 2.0 * C * cs * sn + B * sn * sn
    lam_min = 0.5 * (A + B - r)
    lam_max = 0.5 * (A + B + r)
    if abs(along - lam_max) < abs(along - lam_min):
        phi += 0.5 * math.pi
    phi %= math.pi

    return EllipseGeometry(center=(x0, y0), a=math.sqrt(a_sq), b=math.sqrt(b_sq), phi=phi)


def from_geometry(g: EllipseGeometry) -> Conic:
    """Conic with the given metric data (inverse of :func:`geometry`).

    The output is scaled by a^2 b^2, i.e. the constant coefficient is
    A'*x0^2 + B'*y0^2 + 2*C'*x0*y0 - a^2 b^2.
    """
    cs = math.cos(g.phi)
    sn = math.sin(g.phi)
    a_sq = g.a * g.a
    b_sq = g.b * g.b
    A = b_sq * cs * cs + a_sq * sn * sn
    B = b_sq * sn * sn + a_sq * cs * cs
    C = cs * sn * (b_sq - a_sq)
    x0, y0 = g.center
    D = -2.0 * (A * x0 + C * y0)
    E = -2.0 * (B * y0 + C * x0)
    F = A * x0 * x0 + B * y0 * y0 + 2.0 * C * x0 * y0 - a_sq * b_sq
    return Conic(A, B, C, D, E, F)


def pullback(c: Conic, m: Matrix2, t: Point) -> Conic:
    """Conic of the composition Q(m.p + t), i.e. the preimage curve.

    If points of interest satisfy ``phi(p) = m.p + t`` lying on ``c``,
    the returned conic vanishes exactly on those points ``p``.  Used to
    transport canonical-frame curves back to the input frame.
    """
    (m00, m01), (m10, m11) = m
    tx, ty = t
    A, B, C, D, E, F = c.coefficients
    # Quadratic part: M^T S M with S = [[A, C], [C, B]].
    A2 = m00 * m00 * A + 2.0 * m00 * m10 * C + m10 * m10 * B
    B2 = m01 * m01 * A + 2.0 * m01 * m11 * C + m11 * m11 * B
    C2 = m00 * m01 * A + (m00 * m11 + m01 * m10) * C + m10 * m11 * B
    # Linear part: M^T (2 S t + b).
    u = 2.0 * (A * tx + C * ty) + D
    w = 2.0 * (C * tx + B * ty) + E
    D2 = m00 * u + m10 * w
    E2 = m01 * u + m11 * w
    F2 = evaluate(c, t)
    return Conic(A2, B2, C2, D2, E2, F2)


def proportional(c1: Conic, c2: Conic, rtol: float = 1e-9) -> bool:
    """True when the two coefficient vectors agree up to positive scale.

    Each conic is divided by its largest-magnitude coefficient (with the
    sign fixed so the larger of |A|, |B| is positive), then compared
    coefficient-wise against ``rtol``.
    """

    def normalized(c: Conic) -> tuple[float, ...]:
        coefs = c.coefficients
        lead = max(coefs, key=abs)
        if lead == 0.0:
            raise ValueError("zero conic has no scale")
        anchor = c.A if abs(c.A) >= abs(c.B) else c.B
        scale = abs(lead) if anchor >= 0.0 else -abs(lead)
        return tuple(v / scale for v in coefs)

    n1 = normalized(c1)
    n2 = normalized(c2)
    return all(abs(u - v) <= rtol for u, v in zip(n1, n2))
