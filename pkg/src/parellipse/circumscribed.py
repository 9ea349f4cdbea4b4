"""The one-parameter family of ellipses through the parallelogram vertices.

In the canonical frame the family member at parameter u is

    k u x^2 + k y^2 - 2 u d x y - k l u x + (u d (l + d) - k^2) y = 0,

an ellipse through all four vertices for 0 < u < k^2/d^2 (all u > 0 when
d = 0, in which case the family contains the circumcircle at u = 1).
Eccentricity is minimized at u = k^2 / (k^2 + 2 d^2), where

    1 - b^2/a^2 = 2 d (sqrt(d^2 + k^2) - d) / k^2,

notably independent of l.

A parallelogram is *bielliptic* when its minimal-eccentricity inscribed
and circumscribed ellipses share the same eccentricity.  That happens
exactly when the square of one diagonal length equals twice the square
of one side length, equivalently when one of

    k^2 + d^2 - 2 d l - l^2 = 0        (diagonal vs. the slant side)
    k^2 + d^2 + 2 d l - l^2 = 0        (diagonal vs. the base side)

holds; a third candidate condition, 2 d^2 + k^2 = 2 d sqrt(d^2 + k^2),
forces k = 0 and can never fire.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conic import Conic, EllipseGeometry, geometry, is_ellipse, relative_residual
from .inscribed import min_ratio_sq as inscribed_min_ratio_sq
from .parallelogram import Parallelogram

__all__ = [
    "CircumscribedEllipse",
    "BiellipticVerdict",
    "DiagonalSideWitness",
    "InconsistentVerdictError",
    "u_interval",
    "circumscribed_conic",
    "min_eccentricity_u",
    "min_ecc2_circumscribed",
    "minimal_eccentricity_circumellipse",
    "vertex_residuals",
    "bielliptic_verdict",
    "bielliptic_conditions",
]

BIELLIPTIC_TOL = 1e-9


class InconsistentVerdictError(RuntimeError):
    """The three bielliptic characterizations disagreed at tolerance."""


@dataclass(frozen=True)
class CircumscribedEllipse:
    """One member of the circumscribing family, in the canonical frame."""

    u: float
    conic: Conic
    geometry: EllipseGeometry


@dataclass(frozen=True)
class DiagonalSideWitness:
    """A diagonal whose squared length is twice a squared side length."""

    diagonal: str
    side: str
    diagonal_sq: float
    side_sq: float


@dataclass(frozen=True)
class BiellipticVerdict:
    """Outcome of the bielliptic test with all three characterizations.

    ``matched_condition`` is "base" when the diagonal pairs with the base
    side (length l), "slant" when it pairs with the slant side (length
    sqrt(d^2 + k^2)), or None.
    """

    is_bielliptic: bool
    e2_inscribed: float
    e2_circumscribed: float
    matched_condition: str | None
    witness: DiagonalSideWitness | None

    def to_json_dict(self) -> dict[str, object]:
        witness = None
        if self.witness is not None:
            witness = {
                "diagonal": self.witness.diagonal,
                "side": self.witness.side,
                "diagonal_sq": self.witness.diagonal_sq,
                "side_sq": self.witness.side_sq,
            }
        return {
            "is_bielliptic": self.is_bielliptic,
            "e2_inscribed": self.e2_inscribed,
            "e2_circumscribed": self.e2_circumscribed,
            "matched_condition": self.matched_condition,
            "witness": witness,
        }


def u_interval(p: Parallelogram) -> tuple[float, float]:
    """Open parameter interval of the family; (0, inf) for rectangles."""
    if p.d == 0.0:
        return (0.0, math.inf)
    return (0.0, p.k**2 / p.d**2)


def circumscribed_conic(p: Parallelogram, u: float) -> CircumscribedEllipse:
    """The circumscribing family member at parameter u."""
    lo, hi = u_interval(p)
    if not lo < u < hi:
        raise ValueError(f"family parameter u={u} outside ({lo}, {hi})")
    l, k, d = p.l, p.k, p.d
    conic = Conic(
        A=k * u,
        B=k,
        C=-u * d,
        D=-k * l * u,
        E=u * d * (l + d) - k**2,
        F=0.0,
    )
    if not is_ellipse(conic):
        raise AssertionError(f"family member at u={u} failed the ellipse test")
    return CircumscribedEllipse(u=u, conic=conic, geometry=geometry(conic))


def min_eccentricity_u(p: Parallelogram) -> float:
    """Parameter of the minimal-eccentricity circumscribed ellipse.

    u = k^2 / (k^2 + 2 d^2); equals 1 for a rectangle (the circumcircle).
    """
    return p.k**2 / (p.k**2 + 2.0 * p.d**2)


def min_ecc2_circumscribed(p: Parallelogram) -> float:
    """Closed-form 1 - b^2/a^2 of the minimal circumscribed ellipse.

    2 d (sqrt(d^2 + k^2) - d) / k^2; independent of l.
    """
    s = math.hypot(p.d, p.k)
    return 2.0 * p.d * (s - p.d) / p.k**2


def minimal_eccentricity_circumellipse(p: Parallelogram) -> CircumscribedEllipse:
    """The unique circumscribed ellipse of minimal eccentricity."""
    return circumscribed_conic(p, min_eccentricity_u(p))


def vertex_residuals(p: Parallelogram, ell: CircumscribedEllipse) -> list[float]:
    """Curve-membership residual of each canonical vertex."""
    return [relative_residual(ell.conic, v) for v in p.canonical_vertices]


def bielliptic_conditions(p: Parallelogram) -> tuple[float, float, float]:
    """The three algebraic condition values (slant, base, degenerate).

    The first two vanish exactly on bielliptic parallelograms; the third
    can only vanish as k -> 0 and is reported for diagnostics.
    """
    l, k, d = p.l, p.k, p.d
    slant = k**2 + d**2 - 2.0 * d * l - l**2
    base = k**2 + d**2 + 2.0 * d * l - l**2
    degenerate = 2.0 * d**2 + k**2 - 2.0 * d * math.hypot(d, k)
    return slant, base, degenerate


def _find_witness(p: Parallelogram, tol_abs: float) -> DiagonalSideWitness | None:
    l, k, d = p.l, p.k, p.d
    diagonals = (("OR", (d + l) ** 2 + k**2), ("PQ", (d - l) ** 2 + k**2))
    sides = (("OP", l**2), ("OQ", d**2 + k**2))
    for diag_name, diag_sq in diagonals:
        for side_name, side_sq in sides:
            if abs(diag_sq - 2.0 * side_sq) < tol_abs:
                return DiagonalSideWitness(
                    diagonal=diag_name,
                    side=side_name,
                    diagonal_sq=diag_sq,
                    side_sq=side_sq,
                )
    return None


def bielliptic_verdict(p: Parallelogram, tol: float = BIELLIPTIC_TOL) -> BiellipticVerdict:
    """Decide biellipticity three ways and require the routes to agree.

    Compares the closed-form minimal e2 of the two families, evaluates
    the two algebraic conditions at the scale of d^2 + k^2 + l^2, and
    searches for a diagonal/side length witness.  Any disagreement
    raises InconsistentVerdictError (unreachable for well-conditioned
    input; the routes are algebraically equivalent).
    """
    e2_inscribed = 1.0 - inscribed_min_ratio_sq(p)
    e2_circumscribed = min_ecc2_circumscribed(p)
    ecc_match = abs(e2_inscribed - e2_circumscribed) < tol

    scale = p.d**2 + p.k**2 + p.l**2
    slant, base, _ = bielliptic_conditions(p)
    matched: str | None = None
    if abs(base) < tol * scale:
        matched = "base"
    elif abs(slant) < tol * scale:
        matched = "slant"

    witness = _find_witness(p, tol * scale)

    votes = (ecc_match, matched is not None, witness is not None)
    if len(set(votes)) != 1:
        raise InconsistentVerdictError(
            f"bielliptic routes disagree: eccentricity={votes[0]}, "
            f"algebraic={votes[1]}, witness={votes[2]} "
            f"(l={p.l}, k={p.k}, d={p.d})"
        )

    return BiellipticVerdict(
        is_bielliptic=ecc_match,
        e2_inscribed=e2_inscribed,
        e2_circumscribed=e2_circumscribed,
        matched_condition=matched,
        witness=witness,
    )
