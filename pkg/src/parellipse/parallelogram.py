"""Parallelogram modeling and canonical-frame normalization.

Arbitrary vertex input (any order) is normalized by a plane isometry to
the canonical placement

    O = (0, 0),  P = (l, 0),  Q = (d, k),  R = (l + d, k)

with l, k > 0 and d >= 0.  Reflections are permitted: they are
isometries and preserve every length and angle-between-lines quantity
computed downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Isometry",
    "Parallelogram",
    "DiagonalInvariants",
    "ShearMap",
    "NotAParallelogramError",
    "DegenerateParallelogramError",
    "canonicalize",
    "canonical_parallelogram",
    "diagonal_invariants",
    "shear_to_rectangle",
]

Point = tuple[float, float]
Matrix2 = tuple[tuple[float, float], tuple[float, float]]

# Closure / orientation tolerance relative to the point-set diameter, and
# the scale-free zero-area rejection threshold.
_CLOSURE_RTOL = 1e-9
_AREA_RTOL = 1e-12


class NotAParallelogramError(ValueError):
    """No labeling of the four points satisfies parallelogram closure."""


class DegenerateParallelogramError(ValueError):
    """The points form a zero-area (collinear or repeated) configuration."""


@dataclass(frozen=True)
class Isometry:
    """Plane isometry x -> matrix @ x + translation (matrix orthogonal)."""

    matrix: Matrix2
    translation: Point

    def apply(self, p: Point) -> Point:
        (m00, m01), (m10, m11) = self.matrix
        tx, ty = self.translation
        x, y = p
        return (m00 * x + m01 * y + tx, m10 * x + m11 * y + ty)

    def inverse(self) -> "Isometry":
        (m00, m01), (m10, m11) = self.matrix
        tx, ty = self.translation
        # Orthogonal linear part: inverse is the transpose.
        inv: Matrix2 = ((m00, m10), (m01, m11))
        return Isometry(inv, (-(m00 * tx + m10 * ty), -(m01 * tx + m11 * ty)))

    def invert_point(self, p: Point) -> Point:
        return self.inverse().apply(p)

    @property
    def is_reflection(self) -> bool:
        (m00, m01), (m10, m11) = self.matrix
        return (m00 * m11 - m01 * m10) < 0.0


@dataclass(frozen=True)
class Parallelogram:
    """A parallelogram plus the isometry into its canonical frame.

    ``vertices`` holds the original-frame points in canonical label
    order, so ``iso.apply(vertices[i])`` is (0,0), (l,0), (d,k), (l+d,k)
    for i = 0..3.
    """

    vertices: tuple[Point, Point, Point, Point]
    l: float
    k: float
    d: float
    iso: Isometry

    @property
    def canonical_vertices(self) -> tuple[Point, Point, Point, Point]:
        return (
            (0.0, 0.0),
            (self.l, 0.0),
            (self.d, self.k),
            (self.l + self.d, self.k),
        )

    def to_json_dict(self) -> dict[str, object]:
        return {
            "l": self.l,
            "k": self.k,
            "d": self.d,
            "isometry": {
                "matrix": [list(row) for row in self.iso.matrix],
                "translation": list(self.iso.translation),
            },
        }


@dataclass(frozen=True)
class DiagonalInvariants:
    """Squared diagonal lengths and side combinations of a parallelogram.

    ``diag1_sq`` is |OR|^2 = (d+l)^2 + k^2, ``diag2_sq`` is |PQ|^2 =
    (d-l)^2 + k^2; ``side_sq_sum``/``side_sq_diff`` are |OP|^2 +- |OQ|^2,
    i.e. l^2 +- (d^2 + k^2).  ``angle`` is the smallest nonnegative angle
    between the diagonal lines, in (0, pi/2]; it satisfies
    tan(angle) = 2*k*l / |side_sq_diff| whenever the latter is nonzero.
    """

    diag1_sq: float
    diag2_sq: float
    side_sq_sum: float
    side_sq_diff: float
    angle: float


def _dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def canonicalize(p1: Point, p2: Point, p3: Point, p4: Point) -> Parallelogram:
    """Normalize four vertices, in any order, to the canonical frame.

    The labeling is searched over all diagonal pairings and vertex roles;
    among the valid candidates (k > 0, d >= 0) a deterministic preference
    (rotation-only before reflection, then smallest rotation, then
    smallest d) makes the result reproducible and leaves already-canonical
    input fixed under the identity isometry.
    """
    pts = [(float(x), float(y)) for x, y in (p1, p2, p3, p4)]
    diameter = max(_dist(a, b) for i, a in enumerate(pts) for b in pts[i + 1:])
    if diameter <= 0.0:
        raise DegenerateParallelogramError("all four points coincide")
    if any(
        _dist(pts[i], pts[j]) <= 1e-12 * diameter
        for i in range(4)
        for j in range(i + 1, 4)
    ):
        raise DegenerateParallelogramError("vertices are not distinct")

    closure_tol = _CLOSURE_RTOL * diameter
    pairings = []
    for opp in (1, 2, 3):
        rest = [i for i in (1, 2, 3) if i != opp]
        # Diagonal midpoints of a parallelogram coincide.
        mx = pts[0][0] + pts[opp][0] - pts[rest[0]][0] - pts[rest[1]][0]
        my = pts[0][1] + pts[opp][1] - pts[rest[0]][1] - pts[rest[1]][1]
        if math.hypot(mx, my) <= 2.0 * closure_tol:
            pairings.append((opp, rest))
    if not pairings:
        raise NotAParallelogramError(
            "no labeling of the four points satisfies parallelogram closure"
        )

    candidates = []
    index = 0
    for opp, rest in pairings:
        diag_a = (0, opp)
        diag_b = tuple(rest)
        for o_idx, r_idx in (diag_a, diag_a[::-1], diag_b, diag_b[::-1]):
            neighbors = diag_b if o_idx in diag_a else diag_a
            for p_idx, q_idx in (neighbors, neighbors[::-1]):
                o = pts[o_idx]
                p = pts[p_idx]
                q = pts[q_idx]
                ex = (p[0] - o[0], p[1] - o[1])
                side = math.hypot(*ex)
                cs, sn = ex[0] / side, ex[1] / side
                qx = cs * (q[0] - o[0]) + sn * (q[1] - o[1])
                qy = -sn * (q[0] - o[0]) + cs * (q[1] - o[1])
                reflected = qy < 0.0
                # The +0.0 folds any negative zeros for stable serialization.
                if reflected:
                    matrix: Matrix2 = ((cs + 0.0, sn + 0.0), (sn + 0.0, -cs + 0.0))
                    qy = -qy
                else:
                    matrix = ((cs + 0.0, sn + 0.0), (-sn + 0.0, cs + 0.0))
                if qx < -closure_tol:
                    index += 1
                    continue
                l, k, d = side, qy, max(qx, 0.0)
                key = (reflected, abs(math.atan2(sn, cs)), d, l, index)
                candidates.append((key, (o_idx, p_idx, q_idx, r_idx), l, k, d, matrix))
                index += 1

    if not candidates:
        raise NotAParallelogramError("no labeling admits the canonical frame")

    candidates.sort(key=lambda item: item[0])
    _, order, l, k, d, matrix = candidates[0]
    if l * k <= _AREA_RTOL * diameter * diameter:
        raise DegenerateParallelogramError(
            f"area {l * k:.3e} below threshold for diameter {diameter:.3e}"
        )

    o = pts[order[0]]
    (m00, m01), (m10, m11) = matrix
    translation = (-(m00 * o[0] + m01 * o[1]) + 0.0, -(m10 * o[0] + m11 * o[1]) + 0.0)
    iso = Isometry(matrix=matrix, translation=translation)
    vertices = tuple(pts[i] for i in order)
    return Parallelogram(vertices=vertices, l=l, k=k, d=d, iso=iso)


def canonical_parallelogram(l: float, k: float, d: float = 0.0) -> Parallelogram:
    """Parallelogram already in canonical position (identity isometry)."""
    if not (l > 0.0 and k > 0.0 and d >= 0.0):
        raise ValueError(f"need l, k > 0 and d >= 0, got l={l}, k={k}, d={d}")
    return canonicalize((0.0, 0.0), (l, 0.0), (d, k), (l + d, k))


def diagonal_invariants(p: Parallelogram) -> DiagonalInvariants:
    """Diagonal metrics of the parallelogram (isometry-invariant).

    The angle is computed from the diagonal direction vectors via
    atan2(|cross|, |dot|), which lands in (0, pi/2] without any division
    and so also covers the perpendicular-diagonals case.
    """
    l, k, d = p.l, p.k, p.d
    d1 = (l + d, k)
    d2 = (d - l, k)
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    dot = d1[0] * d2[0] + d1[1] * d2[1]
    return DiagonalInvariants(
        diag1_sq=(d + l) ** 2 + k**2,
        diag2_sq=(d - l) ** 2 + k**2,
        side_sq_sum=d**2 + k**2 + l**2,
        side_sq_diff=l**2 - d**2 - k**2,
        angle=math.atan2(abs(cross), abs(dot)),
    )


@dataclass(frozen=True)
class ShearMap:
    """The shear (x, y) -> (x - slope*y, y) and its inverse.

    With slope = d/k it maps the canonical parallelogram onto the
    axis-aligned rectangle with corners (0,0), (l,0), (0,k), (l,k).
    """

    slope: float

    def apply(self, p: Point) -> Point:
        x, y = p
        return (x - self.slope * y, y)

    def invert_point(self, p: Point) -> Point:
        x, y = p
        return (x + self.slope * y, y)


def shear_to_rectangle(p: Parallelogram) -> ShearMap:
    """Affine map flattening the canonical parallelogram to a rectangle."""
    return ShearMap(slope=p.d / p.k)
