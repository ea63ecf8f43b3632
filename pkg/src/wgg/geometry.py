"""Planar primitives: points, diametral disks, tolerances, and predicates.

Coordinates are float64 pairs. All membership predicates are tolerance
based and *locally* scaled: a relative tolerance ``tau_rel`` is applied
against the feature size of the objects being tested (for a diametral
disk, its own diameter). Locally scaled thresholds keep the predicates
meaningful on instances whose features span many orders of magnitude,
which certified tree drawings produce routinely.

The ``scale`` carried by :class:`Tolerance` is the coordinate spread of
the whole instance. It parameterizes absolute constructions (nudge
distances, perturbation radii, working boxes) but never membership tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCirclesError, InvalidGeometryError

__all__ = [
    "GOLDEN_ANGLE",
    "Tolerance",
    "ensure_general_position",
    "DiametralDisk",
    "Violation",
    "as_point",
    "as_points",
    "in_blocking_region",
    "circle_circle_intersections",
    "general_position_check",
    "perturb_points",
    "rotate_points",
    "rotation_with_distinct_x",
    "segments_cross",
]

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
TWO_PI = 2.0 * math.pi

# Irrational multipliers for deterministic, well-spread jitter sequences.
_FRAC_A = (math.sqrt(5.0) - 1.0) / 2.0
_FRAC_B = math.sqrt(2.0) - 1.0


def golden_jitter(key: int, stream: int = 0) -> float:
    """Deterministic value in (-1, 1) derived from an integer key."""
    mult = _FRAC_A if stream == 0 else _FRAC_B
    return 2.0 * ((key * mult) % 1.0) - 1.0


def as_point(value) -> np.ndarray:
    """Coerce ``value`` to a finite (2,) float array."""
    p = np.asarray(value, dtype=float)
    if p.shape != (2,):
        raise InvalidGeometryError(f"expected a planar point, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidGeometryError(f"non-finite coordinates: {p!r}")
    return p


def as_points(values) -> np.ndarray:
    """Coerce ``values`` to a finite (n, 2) float array; n may be zero."""
    pts = np.asarray(values, dtype=float)
    if pts.size == 0:
        return np.empty((0, 2), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise InvalidGeometryError(f"expected an (n, 2) array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise InvalidGeometryError("non-finite coordinates in point array")
    return pts


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance plus the characteristic length of an instance.

    ``tau_rel`` is dimensionless; ``scale`` is the coordinate spread of the
    instance (or 1.0 when the spread is degenerate). ``length`` is the
    absolute resolution ``tau_rel * scale`` used by constructions that need
    a concrete distance, e.g. witness nudges.
    """

    tau_rel: float = 1e-9
    scale: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.tau_rel) and self.tau_rel > 0.0):
            raise InvalidGeometryError(f"tau_rel must be positive, got {self.tau_rel}")
        if not (math.isfinite(self.scale) and self.scale > 0.0):
            raise InvalidGeometryError(f"scale must be positive, got {self.scale}")

    @property
    def length(self) -> float:
        return self.tau_rel * self.scale

    @classmethod
    def for_points(cls, *point_arrays, tau_rel: float = 1e-9) -> "Tolerance":
        """Tolerance whose scale is the coordinate spread of the inputs."""
        stacked = [as_points(a) for a in point_arrays if a is not None]
        stacked = [a for a in stacked if len(a)]
        if not stacked:
            return cls(tau_rel=tau_rel, scale=1.0)
        allpts = np.vstack(stacked)
        spread = float(np.max(np.ptp(allpts, axis=0)))
        return cls(tau_rel=tau_rel, scale=spread if spread > 0.0 else 1.0)


class DiametralDisk:
    """Closed disk whose diameter is the segment between two points.

    A point ``q`` lies in the closed disk exactly when the angle a-q-b is
    at least 90 degrees, i.e. when ``dot(a - q, b - q) <= 0``.
    """

    __slots__ = ("a", "b", "center", "radius_sq", "diameter_sq")

    def __init__(self, a, b):
        self.a = as_point(a)
        self.b = as_point(b)
        d = self.b - self.a
        self.diameter_sq = float(d @ d)
        if self.diameter_sq == 0.0:
            raise InvalidGeometryError("diametral disk endpoints coincide")
        self.center = (self.a + self.b) / 2.0
        self.radius_sq = self.diameter_sq / 4.0

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)

    @property
    def diameter(self) -> float:
        return math.sqrt(self.diameter_sq)

    def power(self, q) -> float:
        """``|q - center|^2 - radius^2``; negative inside, positive outside."""
        q = np.asarray(q, dtype=float)
        d = q - self.center
        return float(d @ d) - self.radius_sq

    def point_at(self, angle: float) -> np.ndarray:
        """Point on the boundary circle at the given angle from the center."""
        r = self.radius
        return self.center + r * np.array([math.cos(angle), math.sin(angle)])

    def strictly_inside(self, q, tol: Tolerance) -> bool:
        band = tol.tau_rel * self.diameter_sq
        return self.power(q) < -band

    def strictly_outside(self, q, tol: Tolerance) -> bool:
        band = tol.tau_rel * self.diameter_sq
        return self.power(q) > band

    def __repr__(self):
        return f"DiametralDisk(a={tuple(self.a)}, b={tuple(self.b)})"


def in_blocking_region(disk: DiametralDisk, q, tol: Tolerance) -> bool:
    """True when ``q`` lies in the closed disk minus its two endpoints.

    The membership test is the sign of ``dot(a - q, b - q)`` with a
    threshold of ``tau_rel`` times the squared diameter, so no square root
    is taken. The closed disk counts, hence boundary points block; a point
    within ``tau_rel * diameter`` of an endpoint counts as that endpoint
    and does not block.
    """
    q = as_point(q)
    a, b = disk.a, disk.b
    len_sq = disk.diameter_sq
    end_sq = (tol.tau_rel * tol.tau_rel) * len_sq
    da = q - a
    if float(da @ da) <= end_sq:
        return False
    db = q - b
    if float(db @ db) <= end_sq:
        return False
    dot = float((a - q) @ (b - q))
    return dot <= tol.tau_rel * len_sq


def circle_circle_intersections(
    d1: DiametralDisk, d2: DiametralDisk, tol: Tolerance
) -> list[np.ndarray]:
    """Intersection points of the two boundary circles.

    Returns zero points for disjoint or nested circles, one point for a
    tangency (the two algebraic solutions are deduplicated under the
    tolerance), and two points otherwise. Identical circles raise
    :class:`DegenerateCirclesError`; callers are expected to perturb.
    """
    c1, c2 = d1.center, d2.center
    r1, r2 = d1.radius, d2.radius
    lam = tol.tau_rel * max(d1.diameter, d2.diameter)
    delta = c2 - c1
    dist = math.hypot(delta[0], delta[1])
    if dist <= lam and abs(r1 - r2) <= lam:
        raise DegenerateCirclesError("circles coincide within tolerance")
    if dist > r1 + r2 + lam:
        return []
    if dist < abs(r1 - r2) - lam:
        return []
    if dist == 0.0:
        return []
    # Radical line: foot at distance m along the center line, offset h.
    m = (r1 * r1 - r2 * r2 + dist * dist) / (2.0 * dist)
    h_sq = r1 * r1 - m * m
    foot = c1 + (m / dist) * delta
    if h_sq <= lam * lam:
        return [foot]
    h = math.sqrt(h_sq)
    perp = np.array([-delta[1], delta[0]]) * (h / dist)
    return [foot + perp, foot - perp]


@dataclass(frozen=True)
class Violation:
    """A general-position defect, identified by point indices."""

    kind: str  # "collinear" or "cocircular"
    indices: tuple[int, ...]


def general_position_check(points, tol: Tolerance | None = None) -> list[Violation]:
    """All collinear triples and cocircular quadruples within tolerance.

    Collinearity is measured as the sine of the spanned angle (the cross
    product normalized by the arm lengths), cocircularity as the distance
    of the fourth point from the circumcircle of the first three relative
    to the quadruple's typical pairwise distance. Quadruples whose first
    triple is already collinear are skipped; the collinear report covers
    them. An empty result means the points are in general position.
    """
    pts = as_points(points)
    n = len(pts)
    if tol is None:
        tol = Tolerance.for_points(pts)
    tau = tol.tau_rel
    out: list[Violation] = []
    if n < 3:
        return out

    x, y = pts[:, 0], pts[:, 1]
    collinear_triples: set[tuple[int, int, int]] = set()
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            ux, uy = x[j] - x[i], y[j] - y[i]
            nu = math.hypot(ux, uy)
            vx = x[i + 1:] - x[i]
            vy = y[i + 1:] - y[i]
            cross = ux * vy - uy * vx
            nv = np.hypot(vx, vy)
            bad = np.nonzero(np.abs(cross) <= tau * nu * nv)[0]
            for off in bad:
                k = i + 1 + int(off)
                if k > j:
                    collinear_triples.add((i, j, k))
    for trip in sorted(collinear_triples):
        out.append(Violation("collinear", trip))

    if n < 4:
        return out

    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            for k in range(j + 1, n - 1):
                if (i, j, k) in collinear_triples:
                    continue
                center, r = _circumcircle(pts[i], pts[j], pts[k])
                if center is None:
                    continue
                scale_local = (
                    math.dist(pts[i], pts[j])
                    + math.dist(pts[i], pts[k])
                    + math.dist(pts[j], pts[k])
                ) / 3.0
                if r > 1e9 * scale_local:
                    continue
                rest = pts[k + 1:]
                dist = np.hypot(rest[:, 0] - center[0], rest[:, 1] - center[1])
                bad = np.nonzero(np.abs(dist - r) <= tau * scale_local)[0]
                for off in bad:
                    ell = k + 1 + int(off)
                    out.append(Violation("cocircular", (i, j, k, ell)))
    return out


def _circumcircle(a, b, c):
    """Center and radius of the circle through three points, or (None, 0)."""
    d = 2.0 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    if d == 0.0:
        return None, 0.0
    bb = float(b @ b - a @ a)
    cc = float(c @ c - a @ a)
    ux = (bb * (c[1] - a[1]) - cc * (b[1] - a[1])) / d
    uy = (cc * (b[0] - a[0]) - bb * (c[0] - a[0])) / d
    center = np.array([ux, uy])
    return center, math.dist(center, a)


def perturb_points(points, radius: float, start_index: int = 0) -> np.ndarray:
    """Move every point by ``radius`` in a deterministic direction.

    Directions follow a Weyl sequence with a quadratic phase term. A plain
    arithmetic progression of angles resonates with symmetric inputs
    (points evenly spaced on a circle can stay cocircular within
    tolerance); the quadratic term removes that structure while keeping
    the perturbation reproducible without random state.
    """
    pts = as_points(points).copy()
    for i in range(len(pts)):
        k = start_index + i
        ang = TWO_PI * ((k * _FRAC_A + k * k * _FRAC_B) % 1.0)
        pts[i, 0] += radius * math.cos(ang)
        pts[i, 1] += radius * math.sin(ang)
    return pts


def ensure_general_position(
    points, tol: Tolerance, radius: float, max_attempts: int = 8
) -> np.ndarray:
    """Perturb deterministically until no degeneracy survives.

    Highly symmetric inputs (lattices, regular polygons) carry thousands
    of exact degeneracies, and any fixed perturbation leaves each of them
    some small chance of landing back inside the tolerance band; the
    retry schedule doubles the radius and shifts the direction sequence
    until the check comes back clean.
    """
    pts = as_points(points)
    for attempt in range(max_attempts):
        moved = perturb_points(pts, radius * 2.0**attempt, start_index=1000 * attempt)
        if not general_position_check(moved, tol):
            return moved
    raise InvalidGeometryError(
        f"could not reach general position within {max_attempts} attempts"
    )


def rotate_points(points, angle: float, about=(0.0, 0.0)) -> np.ndarray:
    pts = as_points(points)
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    origin = as_point(about)
    return (pts - origin) @ rot.T + origin


def rotation_with_distinct_x(points, attempts: int = 37) -> float:
    """An angle whose rotation gives pairwise distinct x coordinates.

    Deterministically scans multiples of the golden angle and returns the
    candidate maximizing the smallest x gap. Raises when every candidate
    leaves two points on a common vertical line (only possible for
    coincident points).
    """
    pts = as_points(points)
    best_angle, best_gap = None, 0.0
    for k in range(attempts):
        ang = k * GOLDEN_ANGLE
        xs = np.sort(rotate_points(pts, ang)[:, 0])
        gap = float(np.min(np.diff(xs))) if len(xs) > 1 else 1.0
        if gap > best_gap:
            best_angle, best_gap = ang, gap
    if best_angle is None or best_gap <= 0.0:
        raise InvalidGeometryError("no rotation separates the x coordinates")
    return best_angle


def segments_cross(p1, p2, p3, p4) -> bool:
    """True when the open segments p1p2 and p3p4 properly cross.

    Shared endpoints and touchings do not count; this is the test used to
    certify that a drawing is non-crossing.
    """
    p1, p2, p3, p4 = (as_point(p) for p in (p1, p2, p3, p4))

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return d1 * d2 < 0.0 and d3 * d4 < 0.0
