"""Decide whether an embedded graph is realizable as a witness Gabriel graph.

The decision procedure builds the union U of the diametral disks of the
required edges. A missing edge rs can be enforced by a witness exactly
when its disk D_rs is not covered by U: any point of D_rs outside U kills
rs without touching a required edge. Free points are searched among a
candidate set (disk center, nudged arrangement-arc midpoints, nudged
circle intersections) with a dense-grid sweep before conceding coverage;
an accepted certificate is always re-checked against the brute-force
oracle, so a tolerance bug can never produce a silently wrong answer.

The same union boundary drives the edge-by-edge removal procedure: a
witness placed just inside a boundary arc of U eliminates precisely the
edge owning that arc, which walks the edge count down to any target.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    DegenerateCirclesError,
    InvalidGeometryError,
    VerificationInternalError,
)
from .geometry import (
    DiametralDisk,
    Tolerance,
    as_points,
    circle_circle_intersections,
    general_position_check,
    in_blocking_region,
)
from .graphs import (
    Edge,
    Instance,
    WitnessGabrielGraph,
    canonical_edges,
    oracle_construct,
)

__all__ = [
    "EmbeddedGraph",
    "BoundaryArc",
    "DiskUnion",
    "WitnessCertificate",
    "RejectionReport",
    "WedgeViolation",
    "union_boundary_arcs",
    "find_free_point",
    "verify_drawing",
    "quick_reject",
    "reduce_edge_count",
]

TWO_PI = 2.0 * math.pi


@dataclass(eq=False)
class EmbeddedGraph:
    """A straight-line graph: vertex coordinates plus a required edge set."""

    vertices: np.ndarray
    edges: frozenset[Edge]

    def __post_init__(self):
        self.vertices = as_points(self.vertices)
        self.edges = canonical_edges(self.edges, len(self.vertices))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def non_edges(self) -> list[Edge]:
        n = self.n
        return [
            (i, j)
            for i in range(n - 1)
            for j in range(i + 1, n)
            if (i, j) not in self.edges
        ]

    def tolerance(self, tau_rel: float = 1e-9) -> Tolerance:
        return Tolerance.for_points(self.vertices, tau_rel=tau_rel)


@dataclass(frozen=True)
class BoundaryArc:
    """Sub-arc (start angle, CCW span) of one disk's boundary circle."""

    disk_index: int
    start: float
    span: float

    def midpoint_angle(self) -> float:
        return self.start + self.span / 2.0


@dataclass(eq=False)
class DiskUnion:
    """A union of diametral disks with the arcs forming its outer boundary."""

    disks: list[DiametralDisk]
    arcs: list[BoundaryArc]
    centers: np.ndarray = field(init=False)
    radii_sq: np.ndarray = field(init=False)
    bands: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.disks:
            self.centers = np.array([d.center for d in self.disks])
            self.radii_sq = np.array([d.radius_sq for d in self.disks])
            diam_sq = np.array([d.diameter_sq for d in self.disks])
        else:
            self.centers = np.empty((0, 2))
            self.radii_sq = np.empty(0)
            diam_sq = np.empty(0)
        self.bands = diam_sq  # multiplied by tau_rel at query time

    def strictly_outside_all(self, q: np.ndarray, tol: Tolerance) -> bool:
        if not self.disks:
            return True
        d = self.centers - q
        power = d[:, 0] ** 2 + d[:, 1] ** 2 - self.radii_sq
        return bool(np.all(power > tol.tau_rel * self.bands))

    def outside_mask(self, qs: np.ndarray, tol: Tolerance) -> np.ndarray:
        """Row mask: which query points are strictly outside every disk."""
        if not self.disks:
            return np.ones(len(qs), dtype=bool)
        dx = qs[:, None, 0] - self.centers[None, :, 0]
        dy = qs[:, None, 1] - self.centers[None, :, 1]
        power = dx * dx + dy * dy - self.radii_sq[None, :]
        return np.all(power > tol.tau_rel * self.bands[None, :], axis=1)


def _split_angles(
    i: int, disks: list[DiametralDisk], tol: Tolerance
) -> list[float]:
    """Angles on circle i where another circle of the collection crosses it.

    Identical circles contribute no split points; the caller decides
    whether coincident disks are an error.
    """
    di = disks[i]
    angles: list[float] = []
    for j, dj in enumerate(disks):
        if j == i:
            continue
        gap = math.dist(di.center, dj.center)
        if gap > di.radius + dj.radius + tol.length:
            continue
        try:
            pts = circle_circle_intersections(di, dj, tol)
        except DegenerateCirclesError:
            continue
        for p in pts:
            angles.append(math.atan2(p[1] - di.center[1], p[0] - di.center[0]) % TWO_PI)
    return sorted(set(angles))


def _subarcs(i: int, angles: list[float]) -> list[BoundaryArc]:
    if not angles:
        return [BoundaryArc(i, 0.0, TWO_PI)]
    arcs = []
    m = len(angles)
    for k in range(m):
        start = angles[k]
        end = angles[(k + 1) % m] if k + 1 < m else angles[0] + TWO_PI
        span = end - start
        if span > 0.0:
            arcs.append(BoundaryArc(i, start, span))
    return arcs


def union_boundary_arcs(disks: list[DiametralDisk], tol: Tolerance | None = None) -> DiskUnion:
    """Boundary of the union of disks as circular arcs.

    Each circle is split at its intersections with every other circle and
    a sub-arc is kept when its midpoint lies strictly outside every other
    disk. Coincident disks raise :class:`DegenerateCirclesError`.
    """
    if not disks:
        raise InvalidGeometryError("union of zero disks has no boundary")
    if tol is None:
        tol = Tolerance.for_points(np.array([d.center for d in disks]))
    for i in range(len(disks) - 1):
        for j in range(i + 1, len(disks)):
            if (
                math.dist(disks[i].center, disks[j].center) <= tol.length
                and abs(disks[i].radius - disks[j].radius) <= tol.length
            ):
                raise DegenerateCirclesError(f"disks {i} and {j} coincide")
    kept: list[BoundaryArc] = []
    for i, di in enumerate(disks):
        for arc in _subarcs(i, _split_angles(i, disks, tol)):
            mid = di.point_at(arc.midpoint_angle())
            if all(
                j == i or disks[j].power(mid) > tol.tau_rel * disks[j].diameter_sq
                for j in range(len(disks))
            ):
                kept.append(arc)
    return DiskUnion(list(disks), kept)


def _union_of_edges(g: EmbeddedGraph, tol: Tolerance) -> DiskUnion:
    disks = [DiametralDisk(g.vertices[i], g.vertices[j]) for i, j in sorted(g.edges)]
    if not disks:
        return DiskUnion([], [])
    return union_boundary_arcs(disks, tol)


def _valid_free_point(
    q: np.ndarray, target: DiametralDisk, union: DiskUnion, tol: Tolerance
) -> bool:
    """Strictly inside the target minus its endpoints, strictly outside U."""
    band = tol.tau_rel * target.diameter_sq
    if target.power(q) >= -band:
        return False
    end_sq = (10.0 * tol.tau_rel) ** 2 * target.diameter_sq
    da = q - target.a
    db = q - target.b
    if float(da @ da) <= end_sq or float(db @ db) <= end_sq:
        return False
    return union.strictly_outside_all(q, tol)


def _candidate_stream(
    target: DiametralDisk, union: DiskUnion, tol: Tolerance, nudge: float
):
    """Candidates in the documented order, cheapest and likeliest first."""
    yield target.center

    # Circles of the arrangement near the target, target's own circle last.
    near: list[DiametralDisk] = [
        d
        for d in union.disks
        if math.dist(d.center, target.center) <= d.radius + target.radius + nudge
    ]
    circles = near + [target]
    band_t = tol.tau_rel * target.diameter_sq
    for i, ci in enumerate(circles):
        for arc in _subarcs(i, _split_angles(i, circles, tol)):
            mid = ci.point_at(arc.midpoint_angle())
            if target.power(mid) > band_t:
                continue
            radial = mid - ci.center
            norm = math.hypot(radial[0], radial[1])
            if norm == 0.0:
                continue
            step = radial * (nudge / norm)
            yield mid - step
            yield mid + step

    # Pairwise circle intersections inside the target, nudged diagonally.
    for i in range(len(circles) - 1):
        for j in range(i + 1, len(circles)):
            try:
                pts = circle_circle_intersections(circles[i], circles[j], tol)
            except DegenerateCirclesError:
                continue
            for p in pts:
                if target.power(p) > band_t:
                    continue
                for sx in (1.0, -1.0):
                    for sy in (1.0, -1.0):
                        yield p + np.array([sx * nudge, sy * nudge])


def find_free_point(
    target: DiametralDisk,
    union: DiskUnion,
    tol: Tolerance,
    nudge: Optional[float] = None,
    grid: int = 64,
) -> Optional[np.ndarray]:
    """A point strictly inside ``target`` (excluding its endpoints) and
    strictly outside every union disk, or None when the search concedes
    that the target is covered.

    Candidates are tried in order: the target center, midpoints of the
    arcs of the circle arrangement clipped to the target (nudged inward
    and outward radially), circle intersection points inside the target
    (nudged in four diagonal directions), and finally a ``grid``-squared
    uniform sweep over the target's bounding box.
    """
    if nudge is None:
        nudge = 10.0 * tol.length
    for cand in _candidate_stream(target, union, tol, nudge):
        if _valid_free_point(cand, target, union, tol):
            return cand
    r = target.radius
    cx, cy = target.center
    axis = np.linspace(-r, r, grid)
    xs, ys = np.meshgrid(cx + axis, cy + axis)
    pts = np.column_stack([xs.ravel(), ys.ravel()])
    d = pts - target.center
    inside = d[:, 0] ** 2 + d[:, 1] ** 2 - target.radius_sq < -tol.tau_rel * target.diameter_sq
    pts = pts[inside]
    if len(pts):
        free = union.outside_mask(pts, tol)
        for q in pts[free]:
            if _valid_free_point(q, target, union, tol):
                return q
    return None


@dataclass(eq=False)
class WitnessCertificate:
    """Witness placements realizing the required edge set, one per non-edge."""

    witnesses: np.ndarray
    per_nonedge: dict[Edge, np.ndarray]

    def __post_init__(self):
        self.witnesses = as_points(self.witnesses)


@dataclass(frozen=True)
class RejectionReport:
    """A non-edge whose diametral disk is covered by the union of edge disks,
    so no witness can remove it without destroying a required edge."""

    nonedge: Edge
    evidence: str


def verify_drawing(
    g: EmbeddedGraph, tol: Tolerance | None = None, grid: int = 64
) -> WitnessCertificate | RejectionReport:
    """Decide realizability of an embedded graph and produce witnesses.

    General-position violations are reported as warnings and the
    computation proceeds, since every predicate stays well defined. An
    accepted certificate is re-checked with the brute-force oracle; a
    mismatch raises :class:`VerificationInternalError`.
    """
    if tol is None:
        tol = g.tolerance()
    _check_distinct_vertices(g, tol)
    violations = general_position_check(g.vertices, tol)
    if violations:
        warnings.warn(
            f"vertices violate general position ({len(violations)} findings); "
            "verification proceeds",
            stacklevel=2,
        )
    union = _union_of_edges(g, tol)
    non_edges = g.non_edges()

    witnesses: list[np.ndarray] = []
    per_nonedge: dict[Edge, np.ndarray] = {}

    # Batch the center candidate: for sparse unions most non-edges resolve here.
    targets = [DiametralDisk(g.vertices[i], g.vertices[j]) for i, j in non_edges]
    pending: list[int] = []
    if targets:
        centers = np.array([t.center for t in targets])
        center_free = union.outside_mask(centers, tol)
        for idx, nonedge in enumerate(non_edges):
            if center_free[idx] and _valid_free_point(centers[idx], targets[idx], union, tol):
                per_nonedge[nonedge] = centers[idx]
                witnesses.append(centers[idx])
            else:
                pending.append(idx)

    for idx in pending:
        nonedge = non_edges[idx]
        free = find_free_point(targets[idx], union, tol, grid=grid)
        if free is None:
            evidence = (
                f"disk of non-edge {nonedge} is covered by the union of "
                f"{len(union.disks)} edge disks: center, nudged arrangement-arc "
                f"midpoints, nudged circle intersections, and a {grid}x{grid} "
                "grid sweep found no free point"
            )
            return RejectionReport(nonedge=nonedge, evidence=evidence)
        per_nonedge[nonedge] = free
        witnesses.append(free)

    wit_arr = np.array(witnesses) if witnesses else np.empty((0, 2))
    check = oracle_construct(Instance(g.vertices, wit_arr), tol)
    if check.edges != g.edges:
        missing = sorted(g.edges - check.edges)
        extra = sorted(check.edges - g.edges)
        raise VerificationInternalError(
            f"certificate failed the oracle self-check (missing={missing}, extra={extra})"
        )
    return WitnessCertificate(wit_arr, per_nonedge)


def _check_distinct_vertices(g: EmbeddedGraph, tol: Tolerance) -> None:
    pts = g.vertices
    for i in range(len(pts) - 1):
        d = pts[i + 1:] - pts[i]
        close = np.nonzero(d[:, 0] ** 2 + d[:, 1] ** 2 <= tol.length**2)[0]
        if len(close):
            j = i + 1 + int(close[0])
            raise InvalidGeometryError(f"vertices {i} and {j} coincide within tolerance")


@dataclass(frozen=True)
class WedgeViolation:
    """Vertex inside a triangle of two incident edges but not adjacent to
    the shared vertex; certifies that no witness set realizes the graph."""

    vertex: int
    hub: int
    arms: tuple[int, int]


def quick_reject(g: EmbeddedGraph, tol: Tolerance | None = None) -> Optional[WedgeViolation]:
    """Fast necessary-condition filter run before full verification.

    For incident required edges ab and bc, every vertex inside triangle abc
    must be adjacent to b. The check is sound but incomplete: a violation
    certifies non-realizability, silence proves nothing.
    """
    if tol is None:
        tol = g.tolerance()
    pts = g.vertices
    n = g.n
    neighbors: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in g.edges:
        neighbors[i].append(j)
        neighbors[j].append(i)
    for b in range(n):
        nb = sorted(neighbors[b])
        for ai in range(len(nb) - 1):
            for ci in range(ai + 1, len(nb)):
                a, c = nb[ai], nb[ci]
                for p in range(n):
                    if p in (a, b, c):
                        continue
                    if not _strictly_inside_triangle(pts[a], pts[b], pts[c], pts[p], tol):
                        continue
                    if ((p, b) if p < b else (b, p)) not in g.edges:
                        return WedgeViolation(vertex=p, hub=b, arms=(a, c))
    return None


def _strictly_inside_triangle(a, b, c, p, tol: Tolerance) -> bool:
    margin = 10.0 * tol.tau_rel

    def side(u, v):
        ux, uy = v[0] - u[0], v[1] - u[1]
        px, py = p[0] - u[0], p[1] - u[1]
        cross = ux * py - uy * px
        norm = math.hypot(ux, uy) * math.hypot(px, py)
        if norm == 0.0:
            return 0.0
        return cross / norm

    s1, s2, s3 = side(a, b), side(b, c), side(c, a)
    if min(s1, s2, s3) > margin:
        return True
    if max(s1, s2, s3) < -margin:
        return True
    return False


def reduce_edge_count(
    vertices, target_count: int, tol: Tolerance | None = None
) -> tuple[np.ndarray, WitnessGabrielGraph]:
    """Walk the edge count down to ``target_count``, one witness per edge.

    Starting from the complete graph (no witnesses), each round places a
    witness just inside a boundary arc of the union of the surviving edge
    disks. Such a point lies in exactly one disk, so exactly one edge
    disappears; the brute-force oracle asserts that after every placement,
    retrying with other arcs when a placement fails.
    """
    pts = as_points(vertices)
    n = len(pts)
    total = n * (n - 1) // 2
    if not 0 <= target_count <= total:
        raise InvalidGeometryError(
            f"target {target_count} outside 0..{total} for {n} vertices"
        )
    if tol is None:
        tol = Tolerance.for_points(pts)
    nudge = 10.0 * tol.length

    witnesses: list[np.ndarray] = []

    def current() -> WitnessGabrielGraph:
        wit = np.array(witnesses) if witnesses else np.empty((0, 2))
        return oracle_construct(Instance(pts, wit), tol)

    graph = current()
    while graph.edge_count > target_count:
        edge_order = graph.sorted_edges()
        disks = [DiametralDisk(pts[i], pts[j]) for i, j in edge_order]
        union = union_boundary_arcs(disks, tol)
        arcs_by_disk: dict[int, list[BoundaryArc]] = {}
        for arc in union.arcs:
            arcs_by_disk.setdefault(arc.disk_index, []).append(arc)

        placed = False
        for disk_idx in sorted(arcs_by_disk):
            owner = edge_order[disk_idx]
            disk = disks[disk_idx]
            for arc in arcs_by_disk[disk_idx]:
                mid = disk.point_at(arc.midpoint_angle())
                inward = disk.center - mid
                norm = math.hypot(inward[0], inward[1])
                if norm == 0.0:
                    continue
                cand = mid + inward * (nudge / norm)
                witnesses.append(cand)
                after = current()
                removed = graph.edges - after.edges
                gained = after.edges - graph.edges
                if removed == {owner} and not gained:
                    graph = after
                    placed = True
                    break
                witnesses.pop()
            if placed:
                break
        if not placed:
            raise VerificationInternalError(
                f"no boundary arc removed a single edge at {graph.edge_count} edges"
            )
    wit_arr = np.array(witnesses) if witnesses else np.empty((0, 2))
    return wit_arr, graph
