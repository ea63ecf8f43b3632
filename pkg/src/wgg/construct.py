"""The two fast construction paths, each checked against the oracle.

First path: for a vertex p, every witness q contributes the open
half-plane bounded by the line through q perpendicular to pq and
containing p. A vertex r is adjacent to p exactly when r lies in the
interior of the intersection of those half-planes, because
``dot(r - q, p - q)`` is the same bilinear form as the diametral-disk
test. The intersection is materialized by clipping a working box eight
times the instance scale, large enough that its artificial sides can
never decide a query about an instance point.

Second path: the nearest witness to the midpoint of pr decides the edge.
A k-d tree over the witnesses stands in for their Voronoi diagram, which
the algorithm only ever uses as a nearest-site oracle.

Both paths resolve anything within tolerance of a region boundary, and
any pair involving a vertex with a nearby witness, through the direct
dot-product predicate, so edge semantics have a single source of truth.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.spatial import cKDTree

from .errors import ConsistencyError, InvalidGeometryError
from .geometry import Tolerance, as_point, as_points
from .graphs import (
    Instance,
    WitnessGabrielGraph,
    _blocking_mask,
    edge_test_midpoint,
    oracle_construct,
    random_instance,
)

__all__ = [
    "HalfPlane",
    "FeasibleRegion",
    "NearestWitnessIndex",
    "feasible_region",
    "construct_halfplane",
    "construct_voronoi",
    "BenchRow",
    "bench_constructions",
]

# Vertices with a witness closer than this fraction of the instance scale
# get the direct predicate for all their pairs; the polygon shortcut is
# only trusted where every witness line has a thin tolerance band.
_CLOSE_WITNESS_FRACTION = 1e-3

# Distance to the region boundary below which membership falls back to
# the direct predicate. Sized to dominate the tolerance band of any
# witness at least _CLOSE_WITNESS_FRACTION * scale away from the vertex.
_BOUNDARY_BAND_FRACTION = 1e-5


@dataclass(eq=False)
class HalfPlane:
    """Open half-plane through ``anchor`` containing ``anchor + toward``."""

    anchor: np.ndarray
    toward: np.ndarray

    @classmethod
    def from_witness(cls, p: np.ndarray, q: np.ndarray) -> "HalfPlane":
        toward = p - q
        if float(toward @ toward) == 0.0:
            raise InvalidGeometryError("witness coincides with the vertex")
        return cls(anchor=q.copy(), toward=toward)

    def value(self, x: np.ndarray) -> float:
        """Positive inside, zero on the boundary line."""
        return float((x - self.anchor) @ self.toward)


class FeasibleRegion:
    """Convex region of points r for which the edge pr survives every witness.

    Holds both the clipped polygon and the generating half-planes; queries
    that land near the polygon boundary, or that involve a witness close to
    either endpoint, are answered by the exact predicate instead.
    """

    def __init__(self, p, witnesses, tol: Tolerance):
        self.p = as_point(p)
        self.tol = tol
        self.witnesses = as_points(witnesses)
        self.halfplanes = [
            HalfPlane.from_witness(self.p, q)
            for q in self.witnesses
            if float((q - self.p) @ (q - self.p)) > tol.length**2
        ]
        self.polygon = _clip_box(self.p, self.halfplanes, tol)
        self._band = _BOUNDARY_BAND_FRACTION * tol.scale

    @property
    def is_empty(self) -> bool:
        return self.polygon is None

    def contains(self, r) -> bool:
        """Exact membership: equals the oracle's edge decision for (p, r)."""
        r = as_point(r)
        if self.polygon is None:
            return self._contains_direct(r)
        verdict, clearance = _polygon_side(self.polygon, r)
        if clearance < self._band:
            return self._contains_direct(r)
        return verdict

    def _contains_direct(self, r: np.ndarray) -> bool:
        if len(self.witnesses) == 0:
            return True
        return not bool(
            np.any(_blocking_mask(self.p, r, self.witnesses, self.tol.tau_rel))
        )


def _clip_box(p: np.ndarray, halfplanes, tol: Tolerance) -> Optional[np.ndarray]:
    """Intersect a working box centered on p with the given half-planes.

    Returns the CCW polygon, or None when the interior is empty. The box
    side is eight times the instance scale, so instance points stay far
    from its artificial edges.
    """
    h = 4.0 * tol.scale
    poly = [
        p + np.array([-h, -h]),
        p + np.array([h, -h]),
        p + np.array([h, h]),
        p + np.array([-h, h]),
    ]
    for hp in halfplanes:
        if not poly:
            break
        vals = [hp.value(v) for v in poly]
        if all(v >= 0.0 for v in vals):
            continue
        new: list[np.ndarray] = []
        m = len(poly)
        for i in range(m):
            cur, nxt = poly[i], poly[(i + 1) % m]
            vc, vn = vals[i], vals[(i + 1) % m]
            if vc >= 0.0:
                new.append(cur)
            if (vc > 0.0 > vn) or (vn > 0.0 > vc):
                t = vc / (vc - vn)
                new.append(cur + t * (nxt - cur))
        poly = new
    if len(poly) < 3:
        return None
    return np.array(poly)


def _polygon_side(poly: np.ndarray, r: np.ndarray) -> tuple[bool, float]:
    """(inside?, distance to the nearest boundary line) for a CCW polygon."""
    a = poly
    b = np.roll(poly, -1, axis=0)
    e = b - a
    norms = np.hypot(e[:, 0], e[:, 1])
    cross = e[:, 0] * (r[1] - a[:, 1]) - e[:, 1] * (r[0] - a[:, 0])
    signed = cross / norms
    return bool(np.all(signed > 0.0)), float(np.min(np.abs(signed)))


def feasible_region(p, witnesses, tol: Tolerance | None = None) -> FeasibleRegion:
    """Region of survivable co-edge endpoints for vertex p; may be empty.

    An empty interior is reported through ``is_empty``, not an error.
    """
    wit = as_points(witnesses)
    if tol is None:
        pts = [as_point(p)]
        tol = Tolerance.for_points(np.array(pts), wit)
    return FeasibleRegion(p, wit, tol)


def _close_witness_vertices(pts: np.ndarray, wit: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Boolean mask of vertices with a witness nearer than the safety radius."""
    n = len(pts)
    if len(wit) == 0:
        return np.zeros(n, dtype=bool)
    radius = _CLOSE_WITNESS_FRACTION * tol.scale
    tree = cKDTree(wit)
    d, _ = tree.query(pts, k=1)
    return np.asarray(d) <= radius


def construct_halfplane(inst: Instance, tol: Tolerance | None = None) -> WitnessGabrielGraph:
    """Witness Gabriel graph via per-vertex half-plane intersections."""
    if tol is None:
        tol = inst.tolerance()
    pts, wit = inst.vertices, inst.witnesses
    n = len(pts)
    close = _close_witness_vertices(pts, wit, tol)
    edges = set()
    for i in range(n - 1):
        if close[i]:
            region = None
        else:
            region = feasible_region(pts[i], wit, tol)
        for j in range(i + 1, n):
            if region is None or close[j]:
                blocked = len(wit) > 0 and bool(
                    np.any(_blocking_mask(pts[i], pts[j], wit, tol.tau_rel))
                )
                present = not blocked
            else:
                present = region.contains(pts[j])
            if present:
                edges.add((i, j))
    return WitnessGabrielGraph(pts, frozenset(edges))


class NearestWitnessIndex:
    """Immutable nearest-neighbor index over the witness set.

    Ties are broken toward the lowest witness index. Queries can exclude
    witnesses coincident with the two endpoints of the pair under test,
    which is exactly the exemption the blocking predicate applies.
    """

    def __init__(self, witnesses):
        self.witnesses = as_points(witnesses)
        self._tree = cKDTree(self.witnesses) if len(self.witnesses) else None

    def __len__(self) -> int:
        return len(self.witnesses)

    def nearest(self, q) -> tuple[float, int]:
        if self._tree is None:
            raise InvalidGeometryError("index over an empty witness set")
        d, idx = self._tree.query(as_point(q), k=1)
        return float(d), int(idx)

    def nearest_excluding_endpoints(
        self, q, p, r, tol: Tolerance
    ) -> Optional[tuple[float, int]]:
        """Nearest witness to q that is not endpoint-coincident with p or r.

        Returns None when every witness is exempt. The exemption radius is
        ``tau_rel`` times the pair's own length, matching the predicate.
        """
        if self._tree is None:
            return None
        q = as_point(q)
        p = as_point(p)
        r = as_point(r)
        seg = r - p
        exempt_sq = (tol.tau_rel * tol.tau_rel) * float(seg @ seg)
        w = len(self.witnesses)
        k = min(4, w)
        while True:
            d, idx = self._tree.query(q, k=k)
            d = np.atleast_1d(d)
            idx = np.atleast_1d(idx)
            for pos in range(len(idx)):
                cand = self.witnesses[idx[pos]]
                da = cand - p
                db = cand - r
                if float(da @ da) <= exempt_sq or float(db @ db) <= exempt_sq:
                    continue
                best_d, best_i = float(d[pos]), int(idx[pos])
                # Deterministic tie-break: lowest index at equal distance.
                for pos2 in range(pos + 1, len(idx)):
                    if float(d[pos2]) != best_d:
                        break
                    cand2 = self.witnesses[idx[pos2]]
                    da2 = cand2 - p
                    db2 = cand2 - r
                    if float(da2 @ da2) <= exempt_sq or float(db2 @ db2) <= exempt_sq:
                        continue
                    best_i = min(best_i, int(idx[pos2]))
                return best_d, best_i
            if k == w:
                return None
            k = min(2 * k, w)


def construct_voronoi(inst: Instance, tol: Tolerance | None = None) -> WitnessGabrielGraph:
    """Witness Gabriel graph via nearest-witness queries at edge midpoints."""
    if tol is None:
        tol = inst.tolerance()
    pts, wit = inst.vertices, inst.witnesses
    n = len(pts)
    index = NearestWitnessIndex(wit)
    edges = set()
    for i in range(n - 1):
        for j in range(i + 1, n):
            p, r = pts[i], pts[j]
            mid = (p + r) / 2.0
            hit = index.nearest_excluding_endpoints(mid, p, r, tol) if len(index) else None
            if hit is None:
                edges.add((i, j))
            elif edge_test_midpoint(p, r, hit[0], tol):
                edges.add((i, j))
    return WitnessGabrielGraph(pts, frozenset(edges))


_ALGORITHMS: dict[str, Callable[[Instance, Optional[Tolerance]], WitnessGabrielGraph]] = {
    "brute": oracle_construct,
    "halfplane": construct_halfplane,
    "voronoi": construct_voronoi,
}


def construction_algorithm(name: str):
    try:
        return _ALGORITHMS[name]
    except KeyError:
        raise InvalidGeometryError(
            f"unknown algorithm {name!r}; expected one of {sorted(_ALGORITHMS)}"
        ) from None


@dataclass(frozen=True)
class BenchRow:
    algorithm: str
    n: int
    w: int
    trial: int
    milliseconds: float
    edges: int


def bench_constructions(
    sizes: list[tuple[int, int]], trials: int, seed: int
) -> list[BenchRow]:
    """Time all three construction paths on seeded random instances.

    Every trial asserts exact edge-set agreement between the algorithms;
    a disagreement raises :class:`ConsistencyError` with the offending
    instance serialized into the message.
    """
    rows: list[BenchRow] = []
    for size_idx, (n, w) in enumerate(sizes):
        if n < 1 or w < 0:
            raise InvalidGeometryError(f"sizes must have n >= 1 and w >= 0, got {(n, w)}")
        for trial in range(trials):
            rng = np.random.default_rng([int(seed), size_idx, trial])
            inst = random_instance(n, w, rng, label=f"bench-n{n}-w{w}-t{trial}")
            tol = inst.tolerance()
            results = {}
            for name, fn in _ALGORITHMS.items():
                t0 = time.perf_counter()
                g = fn(inst, tol)
                ms = (time.perf_counter() - t0) * 1000.0
                results[name] = g
                rows.append(BenchRow(name, n, w, trial, ms, g.edge_count))
            ref = results["brute"].edges
            for name, g in results.items():
                if g.edges != ref:
                    from .fileio import instance_to_json

                    raise ConsistencyError(
                        f"{name} disagrees with brute force on instance "
                        f"{inst.label}: {instance_to_json(inst)}"
                    )
    return rows


def median_milliseconds(rows: list[BenchRow]) -> dict[tuple[str, int, int], float]:
    """Median wall-clock per (algorithm, n, w) across trials."""
    groups: dict[tuple[str, int, int], list[float]] = {}
    for row in rows:
        groups.setdefault((row.algorithm, row.n, row.w), []).append(row.milliseconds)
    return {key: float(np.median(vals)) for key, vals in groups.items()}
