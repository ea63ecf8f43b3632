"""Graph model, the brute-force oracle, and the k-witness generalization.

The oracle here is the ground truth every other construction path in the
package is tested against: an edge between two vertices survives exactly
when no witness lies in their closed diametral disk minus its endpoints.
Witnesses coincident with a vertex (within tolerance of it) are treated
as that vertex for the disks it bounds, so taking the witnesses equal to
the vertices reproduces the classical Gabriel graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidGeometryError
from .geometry import DiametralDisk, Tolerance, as_point, as_points, in_blocking_region

__all__ = [
    "WitnessGabrielGraph",
    "Instance",
    "canonical_edges",
    "oracle_construct",
    "edge_test_midpoint",
    "construct_k_gabriel",
    "labeled_isomorphic",
    "random_instance",
]

Edge = tuple[int, int]


def canonical_edges(edges: Iterable, n: int) -> frozenset[Edge]:
    """Normalize to a frozenset of (i, j) pairs with 0 <= i < j < n."""
    out = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if i == j:
            raise InvalidGeometryError(f"self-loop on vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidGeometryError(f"edge ({i}, {j}) out of range for n={n}")
        out.add((i, j) if i < j else (j, i))
    return frozenset(out)


@dataclass(eq=False)
class WitnessGabrielGraph:
    """Vertices with an undirected edge set over their indices."""

    vertices: np.ndarray
    edges: frozenset[Edge]

    def __post_init__(self):
        self.vertices = as_points(self.vertices)
        self.edges = canonical_edges(self.edges, len(self.vertices))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)


@dataclass(eq=False)
class Instance:
    """A vertex set P and a witness set W, the unit everything consumes."""

    vertices: np.ndarray
    witnesses: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))
    label: Optional[str] = None

    def __post_init__(self):
        self.vertices = as_points(self.vertices)
        self.witnesses = as_points(self.witnesses)
        if len(self.vertices) == 0:
            raise InvalidGeometryError("an instance needs at least one vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def tolerance(self, tau_rel: float = 1e-9) -> Tolerance:
        return Tolerance.for_points(self.vertices, self.witnesses, tau_rel=tau_rel)


def _blocking_mask(a: np.ndarray, b: np.ndarray, wit: np.ndarray, tau: float) -> np.ndarray:
    """Vectorized form of :func:`in_blocking_region` over a witness array.

    Kept in exact arithmetic lockstep with the scalar predicate so the two
    can never disagree.
    """
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    len_sq = dx * dx + dy * dy
    end_sq = (tau * tau) * len_sq
    qa_x = wit[:, 0] - a[0]
    qa_y = wit[:, 1] - a[1]
    qb_x = wit[:, 0] - b[0]
    qb_y = wit[:, 1] - b[1]
    near_a = qa_x * qa_x + qa_y * qa_y <= end_sq
    near_b = qb_x * qb_x + qb_y * qb_y <= end_sq
    dots = (-qa_x) * (-qb_x) + (-qa_y) * (-qb_y)
    return (dots <= tau * len_sq) & ~near_a & ~near_b


def oracle_construct(inst: Instance, tol: Tolerance | None = None) -> WitnessGabrielGraph:
    """Brute-force witness Gabriel graph; the testing oracle for everything.

    Checks every vertex pair against every witness in O(n^2 w) time. With
    no witnesses the result is the complete graph.
    """
    if tol is None:
        tol = inst.tolerance()
    pts, wit = inst.vertices, inst.witnesses
    n = len(pts)
    edges = set()
    if len(wit) == 0:
        edges = {(i, j) for i in range(n) for j in range(i + 1, n)}
        return WitnessGabrielGraph(pts, frozenset(edges))
    for i in range(n - 1):
        for j in range(i + 1, n):
            if not bool(np.any(_blocking_mask(pts[i], pts[j], wit, tol.tau_rel))):
                edges.add((i, j))
    return WitnessGabrielGraph(pts, frozenset(edges))


def edge_test_midpoint(
    p, r, nearest_witness_distance: float, tol: Tolerance | None = None
) -> bool:
    """Decide edge pr from the witness distance at the segment midpoint.

    ``nearest_witness_distance`` must be the distance from midpoint(p, r)
    to the nearest witness, excluding witnesses coincident with p or r.
    The edge survives when that distance strictly exceeds half the segment
    length; equality means a boundary witness, which blocks.
    """
    p = as_point(p)
    r = as_point(r)
    if tol is None:
        tol = Tolerance.for_points(np.array([p, r]))
    d = r - p
    len_sq = float(d @ d)
    if len_sq == 0.0:
        raise InvalidGeometryError("midpoint test needs two distinct endpoints")
    near_sq = nearest_witness_distance * nearest_witness_distance
    return near_sq - len_sq / 4.0 > tol.tau_rel * len_sq


def dedupe_points(points: np.ndarray, radius: float) -> np.ndarray:
    """Drop points within ``radius`` of an earlier point, keeping input order."""
    pts = as_points(points)
    kept: list[np.ndarray] = []
    r_sq = radius * radius
    for p in pts:
        if all((p - q) @ (p - q) > r_sq for q in kept):
            kept.append(p)
    return np.array(kept) if kept else np.empty((0, 2))


def construct_k_gabriel(
    inst: Instance, k: int, tol: Tolerance | None = None
) -> WitnessGabrielGraph:
    """Witness k-Gabriel graph: an edge survives while its blocking-witness
    count stays below ``k``.

    Duplicate witnesses (within the instance resolution) are counted once;
    repeated input points are a data artifact, not multiplicity. ``k = 1``
    reproduces :func:`oracle_construct` exactly, and any ``k`` larger than
    the witness count yields the complete graph.
    """
    if int(k) != k or k < 1:
        raise InvalidGeometryError(f"witness threshold k must be a positive integer, got {k}")
    k = int(k)
    if tol is None:
        tol = inst.tolerance()
    pts = inst.vertices
    wit = dedupe_points(inst.witnesses, tol.length)
    n = len(pts)
    edges = set()
    for i in range(n - 1):
        for j in range(i + 1, n):
            if len(wit) == 0:
                count = 0
            else:
                count = int(np.count_nonzero(_blocking_mask(pts[i], pts[j], wit, tol.tau_rel)))
            if count < k:
                edges.add((i, j))
    return WitnessGabrielGraph(pts, frozenset(edges))


def labeled_isomorphic(g1: WitnessGabrielGraph, g2: WitnessGabrielGraph) -> bool:
    """Edge-set equality under the identity labeling of the vertices."""
    if g1.n != g2.n:
        raise InvalidGeometryError(f"vertex counts differ: {g1.n} vs {g2.n}")
    return g1.edges == g2.edges


def random_instance(
    n: int, w: int, seed, label: Optional[str] = None, scale: float = 1.0
) -> Instance:
    """Uniform random instance in a square, reproducible from the seed.

    ``seed`` may be anything accepted by ``numpy.random.default_rng``,
    including an existing generator.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    pts = rng.random((n, 2)) * scale
    wit = rng.random((w, 2)) * scale
    return Instance(pts, wit, label=label)
