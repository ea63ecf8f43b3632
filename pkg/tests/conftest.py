"""Shared test helpers: independent oracles and enumeration utilities.

The oracles here deliberately avoid reusing the library's fast paths:
Delaunay membership comes from brute-force circumcircle enumeration, the
spanning tree from scipy's csgraph, and tree isomorphism classes from a
canonical-encoding dedupe over all parent arrays.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.sparse.csgraph import minimum_spanning_tree as _scipy_mst

from wgg.drawings import Tree


def brute_delaunay_edges(points: np.ndarray) -> set[tuple[int, int]]:
    """Edges of the Delaunay triangulation by circumcircle enumeration.

    An edge ij is Delaunay exactly when some circle through i and j is
    empty of the other points; in general position it suffices to scan
    circumcircles of all triples. Quadratic-time fallback for n == 2.
    """
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    if n == 2:
        return {(0, 1)}
    edges: set[tuple[int, int]] = set()
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                center, r = _circumcircle(pts[i], pts[j], pts[k])
                if center is None:
                    continue
                d = np.hypot(pts[:, 0] - center[0], pts[:, 1] - center[1])
                mask = np.ones(n, dtype=bool)
                mask[[i, j, k]] = False
                if np.all(d[mask] > r):
                    edges.update([(i, j), (i, k), (j, k)])
    return edges


def _circumcircle(a, b, c):
    d = 2.0 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    if d == 0.0:
        return None, 0.0
    bb = float(b @ b - a @ a)
    cc = float(c @ c - a @ a)
    ux = (bb * (c[1] - a[1]) - cc * (b[1] - a[1])) / d
    uy = (cc * (b[0] - a[0]) - bb * (c[0] - a[0])) / d
    center = np.array([ux, uy])
    return center, math.dist(center, a)


def euclidean_mst_edges(points: np.ndarray) -> set[tuple[int, int]]:
    """Edges of a Euclidean minimum spanning tree via scipy csgraph."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    dist = np.hypot(
        pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1]
    )
    tree = _scipy_mst(dist).tocoo()
    return {(min(i, j), max(i, j)) for i, j in zip(tree.row, tree.col)}


def ahu_encoding(children: list[list[int]], node: int) -> str:
    subs = sorted(ahu_encoding(children, c) for c in children[node])
    return "(" + "".join(subs) + ")"


def rooted_trees_up_to_iso(n: int) -> list[Tree]:
    """One representative parent array per rooted-tree isomorphism class."""
    if n == 1:
        return [Tree(())]
    seen: dict[str, tuple[int, ...]] = {}

    def rec(parents: list[int]) -> None:
        node = len(parents) + 2
        if node > n:
            children: list[list[int]] = [[] for _ in range(n + 1)]
            for child, p in enumerate(parents, start=2):
                children[p].append(child)
            key = ahu_encoding(children, 1)
            seen.setdefault(key, tuple(parents))
            return
        for p in range(1, node):
            rec(parents + [p])

    rec([])
    return [Tree(p) for p in seen.values()]


def random_tree(n: int, rng: np.random.Generator) -> Tree:
    """Uniform-attachment random tree on n nodes."""
    return Tree(tuple(int(rng.integers(1, k)) for k in range(2, n + 1)))


@pytest.fixture
def rng():
    return np.random.default_rng(0)
