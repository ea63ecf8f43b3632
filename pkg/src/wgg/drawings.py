"""Constructive drawers and named instances with known witness behavior.

Every drawer returns concrete coordinates together with the edge set the
construction is supposed to realize, and self-checks through the
brute-force oracle before returning. Exact symmetries are broken by
deterministic detuning (tiny golden-sequence offsets on angles, lengths,
or positions), so emitted instances are in general position without any
random state.

Tree layout. The root sits at the origin with unit-length edges fanned
at equal angles; the fan budget of a node is its parent's budget divided
by its child count, and a child edge is half the node's reach, the reach
being the parent edge length times the sine of half the parent's budget.
Along the parent edge of every non-root node, two witnesses are pinned
just outside that edge's diametral disk, one on each side, forming a
wedge that cuts the node's subtree off from the rest of the drawing.
Chains need care: a degree-one fan has a 180 degree budget, which puts
the classical witness position at the parent vertex itself, so chain
edges instead get a slab of two witnesses at 45 degrees behind the node,
far enough out to clear the subtree but close enough to separate it.

Complete bipartite layout. Vertices sit on the two horizontal sides of a
rectangle with unit diagonal. Any bichromatic diametral disk stays inside
the union of the circumdisk and the horizontal strip of the rectangle,
while the strip width is chosen so every monochromatic disk pokes out of
that union, leaving room to pierce it with one outside witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConstructionFailure, InvalidGeometryError
from .geometry import (
    DiametralDisk,
    Tolerance,
    as_points,
    ensure_general_position,
    golden_jitter,
    perturb_points,
)
from .graphs import Edge, Instance, canonical_edges, oracle_construct
from .verify import EmbeddedGraph

__all__ = [
    "Tree",
    "draw_tree",
    "draw_complete_bipartite",
    "bipartite_strip_width",
    "eliminate_all_witnesses",
    "hexagonal_instance",
    "concentric_instance",
    "k3333_candidate",
]

TWO_PI = 2.0 * math.pi

# Relative detuning applied inside layouts to break exact collinearity
# and cocircularity; large against tau_rel, negligible against geometry.
_ANGLE_DETUNE = 1e-7
_LENGTH_DETUNE = 1e-7

# Fan budgets above this are treated as chains (the only budget above
# 150 degrees the recurrence can produce is 180 exactly).
_CHAIN_BUDGET = 5.0 * math.pi / 6.0


def _unit(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle)])


@dataclass(frozen=True)
class Tree:
    """Rooted tree as a parent array; node 1 is the root.

    ``parents[k]`` is the 1-based parent of node ``k + 2``. Children keep
    the order in which they appear, which fixes the drawing.
    """

    parents: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        for k, p in enumerate(self.parents):
            node = k + 2
            if not 1 <= p <= n:
                raise InvalidGeometryError(f"parent {p} of node {node} out of range")
            if p == node:
                raise InvalidGeometryError(f"node {node} is its own parent")
        # Every node must reach the root without revisiting anything.
        reaches = {1}
        for node in range(2, n + 1):
            seen = []
            cur = node
            while cur not in reaches:
                if cur in seen:
                    raise InvalidGeometryError(f"cycle through node {cur}")
                seen.append(cur)
                cur = self.parent_of(cur)
            reaches.update(seen)

    @property
    def n(self) -> int:
        return len(self.parents) + 1

    def parent_of(self, node: int) -> int:
        return self.parents[node - 2]

    def children(self) -> list[list[int]]:
        """Children lists indexed 0..n, entry 0 unused; input order kept."""
        out: list[list[int]] = [[] for _ in range(self.n + 1)]
        for node in range(2, self.n + 1):
            out[self.parent_of(node)].append(node)
        return out

    def edges(self) -> frozenset[Edge]:
        return canonical_edges(
            [(self.parent_of(node) - 1, node - 1) for node in range(2, self.n + 1)],
            self.n,
        )


def _tree_layout(tree: Tree) -> tuple[np.ndarray, dict[int, float], dict[int, float]]:
    """Positions plus the fan budget and parent direction of every node."""
    children = tree.children()
    n = tree.n
    pos = np.zeros((n + 1, 2))
    budget: dict[int, float] = {}
    parent_dir: dict[int, float] = {}

    if children[1]:
        budget[1] = TWO_PI / (len(children[1]) + 1)
    queue = [1]
    while queue:
        j = queue.pop(0)
        kids = children[j]
        if not kids:
            continue
        if j == 1:
            fan = budget[1]
            rays = [i * fan for i in range(1, len(kids) + 1)]
            lengths = [1.0] * len(kids)
        else:
            h = tree.parent_of(j)
            fan = budget[h] / len(kids)
            budget[j] = fan
            ext = (TWO_PI - fan * (len(kids) - 1)) / 2.0
            rays = [parent_dir[j] + ext + i * fan for i in range(len(kids))]
            parent_len = float(np.linalg.norm(pos[j] - pos[h]))
            reach = parent_len * math.sin(budget[h] / 2.0)
            lengths = [reach / 2.0] * len(kids)
        for ray, length, c in zip(rays, lengths, kids):
            ray += _ANGLE_DETUNE * golden_jitter(c, 0)
            length *= 1.0 + _LENGTH_DETUNE * golden_jitter(c, 1)
            pos[c] = pos[j] + length * _unit(ray)
            parent_dir[c] = ray + math.pi
            queue.append(c)
    return pos, budget, parent_dir


def _subtree_reach(tree: Tree, pos: np.ndarray) -> dict[int, float]:
    """Largest Euclidean path length from each node down into its subtree."""
    children = tree.children()
    order: list[int] = [1]
    for j in order:
        order.extend(children[j])
    reach = {j: 0.0 for j in range(1, tree.n + 1)}
    for j in reversed(order):
        for c in children[j]:
            edge = float(np.linalg.norm(pos[c] - pos[j]))
            reach[j] = max(reach[j], edge + reach[c])
    return reach


def _tree_witnesses(
    tree: Tree, pos: np.ndarray, budget: dict[int, float], eps: float, eps_start: float
) -> np.ndarray:
    """Two wedge witnesses per non-root node; ``eps`` is the outward slack."""
    reach = _subtree_reach(tree, pos)
    wits: list[np.ndarray] = []
    for j in range(2, tree.n + 1):
        h = tree.parent_of(j)
        fan = budget[h]
        vec = pos[j] - pos[h]
        length = float(np.linalg.norm(vec))
        toward_child = math.atan2(vec[1], vec[0])
        for side, sign in enumerate((1.0, -1.0)):
            # Per-witness jitter, proportional to the slack so halving eps
            # scales every margin together; sibling witnesses would
            # otherwise coincide on shared bisector rays and symmetric
            # quadruples would stay exactly cocircular.
            key = 2 * j + side
            radial_jit = 1.0 + 0.02 * golden_jitter(key, 1)
            angle_jit = 0.01 * eps * golden_jitter(key, 0)
            if fan <= _CHAIN_BUDGET:
                radius = length * math.cos(fan / 2.0) * (1.0 + eps * radial_jit)
                ray = toward_child + sign * fan / 2.0 + angle_jit
                wits.append(pos[h] + radius * _unit(ray))
            else:
                # Chain edge: walls at 45 degrees behind j, beyond the
                # subtree reach but inside the parent's diametral reach.
                # Retries pull the slab tighter toward the subtree.
                s = reach[j]
                frac = eps / eps_start
                t = max(0.72 * length, s + 0.5 * (length - s) * frac)
                t += 0.01 * (t - s) * golden_jitter(key, 1)
                ray = toward_child + math.pi + sign * math.pi / 4.0
                ray += 1e-5 * golden_jitter(key, 0)
                wits.append(pos[j] + t * _unit(ray))
    return np.array(wits) if wits else np.empty((0, 2))


def draw_tree(
    tree: Tree,
    tol: Tolerance | None = None,
    eps_start: float = 1e-4,
    max_halvings: int = 40,
) -> tuple[Instance, frozenset[Edge]]:
    """Draw a rooted tree so its witness Gabriel graph is the tree itself.

    The witness slack starts at ``eps_start`` and is halved until the
    oracle round-trip reproduces the tree under the identity labeling.
    Exhausting ``max_halvings`` raises :class:`ConstructionFailure`.
    """
    expected = tree.edges()
    pos, budget, _ = _tree_layout(tree)
    verts = pos[1:]
    if tree.n == 1:
        return Instance(verts, label="tree-n1"), frozenset()

    eps = eps_start
    for _ in range(max_halvings + 1):
        wits = _tree_witnesses(tree, pos, budget, eps, eps_start)
        inst = Instance(verts, wits, label=f"tree-n{tree.n}")
        got = oracle_construct(inst, tol if tol is not None else inst.tolerance())
        if got.edges == expected:
            return inst, expected
        eps /= 2.0
    raise ConstructionFailure(
        f"tree drawing failed after {max_halvings} halvings "
        f"(n={tree.n}, parents={tree.parents})"
    )


def bipartite_strip_width(m: int, margin: float = 1.1) -> float:
    """Largest power-of-two rectangle width whose monochromatic disks poke
    out of the unit circumdisk with the given safety margin."""
    if m < 2:
        raise InvalidGeometryError("strip width needs at least two row points")
    for i in range(1, 60):
        x = 2.0**-i
        lhs = 1.0 / (m - 1)
        rhs = (1.0 - math.sqrt(1.0 - x * x)) / x
        if lhs >= margin * rhs:
            return x
    raise ConstructionFailure(f"no workable strip width for m={m}")


def draw_complete_bipartite(
    m: int, n: int, tol: Tolerance | None = None
) -> tuple[Instance, frozenset[Edge]]:
    """Draw K_{m,n} (m >= n >= 1, m >= 2) as a witness Gabriel graph.

    Vertices are the two equally spaced rows of a unit-diagonal rectangle,
    one witness pierces each monochromatic disk from outside the
    circumdisk-plus-strip region, and a final deterministic perturbation
    removes the collinearities. Verified by the oracle before returning.
    """
    if not (m >= n >= 1):
        raise InvalidGeometryError(f"need m >= n >= 1, got m={m}, n={n}")
    if m < 2:
        raise InvalidGeometryError("the single-edge case needs m >= 2")
    x = bipartite_strip_width(m)
    h = math.sqrt(1.0 - x * x)

    top = np.array([[x * i / (m - 1), h] for i in range(m)])
    if n >= 2:
        bottom = np.array([[x * j / (n - 1), 0.0] for j in range(n)])
    else:
        bottom = np.array([[x / 2.0, 0.0]])
    verts = np.vstack([top, bottom])
    expected = canonical_edges(
        [(i, m + j) for i in range(m) for j in range(n)], m + n
    )

    circumdisk = DiametralDisk((0.0, h), (x, 0.0))
    wits: list[np.ndarray] = []
    for row, outward in ((top, 1.0), (bottom, -1.0)):
        for i in range(len(row) - 1):
            for j in range(i + 1, len(row)):
                wits.append(
                    _pierce_monochromatic(row[i], row[j], outward, circumdisk, h)
                )
    wit_arr = np.array(wits) if wits else np.empty((0, 2))

    base_tol = Tolerance.for_points(verts, wit_arr)
    radius = 1e-5 * base_tol.scale
    for attempt in range(6):
        r = radius * 2.0**attempt
        offset = 1000 * attempt
        pverts = perturb_points(verts, r, start_index=offset)
        pwits = (
            perturb_points(wit_arr, r, start_index=offset + len(verts))
            if len(wit_arr)
            else wit_arr
        )
        inst = Instance(pverts, pwits, label=f"bipartite-{m}x{n}")
        got = oracle_construct(inst, tol if tol is not None else inst.tolerance())
        if got.edges == expected:
            return inst, expected
    raise ConstructionFailure(f"bipartite drawing failed for K_{{{m},{n}}}")


def _pierce_monochromatic(
    a: np.ndarray, b: np.ndarray, outward: float, circumdisk: DiametralDisk, h: float
) -> np.ndarray:
    """Witness inside the disk of a same-row pair, outside disk-plus-strip."""
    disk = DiametralDisk(a, b)
    r = disk.radius
    apex = disk.center + np.array([0.0, outward * r])
    slack = math.dist(apex, circumdisk.center) - circumdisk.radius
    if slack <= 0.0:
        raise ConstructionFailure(
            f"monochromatic disk {tuple(a)}-{tuple(b)} does not poke out"
        )
    pull = min(slack / 2.0, r / 2.0)
    for _ in range(20):
        w = apex - np.array([0.0, outward * pull])
        inside_strip = 0.0 <= w[1] <= h
        if (
            not inside_strip
            and disk.power(w) < 0.0
            and circumdisk.power(w) > 0.0
        ):
            return w
        pull /= 2.0
    raise ConstructionFailure("could not pin a witness between disk and strip")


def eliminate_all_witnesses(points, tol: Tolerance | None = None) -> np.ndarray:
    """Witnesses killing every edge: one just right of each non-rightmost
    vertex.

    Requires pairwise distinct x coordinates (rotate first when needed;
    see :func:`wgg.geometry.rotation_with_distinct_x`). Returns n - 1
    witnesses whose witness Gabriel graph over the input has no edges.
    """
    pts = as_points(points)
    n = len(pts)
    if n < 2:
        return np.empty((0, 2))
    xs = np.sort(pts[:, 0])
    min_gap = float(np.min(np.diff(xs)))
    if min_gap <= 0.0:
        raise InvalidGeometryError("two points share an x coordinate; rotate first")
    delta = 1e-4 * min_gap
    rightmost = int(np.argmax(pts[:, 0]))
    wits = [pts[i] + np.array([delta, 0.0]) for i in range(n) if i != rightmost]
    return np.array(wits)


def hexagonal_instance(rings: int) -> tuple[np.ndarray, frozenset[Edge]]:
    """Honeycomb patch with its nearest-neighbor edge disks designated.

    ``rings`` hexagon layers give ``6 rings^2`` vertices. Adjacency is
    computed on the exact lattice (pairs at unit side length), then the
    points get the deterministic perturbation. No probe point can sit in
    more than two of the designated disks, which is what makes the patch a
    lower-bound gadget for witness counts.
    """
    if rings < 1:
        raise InvalidGeometryError(f"rings must be >= 1, got {rings}")
    v1 = math.sqrt(3.0) * np.array([1.0, 0.0])
    v2 = math.sqrt(3.0) * _unit(math.pi / 3.0)
    centers = []
    for a in range(-rings, rings + 1):
        for b in range(-rings, rings + 1):
            if (abs(a) + abs(b) + abs(a + b)) // 2 <= rings - 1:
                centers.append(a * v1 + b * v2)
    corners: list[np.ndarray] = []
    for c in centers:
        for k in range(6):
            corners.append(c + _unit(math.pi / 6.0 + k * math.pi / 3.0))
    pts = _dedupe_lattice(np.array(corners))
    order = np.lexsort((pts[:, 0], pts[:, 1]))
    pts = pts[order]

    pairs = set()
    for i in range(len(pts) - 1):
        d = pts[i + 1:] - pts[i]
        close = np.nonzero(d[:, 0] ** 2 + d[:, 1] ** 2 <= 1.01)[0]
        for off in close:
            pairs.add((i, i + 1 + int(off)))

    tol = Tolerance.for_points(pts)
    perturbed = ensure_general_position(pts, tol, 1e-5 * tol.scale)
    return perturbed, canonical_edges(pairs, len(pts))


def _dedupe_lattice(pts: np.ndarray, resolution: float = 1e-6) -> np.ndarray:
    seen = {}
    for p in pts:
        key = (round(p[0] / resolution), round(p[1] / resolution))
        if key not in seen:
            seen[key] = p
    return np.array(list(seen.values()))


def concentric_instance(circles: int, ratio: float = 1.87) -> EmbeddedGraph:
    """Staggered octagons on concentric 16-point circles.

    Circle c (counted from the innermost, 1-based) carries edges between
    its consecutive odd-numbered vertices when c is odd and between its
    consecutive even-numbered vertices when c is even; vertices are
    numbered clockwise from the top. Witnesses are intentionally absent,
    the verifier produces them.
    """
    if circles < 2:
        raise InvalidGeometryError(f"need at least 2 circles, got {circles}")
    if not 1.82 < ratio < 1.92:
        raise InvalidGeometryError(f"radius ratio must be in (1.82, 1.92), got {ratio}")
    pts = []
    edges = set()
    for c in range(1, circles + 1):
        radius = ratio ** (c - 1)
        base = 16 * (c - 1)
        for k in range(16):
            ang = math.pi / 2.0 - TWO_PI * k / 16.0  # clockwise from the top
            pts.append(radius * _unit(ang))
        start = 0 if c % 2 == 1 else 1  # odd circles: odd vertex numbers (1-based)
        ring = [start + 2 * t for t in range(8)]
        for t in range(8):
            edges.add((base + ring[t], base + ring[(t + 1) % 8]))
    arr = np.array(pts)
    tol = Tolerance.for_points(arr)
    arr = ensure_general_position(arr, tol, 1e-5 * tol.scale)
    return EmbeddedGraph(arr, canonical_edges(edges, len(arr)))


def k3333_candidate() -> EmbeddedGraph:
    """The canonical rejection fixture: a convex-position K_{3,3,3,3}.

    Twelve vertices on a slightly perturbed circle, colored cyclically
    with four colors (color of vertex i is i mod 4), with an edge for
    every bichromatic pair. This layout satisfies every necessary
    condition that holds color-order-wise, yet it is not realizable, so
    the verifier must reject it.
    """
    pts = np.array([_unit(TWO_PI * i / 12.0) for i in range(12)])
    tol = Tolerance.for_points(pts)
    pts = ensure_general_position(pts, tol, 1e-5 * tol.scale)
    edges = {
        (i, j) for i in range(11) for j in range(i + 1, 12) if i % 4 != j % 4
    }
    return EmbeddedGraph(pts, canonical_edges(edges, 12))
