"""Predicates, circle intersections, and general-position checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgg.errors import DegenerateCirclesError, InvalidGeometryError
from wgg.geometry import (
    DiametralDisk,
    Tolerance,
    circle_circle_intersections,
    general_position_check,
    in_blocking_region,
    perturb_points,
    rotate_points,
    rotation_with_distinct_x,
    segments_cross,
)

TOL = Tolerance(scale=2.0)


class TestBlockingRegion:
    def test_interior_point_blocks(self):
        d = DiametralDisk((0, 0), (2, 0))
        # |q - center| = 0.5 < radius 1
        assert in_blocking_region(d, (1, 0.5), TOL)

    def test_endpoint_does_not_block(self):
        d = DiametralDisk((0, 0), (2, 0))
        assert not in_blocking_region(d, (0, 0), TOL)
        assert not in_blocking_region(d, (2, 0), TOL)

    def test_boundary_point_blocks_closed_disk(self):
        d = DiametralDisk((0, 0), (2, 0))
        # dot(a - q, b - q) is exactly zero at (1, 1)
        assert in_blocking_region(d, (1, 1), TOL)

    def test_outside_point_does_not_block(self):
        d = DiametralDisk((0, 0), (2, 0))
        # dot(a - q, b - q) = 3 > 0
        assert not in_blocking_region(d, (3, 0), TOL)

    def test_near_endpoint_counts_as_endpoint(self):
        d = DiametralDisk((0, 0), (2, 0))
        eps = 0.4 * TOL.tau_rel * d.diameter
        assert not in_blocking_region(d, (eps, 0), TOL)

    def test_nonfinite_input_rejected(self):
        d = DiametralDisk((0, 0), (2, 0))
        with pytest.raises(InvalidGeometryError):
            in_blocking_region(d, (float("nan"), 0), TOL)
        with pytest.raises(InvalidGeometryError):
            DiametralDisk((0, 0), (float("inf"), 1))

    def test_degenerate_disk_rejected(self):
        with pytest.raises(InvalidGeometryError):
            DiametralDisk((1, 1), (1, 1))

    @given(
        ax=st.floats(-10, 10), ay=st.floats(-10, 10),
        bx=st.floats(-10, 10), by=st.floats(-10, 10),
        qx=st.floats(-10, 10), qy=st.floats(-10, 10),
    )
    @settings(max_examples=200, deadline=None)
    def test_symmetric_in_endpoints(self, ax, ay, bx, by, qx, qy):
        if math.dist((ax, ay), (bx, by)) < 1e-12:
            return
        d1 = DiametralDisk((ax, ay), (bx, by))
        d2 = DiametralDisk((bx, by), (ax, ay))
        q = (qx, qy)
        assert in_blocking_region(d1, q, TOL) == in_blocking_region(d2, q, TOL)

    def test_stable_under_small_move_toward_center(self):
        d = DiametralDisk((0, 0), (2, 0))
        q = np.array([1.3, 0.4])
        assert in_blocking_region(d, q, TOL)
        step = TOL.tau_rel * TOL.scale / 2.0
        toward = d.center - q
        toward /= np.linalg.norm(toward)
        assert in_blocking_region(d, q + step * toward, TOL)


class TestCircleIntersections:
    def test_disjoint_circles(self):
        d1 = DiametralDisk((-0.5, 0), (0.5, 0))
        d2 = DiametralDisk((1.5, 0), (2.5, 0))
        assert circle_circle_intersections(d1, d2, TOL) == []

    def test_identical_circles_raise(self):
        # Both disks have the unit circle as boundary.
        d1 = DiametralDisk((-1, 0), (1, 0))
        d2 = DiametralDisk((0, -1), (0, 1))
        with pytest.raises(DegenerateCirclesError):
            circle_circle_intersections(d1, d2, TOL)

    def test_two_point_crossing_frozen(self):
        # Circles centered (1,0) and (2,0), radius 1 each. Solving the
        # two circle equations gives x = 1.5, y = +/- sqrt(0.75).
        d1 = DiametralDisk((0, 0), (2, 0))
        d2 = DiametralDisk((1, 0), (3, 0))
        pts = circle_circle_intersections(d1, d2, TOL)
        assert len(pts) == 2
        ys = sorted(p[1] for p in pts)
        assert ys[0] == pytest.approx(-0.8660254037844386, abs=1e-9)
        assert ys[1] == pytest.approx(0.8660254037844386, abs=1e-9)
        for p in pts:
            assert p[0] == pytest.approx(1.5, abs=1e-9)
            # brute-force check: radial distance to both centers
            assert math.dist(p, d1.center) == pytest.approx(1.0, abs=1e-9)
            assert math.dist(p, d2.center) == pytest.approx(1.0, abs=1e-9)

    def test_nested_circles_empty(self):
        d1 = DiametralDisk((-2, 0), (2, 0))
        d2 = DiametralDisk((-0.5, 0), (0.5, 0))
        assert circle_circle_intersections(d1, d2, TOL) == []

    @given(
        ax=st.floats(-5, 5), ay=st.floats(-5, 5),
        bx=st.floats(-5, 5), by=st.floats(-5, 5),
        cx=st.floats(-5, 5), cy=st.floats(-5, 5),
        dx=st.floats(-5, 5), dy=st.floats(-5, 5),
    )
    @settings(max_examples=200, deadline=None)
    def test_points_lie_on_both_circles(self, ax, ay, bx, by, cx, cy, dx, dy):
        if math.dist((ax, ay), (bx, by)) < 1e-9 or math.dist((cx, cy), (dx, dy)) < 1e-9:
            return
        d1 = DiametralDisk((ax, ay), (bx, by))
        d2 = DiametralDisk((cx, cy), (dx, dy))
        tol = Tolerance.for_points(np.array([[ax, ay], [bx, by], [cx, cy], [dx, dy]]))
        try:
            pts = circle_circle_intersections(d1, d2, tol)
        except DegenerateCirclesError:
            return
        bound = 10 * tol.tau_rel * tol.scale
        for p in pts:
            assert abs(math.dist(p, d1.center) - d1.radius) <= bound
            assert abs(math.dist(p, d2.center) - d2.radius) <= bound


class TestGeneralPosition:
    def test_collinear_triple_found(self):
        violations = general_position_check([(0, 0), (1, 0), (2, 0)], TOL)
        assert len(violations) == 1
        assert violations[0].kind == "collinear"
        assert violations[0].indices == (0, 1, 2)

    def test_generic_triple_clean(self):
        assert general_position_check([(0, 0), (1, 0), (0, 1)], TOL) == []

    def test_cocircular_quadruple_found(self):
        pts = [(1, 0), (0, 1), (-1, 0), (0, -1)]  # unit circle
        violations = general_position_check(pts, TOL)
        assert [v.kind for v in violations] == ["cocircular"]
        assert violations[0].indices == (0, 1, 2, 3)

    def test_perturbation_restores_general_position(self):
        pts = np.array([(float(i), 0.0) for i in range(6)])
        tol = Tolerance.for_points(pts)
        moved = perturb_points(pts, 100 * tol.length)
        assert general_position_check(moved, tol) == []


class TestHelpers:
    def test_rotation_separates_x(self):
        pts = np.array([[0.0, 0.0], [0.0, 1.0], [0.0, 2.0]])
        ang = rotation_with_distinct_x(pts)
        xs = np.sort(rotate_points(pts, ang)[:, 0])
        assert np.min(np.diff(xs)) > 0

    def test_rotation_preserves_distances(self):
        pts = np.array([[0.0, 0.0], [3.0, 4.0]])
        out = rotate_points(pts, 1.234)
        assert math.dist(out[0], out[1]) == pytest.approx(5.0)

    def test_segments_cross(self):
        assert segments_cross((0, 0), (1, 1), (0, 1), (1, 0))
        assert not segments_cross((0, 0), (1, 1), (1, 1), (2, 0))  # shared endpoint
        assert not segments_cross((0, 0), (1, 0), (0, 1), (1, 1))

    def test_tolerance_validation(self):
        with pytest.raises(InvalidGeometryError):
            Tolerance(tau_rel=0.0)
        with pytest.raises(InvalidGeometryError):
            Tolerance(scale=-1.0)

    def test_tolerance_scale_from_spread(self):
        tol = Tolerance.for_points(np.array([[0.0, 0.0], [3.0, 1.0]]))
        assert tol.scale == 3.0
        assert Tolerance.for_points(np.array([[2.0, 2.0]])).scale == 1.0
