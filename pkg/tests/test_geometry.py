import math

import numpy as np
import pytest

from distpl.geometry import (
    BOUNDARY,
    COLLINEAR,
    INSIDE,
    LEFT,
    OUTSIDE,
    RIGHT,
    GeometryError,
    Point,
    PolygonError,
    Segment,
    SimplePolygon,
    Subdivision,
    SubdivisionError,
    boundary_distances,
    contains,
    dist_to_boundary,
    interior_point,
    orient,
    orient_xy,
    point_segment_distance,
    rotated_polygon,
    sample_in_polygon,
    signed_area,
    validate_general_position,
)

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def unit_square():
    return SimplePolygon(UNIT_SQUARE)


def winding_number(poly, p):
    """Secondary containment oracle: winding number with exact orients."""
    wn = 0
    v = poly.vertices
    n = len(v)
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if a.y <= p.y:
            if b.y > p.y and orient(a, b, p) == LEFT:
                wn += 1
        else:
            if b.y <= p.y and orient(a, b, p) == RIGHT:
                wn -= 1
    return wn


class TestOrient:
    def test_basic_cases(self):
        assert orient(Point(0, 0), Point(1, 0), Point(0, 1)) == LEFT
        assert orient(Point(0, 0), Point(1, 0), Point(2, 0)) == COLLINEAR
        assert orient(Point(0, 0), Point(0, 1), Point(1, 0)) == RIGHT

    def test_antisymmetry_on_lattice(self):
        # Swapping two arguments flips the sign, exhaustively on a lattice.
        pts = [Point(x, y) for x in range(10) for y in range(10)]
        lattice = pts[::7]  # thin it out, still a few hundred triples
        for a in lattice:
            for b in lattice[::3]:
                for c in lattice[::5]:
                    o = orient(a, b, c)
                    assert orient(b, a, c) == -o
                    assert orient(a, c, b) == -o
                    assert orient(c, b, a) == -o

    def test_filter_fallback_is_exact(self):
        # Nearly collinear triple that defeats naive double arithmetic.
        a = Point(0.0, 0.0)
        b = Point(1e-30, 1e-30)
        c = Point(1e30, 1e30)
        assert orient(a, b, c) == COLLINEAR
        c2 = Point(1e30, math.nextafter(1e30, math.inf))
        assert orient(a, b, c2) == LEFT

    def test_tiny_perturbation_sign(self):
        base = 12.345678901234567
        a = Point(base, base)
        b = Point(base + 1.0, base + 1.0)
        c = Point(base + 2.0, base + 2.0)
        assert orient(a, b, c) == COLLINEAR
        c_up = Point(c.x, math.nextafter(c.y, math.inf))
        c_dn = Point(c.x, math.nextafter(c.y, -math.inf))
        assert orient(a, b, c_up) == LEFT
        assert orient(a, b, c_dn) == RIGHT


class TestSignedArea:
    def test_unit_square(self):
        assert signed_area(unit_square()) == pytest.approx(1.0)

    def test_cw_rejected(self):
        with pytest.raises(PolygonError):
            SimplePolygon(list(reversed(UNIT_SQUARE)))

    def test_triangle(self):
        assert signed_area(SimplePolygon([(0, 0), (1, 0), (0, 1)])) == pytest.approx(0.5)

    def test_collinear_chain_merged(self):
        poly = SimplePolygon([(0, 0), (0.5, 0), (1, 0), (1, 1), (0, 1)])
        assert poly.n == 4
        assert signed_area(poly) == pytest.approx(1.0)

    def test_self_intersection_rejected(self):
        with pytest.raises(PolygonError):
            SimplePolygon([(0, 0), (1, 1), (1, 0), (0, 1)])


class TestContains:
    def test_trivial(self):
        sq = unit_square()
        assert contains(sq, Point(0.5, 0.5)) == INSIDE
        assert contains(sq, Point(0.0, 0.5)) == BOUNDARY
        assert contains(sq, Point(2, 2)) == OUTSIDE

    def test_vertices_are_boundary(self):
        sq = unit_square()
        for v in sq.vertices:
            assert contains(sq, v) == BOUNDARY

    def test_agrees_with_winding_number(self):
        rng = np.random.default_rng(42)
        checked = 0
        for _ in range(40):
            n = int(rng.integers(3, 12))
            angles = np.sort(rng.uniform(0, 2 * math.pi, n))
            if len(np.unique(angles)) < n:
                continue
            radii = rng.uniform(0.3, 1.0, n)
            pts = [(r * math.cos(a), r * math.sin(a)) for a, r in zip(angles, radii)]
            try:
                poly = SimplePolygon(pts)
            except PolygonError:
                continue
            qs = rng.uniform(-1.2, 1.2, size=(2500, 2))
            for qx, qy in qs:
                p = Point(qx, qy)
                c = contains(poly, p)
                w = winding_number(poly, p)
                if c == BOUNDARY:
                    continue  # winding number is side-dependent on edges
                assert (c == INSIDE) == (w != 0)
                checked += 1
        assert checked > 50_000

    def test_on_edge_points_classify_boundary(self):
        poly = SimplePolygon([(0, 0), (4, 1), (3, 5), (-1, 3)])
        rng = np.random.default_rng(7)
        for a, b in poly.edges():
            # Points constructed on edges without representable drift.
            for t in (0.0, 0.25, 0.5, 0.75, 1.0):
                p = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
                d = dist_to_boundary(p, poly)
                c = contains(poly, p)
                # dist == 0 iff classified boundary (floating construction
                # may drift off the exact line, in which case both change).
                assert (d == 0.0) == (c == BOUNDARY) or d < 1e-15


class TestDistToBoundary:
    def test_center_of_unit_square(self):
        assert dist_to_boundary(Point(0.5, 0.5), unit_square()) == pytest.approx(0.5)

    def test_off_center(self):
        assert dist_to_boundary(Point(0.5, 0.25), unit_square()) == pytest.approx(0.25)

    def test_vertex_distance_zero(self):
        assert dist_to_boundary(Point(0, 0), unit_square()) == 0.0

    def test_outside_point(self):
        assert dist_to_boundary(Point(2, 0.5), unit_square()) == pytest.approx(1.0)

    def test_batch_matches_scalar(self):
        poly = SimplePolygon([(0, 0), (3, 0.2), (2.5, 2), (0.5, 1.7)])
        rng = np.random.default_rng(3)
        pts = rng.uniform(-1, 4, size=(200, 2))
        batch = boundary_distances(poly, pts)
        for (x, y), d in zip(pts, batch):
            assert d == pytest.approx(dist_to_boundary(Point(x, y), poly), rel=1e-12)


class TestGeneralPosition:
    def test_axis_aligned_square_fails(self):
        rep = validate_general_position(unit_square())
        assert not rep.ok
        assert rep.x_pairs and rep.y_pairs

    def test_rotated_square_ok(self):
        rot, _ = rotated_polygon(unit_square(), 0.1)
        assert validate_general_position(rot).ok

    def test_reports_offending_pair(self):
        poly = SimplePolygon([(0, 3.0), (2.5, 1), (4, 3.0), (2, 6)])
        rep = validate_general_position(poly)
        assert not rep.ok
        assert (0, 2) in rep.y_pairs
        assert not rep.x_pairs


class TestPrimitives:
    def test_point_requires_finite(self):
        with pytest.raises(GeometryError):
            Point(float("nan"), 0.0)

    def test_segment_requires_distinct(self):
        with pytest.raises(GeometryError):
            Segment(Point(1, 2), Point(1, 2))

    def test_point_segment_distance(self):
        d = point_segment_distance(Point(0, 1), Point(-1, 0), Point(1, 0))
        assert d == pytest.approx(1.0)
        d = point_segment_distance(Point(5, 1), Point(-1, 0), Point(1, 0))
        assert d == pytest.approx(math.hypot(4, 1))

    def test_interior_point_is_interior(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n = int(rng.integers(4, 10))
            angles = np.sort(rng.uniform(0, 2 * math.pi, n))
            radii = rng.uniform(0.2, 1.0, n)
            pts = [(r * math.cos(a), r * math.sin(a)) for a, r in zip(angles, radii)]
            try:
                poly = SimplePolygon(pts)
            except PolygonError:
                continue
            assert contains(poly, interior_point(poly)) == INSIDE

    def test_sample_in_polygon(self):
        poly = SimplePolygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
        rng = np.random.default_rng(5)
        pts = sample_in_polygon(poly, rng, 2000)
        for x, y in pts[:200]:
            assert contains(poly, Point(x, y)) != OUTSIDE


class TestSubdivision:
    def test_gamma_sum_enforced(self):
        sq = unit_square()
        with pytest.raises(SubdivisionError):
            Subdivision([sq], [0.9])

    def test_uniform_default(self):
        left = SimplePolygon([(0, 0), (0.5, 0), (0.5, 1), (0, 1)])
        right = SimplePolygon([(0.5, 0), (1, 0), (1, 1), (0.5, 1)])
        sub = Subdivision([left, right])
        assert sub.gammas == (0.5, 0.5)
        # shared edge dedup: 4 + 4 - 1
        assert len(sub.edges) == 7

    def test_bounds_is_square(self):
        poly = SimplePolygon([(0, 0), (4, 0), (4, 1), (0, 1)])
        sub = Subdivision([poly])
        x0, y0, side = sub.bounds
        assert side == pytest.approx(4.0)
        assert x0 == pytest.approx(0.0)
        assert y0 == pytest.approx(-1.5)

    def test_crossing_edges_rejected(self):
        a = SimplePolygon([(0, 0), (2, 0), (2, 2)])
        b = SimplePolygon([(1, -1), (3, 1), (1, 1)])
        with pytest.raises(SubdivisionError):
            Subdivision([a, b], [0.5, 0.5])

    def test_locate_face(self):
        left = SimplePolygon([(0, 0), (0.5, 0), (0.5, 1), (0, 1)])
        right = SimplePolygon([(0.5, 0), (1, 0), (1, 1), (0.5, 1)])
        sub = Subdivision([left, right], [0.25, 0.75])
        assert sub.locate_face(Point(0.25, 0.5)) == 0
        assert sub.locate_face(Point(0.75, 0.5)) == 1
        assert sub.locate_face(Point(5, 5)) == -1
