import math

import numpy as np
import pytest

from distpl.geometry import (
    LEFT,
    GeneralPositionError,
    Point,
    SimplePolygon,
    boundary_distances,
    orient,
    polygon_centroid,
    rotated_polygon,
)
from distpl.sevengon import (
    ALPHA,
    RecursionPolygon,
    _CanonPiece,
    decompose,
    grow_from_corner,
    push_square,
    recursion_split,
    run_sweep,
    seed_rays,
    square_reach_point,
    square_reach_segment,
    sweep_union,
)

UNIT_SQUARE = SimplePolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def quarter_piece():
    """0.5 x 0.5 square recursion piece from seeding the unit square."""
    return seed_rays(UNIT_SQUARE, Point(0.5, 0.5))[0]


def piece(corner, h_end, chain, v_end=None):
    cyc = [(corner[0], corner[1], False), (h_end[0], h_end[1], False)]
    cyc += [(x, y, True) for (x, y) in chain]
    if v_end is not None:
        cyc.append((v_end[0], v_end[1], False))
    return RecursionPolygon(cyc, has_v=v_end is not None)


class TestSeedRays:
    def test_unit_square_center(self):
        pieces = seed_rays(UNIT_SQUARE, Point(0.5, 0.5))
        assert len(pieces) == 4
        for rp in pieces:
            assert rp.area() == pytest.approx(0.25)
            assert len(rp.cycle) == 4

    def test_l_shape_area_conservation(self):
        L = SimplePolygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
        p0 = Point(0.6, 0.7)
        pieces = seed_rays(L, p0)
        assert sum(rp.area() for rp in pieces) == pytest.approx(L.area, rel=1e-12)

    def test_ray_hitting_reflex_vertex(self):
        # the upward ray from (1, 0.5) passes exactly through the reflex
        # corner (1, 1); pieces stay simple and cover the polygon
        L = SimplePolygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
        pieces = seed_rays(L, Point(1.0, 0.5))
        assert sum(rp.area() for rp in pieces) == pytest.approx(L.area, rel=1e-12)
        flagged_hits = [
            pt for rp in pieces for pt in rp.cycle if pt[2]
            and (pt[0], pt[1]) == (1.0, 1.0)
        ]
        assert flagged_hits  # the vertex hit is recorded as a polygon vertex

    def test_rejects_boundary_seed(self):
        with pytest.raises(Exception):
            seed_rays(UNIT_SQUARE, Point(0.0, 0.5))


class TestGrowFromCorner:
    def test_quarter_square_terminal(self):
        st = grow_from_corner(quarter_piece())
        assert st.case == "A"
        assert st.square[2] == pytest.approx(0.5)
        assert st.is_terminal  # opposite corner of the polygon is hit

    def test_zero_length_wall_immediate_contact(self):
        rp = piece((0, 0), (1, 0), [(1, 0), (0.8, 0.9)])
        st = grow_from_corner(rp)
        # the chain edge rises from the corner: sliding contact from side 0
        assert st.case == "B"
        assert st.start_square == (0.0, 0.0, 0.0)

    def test_growth_matches_square_metric_oracle(self):
        rp = piece((0, 0), (3, 0), [(3, 0), (2.7, 2.1), (1.1, 2.6), (0, 1.4)],
                   v_end=(0, 1.4))
        st = grow_from_corner(rp)
        canon = _CanonPiece(rp)
        best = math.inf
        for i in range(1, len(canon.pts) - 1):
            best = min(best, square_reach_point(*canon.pts[i]))
        for i in range(canon.n_edges):
            best = min(best, square_reach_segment(*canon.edge(i)))
        assert st.square[2] == pytest.approx(best, rel=1e-12)


class TestPushSquare:
    def test_b_to_c_when_bottom_corner_hits_edge(self):
        rp = piece((0, 0), (2, 0), [(2, 0), (3, 2), (0, 1)], v_end=(0, 1))
        st = grow_from_corner(rp)
        assert st.case == "A" and not st.is_terminal
        nxt = push_square(st, rp)
        assert len(nxt) == 1 and nxt[0].case == "B"
        b = nxt[0]
        assert not b.is_terminal
        after = push_square(b, rp)
        assert after[0].case == "C"
        # transition happened when the bottom-right corner reached the floor end
        x, y, s = after[0].start_square
        assert x + s == pytest.approx(2.0)
        assert y == pytest.approx(0.0)

    def test_b_splits_into_d_and_f(self):
        rp = piece((0, 0), (4, 0),
                   [(4, 0), (4.5, 2.1), (1.2, 3.2), (0, 1)], v_end=(0, 1))
        st = grow_from_corner(rp)
        b = push_square(st, rp)[0]
        assert b.case == "B"
        branches = push_square(b, rp)
        assert sorted(s.case for s in branches) == ["D", "F"]

    def test_d_terminates_on_vertex(self):
        rp = piece((0, 0), (4, 0),
                   [(4, 0), (4.5, 2.1), (1.2, 3.2), (0, 1)], v_end=(0, 1))
        st = grow_from_corner(rp)
        b = push_square(st, rp)[0]
        branches = push_square(b, rp)
        d = [s for s in branches if s.case == "D"][0]
        steps = push_square(d, rp) if not d.is_terminal else [d]
        assert all(s.is_terminal for s in steps)

    def test_terminal_state_push_returns_empty(self):
        st = grow_from_corner(quarter_piece())
        assert push_square(st, quarter_piece()) == []


class TestSweepUnion:
    def test_single_square_trace(self):
        rp = quarter_piece()
        canon = _CanonPiece(rp)
        states = run_sweep(canon)
        hull = sweep_union(states, canon)
        assert len(hull) == 4
        assert _poly_area(hull) == pytest.approx(0.25)

    def test_a_b_trace_is_pentagon(self):
        rp = piece((0, 0), (4, 0),
                   [(4, 0), (4.5, 4), (2.0, 1.9), (0, 1)], v_end=(0, 1))
        canon = _CanonPiece(rp)
        states = run_sweep(canon)
        assert [s.case for s in states] == ["A", "B"]
        assert states[-1].terminal == "vertex"
        hull = sweep_union(states, canon)
        assert len(hull) == 5
        expect = [(0, 0), (3.9, 0), (3.9, 1.9), (2.0, 1.9), (0, 1)]
        got = sorted((round(x, 9), round(y, 9)) for x, y in hull)
        assert got == sorted(expect)

    def test_full_trace_matches_dense_sampling_hull(self):
        rp = piece((0, 0), (2, 0), [(2, 0), (3, 2), (0, 1)], v_end=(0, 1))
        canon = _CanonPiece(rp)
        states = run_sweep(canon)
        hull = sweep_union(states, canon)
        assert 3 <= len(hull) <= 7
        # oracle: hull of densely interpolated squares along every phase
        pts = []
        for st in states:
            for t in np.linspace(0, 1, 60):
                x0, y0, s0 = st.start_square
                x1, y1, s1 = st.square
                x, y, s = ((1 - t) * x0 + t * x1, (1 - t) * y0 + t * y1,
                           (1 - t) * s0 + t * s1)
                pts += [(x, y), (x + s, y), (x + s, y + s), (x, y + s)]
        from distpl.sevengon import _convex_hull
        dense = _convex_hull(pts)
        assert _poly_area(dense) == pytest.approx(_poly_area(hull), rel=1e-9)

    def test_all_regions_convex(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            poly = _random_star(rng, int(rng.integers(10, 40)))
            if poly is None:
                continue
            for r in decompose(poly, rotate_gp=True):
                v = r.vertices
                assert 3 <= len(v) <= 7
                for i in range(len(v)):
                    assert orient(v[i - 1], v[i], v[(i + 1) % len(v)]) == LEFT


class TestRecursionSplit:
    def test_full_consumption_yields_no_pieces(self):
        rp = quarter_piece()
        canon = _CanonPiece(rp)
        states = run_sweep(canon)
        hull = sweep_union(states, canon)
        assert recursion_split(canon, hull) == []

    def test_partition_identity(self):
        rp = piece((0, 0), (4, 0),
                   [(4, 0), (4.5, 2.1), (1.2, 3.2), (0, 1)], v_end=(0, 1))
        canon = _CanonPiece(rp)
        states = run_sweep(canon)
        hull = sweep_union(states, canon)
        children = recursion_split(canon, hull)
        total = _poly_area(hull) + sum(c.area() for c in children)
        assert total == pytest.approx(rp.area(), rel=1e-9)

    def test_children_never_gain_vertices(self):
        rng = np.random.default_rng(23)
        poly = _random_star(rng, 30)
        from distpl.geometry import interior_point
        stack = list(seed_rays(poly, interior_point(poly)))
        while stack:
            rp = stack.pop()
            canon = _CanonPiece(rp)
            states = run_sweep(canon)
            hull = sweep_union(states, canon)
            children = recursion_split(canon, hull)
            for c in children:
                assert c.interior_vertex_count() <= rp.interior_vertex_count()
            stack.extend(children)


class TestDecompose:
    def test_rotated_square_centroid_seed(self):
        sq, _ = rotated_polygon(UNIT_SQUARE, 0.1)
        regions = decompose(sq, p0=polygon_centroid(sq))
        assert len(regions) == 4
        for r in regions:
            assert r.area() == pytest.approx(0.25, rel=1e-9)
            assert len(r.vertices) == 4

    def test_general_position_error_names_flag(self):
        with pytest.raises(GeneralPositionError, match="rotate_gp"):
            decompose(UNIT_SQUARE)

    def test_rotate_gp_maps_back_to_input_frame(self):
        regions = decompose(UNIT_SQUARE, rotate_gp=True)
        total = sum(r.area() for r in regions)
        assert total == pytest.approx(1.0, rel=1e-9)
        for r in regions:
            for p in r.vertices:
                assert -1e-6 <= p.x <= 1 + 1e-6
                assert -1e-6 <= p.y <= 1 + 1e-6

    def test_notched_polygon_count_independent_of_eps(self):
        counts = {}
        for eps in (0.05, 0.001):
            poly = _notched(eps)
            regions = decompose(poly, rotate_gp=True)
            counts[eps] = len(regions)
            assert len(regions) <= 20 * poly.n
        assert counts[0.05] == counts[0.001]

    def test_random_polygons_linear_region_count(self):
        rng = np.random.default_rng(7)
        ratios = []
        for _ in range(25):
            poly = _random_star(rng, int(rng.integers(20, 120)))
            if poly is None:
                continue
            regions = decompose(poly, rotate_gp=True)
            assert abs(sum(r.area() for r in regions) - poly.area) <= 1e-9 * poly.area
            ratios.append(len(regions) / poly.n)
        assert max(ratios) <= 4.0

    def test_half_distance_property_sampled(self):
        rng = np.random.default_rng(31)
        for trial in range(6):
            poly = _random_star(rng, int(rng.integers(12, 60)))
            if poly is None:
                continue
            regions = decompose(poly, rotate_gp=True)
            _assert_alpha_property(poly, regions, ALPHA, 10_000, seed=trial)

    def test_deterministic(self):
        poly = _notched(0.01)
        a = decompose(poly, rotate_gp=True)
        b = decompose(poly, rotate_gp=True)
        assert [r.coords() for r in a] == [r.coords() for r in b]
        assert [r.provenance for r in a] == [r.provenance for r in b]


def _poly_area(pts):
    s = 0.0
    for i in range(len(pts)):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % len(pts)]
        s += x0 * y1 - x1 * y0
    return 0.5 * abs(s)


def _random_star(rng, n):
    ang = np.sort(rng.uniform(0, 2 * math.pi, n))
    rad = rng.uniform(0.25, 1.0, n)
    pts = [(r * math.cos(a), r * math.sin(a)) for a, r in zip(ang, rad)]
    try:
        return SimplePolygon(pts)
    except Exception:
        return None


def _notched(eps):
    return SimplePolygon([(0, 0), (0.5 - eps / 2, 0), (0.5 - eps / 2, 1),
                          (0.5 + eps / 2, 1), (0.5 + eps / 2, 0), (1, 0),
                          (1, 2), (0, 2)])


def _assert_alpha_property(poly, regions, alpha, samples, seed):
    """Sample region-area-weighted points; check area >= alpha d^2 (1-1e-6)."""
    areas = np.array([r.area() for r in regions])
    rng = np.random.default_rng(seed)
    pick = rng.choice(len(regions), size=samples, p=areas / areas.sum())
    pts = np.empty((samples, 2))
    for i, ri in enumerate(pick):
        v = np.array(regions[ri].coords())
        k = len(v)
        ta = np.array([
            abs((v[j][0] - v[0][0]) * (v[j + 1][1] - v[0][1])
                - (v[j][1] - v[0][1]) * (v[j + 1][0] - v[0][0])) / 2
            for j in range(1, k - 1)
        ])
        j = rng.choice(k - 2, p=ta / ta.sum()) + 1
        r1, r2 = math.sqrt(rng.random()), rng.random()
        pts[i] = (1 - r1) * v[0] + r1 * (1 - r2) * v[j] + r1 * r2 * v[j + 1]
    d = boundary_distances(poly, pts)
    assert np.all(areas[pick] >= alpha * d * d * (1 - 1e-6))
