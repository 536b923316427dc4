"""Planar geometric primitives with exact orientation tests.

Coordinates are IEEE doubles.  Combinatorial decisions (orientation,
point-on-segment, containment classification) are exact: a floating-point
filter settles the easy cases and a rational fallback settles the rest, so
a sign is never wrong for representable inputs.  Derived metric quantities
(areas, distances, intersection coordinates) are plain floating point with
relative tolerance ``EPS_GEOM``.

All types are immutable after construction and all operations are pure, so
everything here is safe to share between concurrent readers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

#: Relative tolerance for derived floating-point quantities.
EPS_GEOM = 1e-9

# Filter constant for the orientation determinant: results whose magnitude
# exceeds _ORIENT_FILTER * (|detleft| + |detright|) have a trustworthy sign.
_ORIENT_FILTER = 3.3306690738754716e-16

LEFT = 1
COLLINEAR = 0
RIGHT = -1

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class GeometryError(ValueError):
    """Base class for geometric construction and validation errors."""


class PolygonError(GeometryError):
    """Raised when a polygon violates a construction invariant."""


class SubdivisionError(GeometryError):
    """Raised when a subdivision violates a construction invariant."""


class GeneralPositionError(GeometryError):
    """Raised when an algorithm requires distinct vertex coordinates."""


@dataclass(frozen=True, slots=True)
class Point:
    """A point in the plane (world units)."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinates: ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True, slots=True)
class Segment:
    """A closed segment between two distinct points."""

    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError(f"degenerate segment at {self.a}")

    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    def key(self) -> tuple:
        """Canonical endpoint-ordered key for deduplication."""
        p = (self.a.x, self.a.y)
        q = (self.b.x, self.b.y)
        return (p, q) if p <= q else (q, p)


def orient_xy(ax, ay, bx, by, cx, cy) -> int:
    """Exact sign of the determinant of (b - a, c - a).

    Returns LEFT (+1) if c lies left of the directed line a->b, RIGHT (-1)
    if right, COLLINEAR (0) otherwise.  A floating-point filter handles the
    common case; borderline determinants are recomputed with rational
    arithmetic so the sign is always correct.
    """
    detl = (bx - ax) * (cy - ay)
    detr = (by - ay) * (cx - ax)
    det = detl - detr
    err = _ORIENT_FILTER * (abs(detl) + abs(detr))
    if det > err:
        return LEFT
    if det < -err:
        return RIGHT
    if err == 0.0:
        return COLLINEAR
    det = (Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay)) - (
        Fraction(by) - Fraction(ay)
    ) * (Fraction(cx) - Fraction(ax))
    if det > 0:
        return LEFT
    if det < 0:
        return RIGHT
    return COLLINEAR


def orient(a: Point, b: Point, c: Point) -> int:
    """Exact orientation of the ordered triple (a, b, c)."""
    return orient_xy(a.x, a.y, b.x, b.y, c.x, c.y)


def on_segment_xy(ax, ay, bx, by, px, py) -> bool:
    """Exact test whether p lies on the closed segment a-b."""
    if orient_xy(ax, ay, bx, by, px, py) != COLLINEAR:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def on_segment(a: Point, b: Point, p: Point) -> bool:
    return on_segment_xy(a.x, a.y, b.x, b.y, p.x, p.y)


def segments_intersect(p1: Point, q1: Point, p2: Point, q2: Point) -> bool:
    """Exact closed-intersection test between segments p1-q1 and p2-q2."""
    o1 = orient(p1, q1, p2)
    o2 = orient(p1, q1, q2)
    o3 = orient(p2, q2, p1)
    o4 = orient(p2, q2, q1)
    if o1 != o2 and o3 != o4 and COLLINEAR not in (o1, o2, o3, o4):
        return True
    if o1 == COLLINEAR and on_segment(p1, q1, p2):
        return True
    if o2 == COLLINEAR and on_segment(p1, q1, q2):
        return True
    if o3 == COLLINEAR and on_segment(p2, q2, p1):
        return True
    if o4 == COLLINEAR and on_segment(p2, q2, q1):
        return True
    return False


def segments_properly_intersect(p1: Point, q1: Point, p2: Point, q2: Point) -> bool:
    """True when the segments cross at a point interior to both."""
    o1 = orient(p1, q1, p2)
    o2 = orient(p1, q1, q2)
    o3 = orient(p2, q2, p1)
    o4 = orient(p2, q2, q1)
    return o1 * o2 < 0 and o3 * o4 < 0


def segment_intersection_point(p1: Point, q1: Point, p2: Point, q2: Point) -> Point:
    """Floating-point intersection point of the two supporting lines."""
    x1, y1, x2, y2 = p1.x, p1.y, q1.x, q1.y
    x3, y3, x4, y4 = p2.x, p2.y, q2.x, q2.y
    denom = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    if denom == 0.0:
        raise GeometryError("parallel supporting lines have no unique intersection")
    a = x1 * y2 - y1 * x2
    b = x3 * y4 - y3 * x4
    return Point((a * (x3 - x4) - (x1 - x2) * b) / denom,
                 (a * (y3 - y4) - (y1 - y2) * b) / denom)


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    """Euclidean distance from p to the closed segment a-b."""
    vx, vy = b.x - a.x, b.y - a.y
    wx, wy = p.x - a.x, p.y - a.y
    vv = vx * vx + vy * vy
    t = 0.0 if vv == 0.0 else (wx * vx + wy * vy) / vv
    t = min(1.0, max(0.0, t))
    dx, dy = wx - t * vx, wy - t * vy
    return math.hypot(dx, dy)


def _merge_collinear(pts: list[Point]) -> list[Point]:
    """Drop vertices whose interior angle is exactly pi (collinear chains)."""
    changed = True
    while changed and len(pts) > 3:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, b, c) == COLLINEAR:
                changed = True
            else:
                out.append(b)
        pts = out
    return pts


def _check_boundary_simple(pts: Sequence[Point]) -> None:
    """Verify the closed polyline is simple (no improper edge contact).

    Adjacent edges may share exactly their common endpoint; all other pairs
    must be disjoint.  Uses a sweep over x-sorted edges so typical inputs
    avoid the quadratic pair count.
    """
    n = len(pts)
    edges = [(pts[i], pts[(i + 1) % n], i) for i in range(n)]
    order = sorted(range(n), key=lambda i: min(edges[i][0].x, edges[i][1].x))
    active: list[int] = []
    for idx in order:
        a1, b1, i = edges[idx]
        xmin = min(a1.x, b1.x)
        active = [j for j in active if max(edges[j][0].x, edges[j][1].x) >= xmin]
        for j in active:
            a2, b2, k = edges[j]
            if min(a1.y, b1.y) > max(a2.y, b2.y) or min(a2.y, b2.y) > max(a1.y, b1.y):
                continue
            gap = abs(i - k)
            if gap == 1 or gap == n - 1:
                shared = a1 if a1 in (a2, b2) else b1
                other1 = b1 if shared is a1 else a1
                other2 = b2 if shared == a2 else a2
                if on_segment(a2, b2, other1) or on_segment(a1, b1, other2):
                    raise PolygonError(
                        f"adjacent edges {k} and {i} overlap beyond their shared vertex"
                    )
            else:
                if segments_intersect(a1, b1, a2, b2):
                    raise PolygonError(f"edges {k} and {i} intersect; boundary not simple")
        active.append(idx)


class SimplePolygon:
    """A simple polygon with counter-clockwise vertex order.

    Construction validates the boundary: collinear vertex chains are merged
    (a vertex with interior angle exactly pi does not count toward the
    complexity), the orientation must be counter-clockwise, and the boundary
    must be simple.  Clockwise input is rejected rather than reversed.
    """

    __slots__ = ("vertices", "_area")

    def __init__(self, vertices: Iterable, *, merge_collinear: bool = True,
                 check_simple: bool = True):
        pts = [v if isinstance(v, Point) else Point(float(v[0]), float(v[1]))
               for v in vertices]
        if len(pts) < 3:
            raise PolygonError("a polygon needs at least 3 vertices")
        for i in range(len(pts)):
            if pts[i] == pts[(i + 1) % len(pts)]:
                raise PolygonError(f"repeated consecutive vertex at index {i}")
        if merge_collinear:
            pts = _merge_collinear(pts)
        if len(pts) < 3:
            raise PolygonError("degenerate polygon: all vertices collinear")
        area = _signed_area_points(pts)
        if area <= 0.0:
            raise PolygonError(
                "vertices must be in counter-clockwise order with positive area"
            )
        if check_simple:
            _check_boundary_simple(pts)
        object.__setattr__(self, "vertices", tuple(pts))
        object.__setattr__(self, "_area", area)

    def __setattr__(self, *a):  # immutable after construction
        raise AttributeError("SimplePolygon is immutable")

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"SimplePolygon({len(self.vertices)} vertices, area={self._area:.6g})"

    @property
    def n(self) -> int:
        """Vertex (= edge) count after collinear merging."""
        return len(self.vertices)

    @property
    def area(self) -> float:
        return self._area

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def coords(self) -> np.ndarray:
        """Vertex coordinates as an (n, 2) float array."""
        return np.array([(p.x, p.y) for p in self.vertices], dtype=float)

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def _signed_area_points(pts: Sequence[Point]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return 0.5 * s


def signed_area(poly: SimplePolygon) -> float:
    """Shoelace area of a validated polygon; positive by construction."""
    return poly.area


def contains(poly: SimplePolygon, p: Point) -> str:
    """Classify p against the polygon: INSIDE, BOUNDARY or OUTSIDE.

    Uses even-odd crossing counting with exact orientation predicates, so
    points exactly on an edge or vertex always classify as BOUNDARY.
    """
    v = poly.vertices
    n = len(v)
    px, py = p.x, p.y
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if min(a.x, b.x) <= px <= max(a.x, b.x) and min(a.y, b.y) <= py <= max(a.y, b.y):
            if on_segment(a, b, p):
                return BOUNDARY
    inside = False
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if (a.y > py) != (b.y > py):
            side = orient(a, b, p)
            if b.y > a.y:
                if side == LEFT:
                    inside = not inside
            else:
                if side == RIGHT:
                    inside = not inside
    return INSIDE if inside else OUTSIDE


def dist_to_boundary(p: Point, poly: SimplePolygon) -> float:
    """Shortest Euclidean distance from p to the polygon boundary."""
    v = poly.vertices
    n = len(v)
    best = math.inf
    for i in range(n):
        d = point_segment_distance(p, v[i], v[(i + 1) % n])
        if d < best:
            best = d
    return best


def segment_distances(segments: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Distances from each point to the nearest of the given segments.

    segments: (m, 4) array of (ax, ay, bx, by); pts: (k, 2).  Returns (k,).
    Vectorized; used by the sampling oracles and the benchmark harness.
    """
    if len(segments) == 0:
        return np.full(len(pts), np.inf)
    a = segments[:, 0:2][None, :, :]          # (1, m, 2)
    b = segments[:, 2:4][None, :, :]
    p = pts[:, None, :]                        # (k, 1, 2)
    ab = b - a
    ap = p - a
    denom = np.einsum("kmi,kmi->km", ab, ab)
    t = np.einsum("kmi,kmi->km", ap, ab) / np.where(denom == 0.0, 1.0, denom)
    t = np.clip(t, 0.0, 1.0)
    closest = a + t[:, :, None] * ab
    d = np.linalg.norm(p - closest, axis=2)
    return d.min(axis=1)


def boundary_distances(poly: SimplePolygon, pts: np.ndarray) -> np.ndarray:
    """Vectorized dist_to_boundary for an array of query points."""
    v = poly.coords()
    segs = np.concatenate([v, np.roll(v, -1, axis=0)], axis=1)
    return segment_distances(segs, pts)


@dataclass(frozen=True)
class GeneralPositionReport:
    """Result of the distinct-coordinate check.

    ok is True iff all vertex x coordinates are pairwise distinct and all y
    coordinates are pairwise distinct.  Offending index pairs are listed.
    """

    ok: bool
    x_pairs: tuple[tuple[int, int], ...]
    y_pairs: tuple[tuple[int, int], ...]


def validate_general_position(poly: SimplePolygon) -> GeneralPositionReport:
    """Report vertex pairs sharing an x or a y coordinate."""
    xs = sorted(range(len(poly.vertices)), key=lambda i: poly.vertices[i].x)
    ys = sorted(range(len(poly.vertices)), key=lambda i: poly.vertices[i].y)
    x_pairs = []
    y_pairs = []
    for k in range(len(xs) - 1):
        i, j = xs[k], xs[k + 1]
        if poly.vertices[i].x == poly.vertices[j].x:
            x_pairs.append((min(i, j), max(i, j)))
    for k in range(len(ys) - 1):
        i, j = ys[k], ys[k + 1]
        if poly.vertices[i].y == poly.vertices[j].y:
            y_pairs.append((min(i, j), max(i, j)))
    return GeneralPositionReport(not x_pairs and not y_pairs,
                                 tuple(x_pairs), tuple(y_pairs))


#: Fixed angle used by the deterministic general-position remedy rotation.
GP_ROTATION_ANGLE = 1e-3


def rotated_polygon(poly: SimplePolygon, angle: float = GP_ROTATION_ANGLE,
                    about: Point | None = None) -> tuple[SimplePolygon, "Rotation"]:
    """Rotate a polygon by a fixed angle to restore coordinate distinctness.

    Returns the rotated polygon and the Rotation that maps original points
    into the rotated frame (and back via .inverse()).
    """
    if about is None:
        about = polygon_centroid(poly)
    rot = Rotation(angle, about)
    pts = [rot.apply(p) for p in poly.vertices]
    return SimplePolygon(pts, merge_collinear=False, check_simple=False), rot


@dataclass(frozen=True)
class Rotation:
    """Rigid rotation about a fixed point."""

    angle: float
    about: Point

    def apply(self, p: Point) -> Point:
        c, s = math.cos(self.angle), math.sin(self.angle)
        dx, dy = p.x - self.about.x, p.y - self.about.y
        return Point(self.about.x + c * dx - s * dy, self.about.y + s * dx + c * dy)

    def inverse(self) -> "Rotation":
        return Rotation(-self.angle, self.about)


def polygon_centroid(poly: SimplePolygon) -> Point:
    """Area centroid of the polygon."""
    cx = cy = 0.0
    a = 0.0
    v = poly.vertices
    n = len(v)
    for i in range(n):
        p, q = v[i], v[(i + 1) % n]
        cross = p.x * q.y - q.x * p.y
        a += cross
        cx += (p.x + q.x) * cross
        cy += (p.y + q.y) * cross
    a *= 0.5
    return Point(cx / (6.0 * a), cy / (6.0 * a))


def ear_clip_triangles(poly: SimplePolygon) -> list[tuple[int, int, int]]:
    """Triangulate a simple polygon by ear clipping (vertex index triples)."""
    v = list(poly.vertices)
    idx = list(range(len(v)))
    out: list[tuple[int, int, int]] = []
    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 2 * len(v) * len(v):
            raise PolygonError("ear clipping failed to make progress")
        n = len(idx)
        clipped = False
        for k in range(n):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % n]
            a, b, c = v[i0], v[i1], v[i2]
            if orient(a, b, c) != LEFT:
                continue
            ok = True
            for j in idx:
                if j in (i0, i1, i2):
                    continue
                p = v[j]
                if (orient(a, b, p) != RIGHT and orient(b, c, p) != RIGHT
                        and orient(c, a, p) != RIGHT):
                    ok = False
                    break
            if ok:
                out.append((i0, i1, i2))
                idx.pop(k)
                clipped = True
                break
        if not clipped:
            raise PolygonError("no ear found; polygon may not be simple")
    out.append((idx[0], idx[1], idx[2]))
    return out


def interior_point(poly: SimplePolygon) -> Point:
    """A point strictly inside the polygon.

    Centroid of the largest-area triangle of an ear-clipping triangulation,
    which is strictly interior for any simple polygon.
    """
    best = None
    best_area = -1.0
    for (i, j, k) in ear_clip_triangles(poly):
        a, b, c = poly.vertices[i], poly.vertices[j], poly.vertices[k]
        area = 0.5 * abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))
        if area > best_area:
            best_area = area
            best = Point((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    assert best is not None
    return best


def sample_in_polygon(poly: SimplePolygon, rng: np.random.Generator,
                      count: int) -> np.ndarray:
    """Uniform samples inside a simple polygon via its triangulation."""
    tris = ear_clip_triangles(poly)
    v = poly.coords()
    a = v[[t[0] for t in tris]]
    b = v[[t[1] for t in tris]]
    c = v[[t[2] for t in tris]]
    areas = 0.5 * np.abs(np.cross(b - a, c - a))
    weights = areas / areas.sum()
    pick = rng.choice(len(tris), size=count, p=weights)
    r1 = np.sqrt(rng.random(count))[:, None]
    r2 = rng.random(count)[:, None]
    return (1 - r1) * a[pick] + r1 * (1 - r2) * b[pick] + r1 * r2 * c[pick]


class Subdivision:
    """A planar polygonal subdivision with per-face query probabilities.

    Faces are simple polygons whose interiors are pairwise disjoint; shared
    boundaries may be non-conforming (T-junctions are allowed).  gammas sum
    to 1 within 1e-9; omit them for the uniform distribution.  The boundary
    of the query domain is the union of the deduplicated face edges, and
    ``bounds`` is an axis-aligned bounding square.
    """

    __slots__ = ("faces", "gammas", "edges", "bounds")

    def __init__(self, faces: Sequence[SimplePolygon],
                 gammas: Sequence[float] | None = None, *, validate: bool = True):
        faces = tuple(faces)
        if not faces:
            raise SubdivisionError("a subdivision needs at least one face")
        if gammas is None:
            gammas = tuple(1.0 / len(faces) for _ in faces)
        else:
            gammas = tuple(float(g) for g in gammas)
            if len(gammas) != len(faces):
                raise SubdivisionError("one probability per face is required")
            if any(g < 0.0 for g in gammas):
                raise SubdivisionError("face probabilities must be nonnegative")
            if abs(sum(gammas) - 1.0) > 1e-9:
                raise SubdivisionError(
                    f"weights must sum to 1 (got {sum(gammas)!r})"
                )
        seen = {}
        for f in faces:
            for (a, b) in f.edges():
                seg = Segment(a, b)
                seen.setdefault(seg.key(), seg)
        edges = tuple(seen.values())
        xmin = min(p.x for f in faces for p in f.vertices)
        xmax = max(p.x for f in faces for p in f.vertices)
        ymin = min(p.y for f in faces for p in f.vertices)
        ymax = max(p.y for f in faces for p in f.vertices)
        side = max(xmax - xmin, ymax - ymin)
        if side <= 0.0:
            raise SubdivisionError("subdivision has no extent")
        cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
        bounds = (cx - 0.5 * side, cy - 0.5 * side, side)
        if validate:
            _check_no_edge_crossings(edges)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "bounds", bounds)

    def __setattr__(self, *a):
        raise AttributeError("Subdivision is immutable")

    def __repr__(self):
        return (f"Subdivision({len(self.faces)} faces, "
                f"{len(self.edges)} edges)")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 4) array of (ax, ay, bx, by)."""
        return np.array([(s.a.x, s.a.y, s.b.x, s.b.y) for s in self.edges],
                        dtype=float)

    def locate_face(self, p: Point) -> int:
        """Brute-force face index containing p; -1 for the outer face.

        Points exactly on a shared boundary report one incident face (the
        lowest-index face whose closed region contains p).
        """
        for i, f in enumerate(self.faces):
            x0, y0, x1, y1 = f.bbox()
            if not (x0 <= p.x <= x1 and y0 <= p.y <= y1):
                continue
            if contains(f, p) != OUTSIDE:
                return i
        return -1

    def boundary_distance(self, p: Point) -> float:
        """Distance from p to the nearest subdivision edge."""
        return min(point_segment_distance(p, s.a, s.b) for s in self.edges)


def _check_no_edge_crossings(edges: Sequence[Segment]) -> None:
    """Reject subdivisions whose edges properly cross.

    Shared endpoints and collinear overlap (non-conforming shared borders)
    are allowed; transversal crossings are not.
    """
    items = sorted(edges, key=lambda s: min(s.a.x, s.b.x))
    active: list[Segment] = []
    for s in items:
        xmin = min(s.a.x, s.b.x)
        active = [t for t in active if max(t.a.x, t.b.x) >= xmin]
        for t in active:
            if min(s.a.y, s.b.y) > max(t.a.y, t.b.y) or \
               min(t.a.y, t.b.y) > max(s.a.y, s.b.y):
                continue
            if segments_properly_intersect(s.a, s.b, t.a, t.b):
                raise SubdivisionError(f"edges cross: {t} x {s}")
        active.append(s)
