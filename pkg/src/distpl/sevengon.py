"""Decomposition of simple polygons into convex pieces of at most 7 vertices.

Pieces are produced by growing and pushing axis-aligned squares through the
polygon.  The polygon is first cut by four axis-aligned rays from an interior
point into recursion pieces bounded by up to two orthogonal cut edges meeting
at a corner plus a chain of original polygon edges.  Inside each piece a
square grows from the corner and then slides while keeping contact with the
piece boundary; the union of all squares swept is one convex output region.
Every swept square stays inside the polygon and touches the polygon boundary
(directly, or through the final growth square that contains it), so any point
of a region of area A is at distance at most sqrt(2 A) from the polygon
boundary, which yields the 1/2 area-vs-distance certificate.

The remainder of a piece is split into new recursion pieces by axis-aligned
rays shot from region vertices, and the process recurses.  Event finding is
done by linear scans over the current piece boundary.

Sweep phases and transitions (canonical frame: floor along +x from the
corner, wall along +y, floor at least as long as the wall):

  A  grow from the corner            -> B (top-left corner meets an edge)
                                     -> E + F (top-right corner meets an edge)
  B  slide right on the floor        -> C (bottom-right corner meets an edge)
                                     -> D + F (top-right corner meets an edge)
  C  slide up-right on two contacts  -> D + G
  D  slide up under two edges        (terminal only)
  E  slide up along the wall         -> D (top-left corner meets an edge)
  F  slide right under an edge       -> G (bottom-right corner meets an edge)
  G  slide right between two edges   (terminal only)
  H  slide up along the wall with the bottom-right corner on an edge; the
     mirror image of B, reachable only after the growth square outgrows the
     wall through a left-leaning boundary pocket.  -> C, or E + G.

Every phase ends when an original polygon vertex lands on the square
boundary (terminal), when a sliding contact reaches the end of its edge
(terminal), or when the square collapses to a point (terminal).

General position (pairwise distinct vertex x and y coordinates) is required;
callers can request a fixed small rotation to restore it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    GeneralPositionError,
    GeometryError,
    INSIDE,
    Point,
    SimplePolygon,
    contains,
    interior_point,
    rotated_polygon,
    validate_general_position,
)

#: Certificate constant of the decomposition: every point p of the input
#: lies in a region of area at least ALPHA * d(p)^2.
ALPHA = 0.5

_REL = 1e-9  # relative tolerance for event ties and classification


class SweepError(GeometryError):
    """Internal invariant violation during the square sweep."""


# ---------------------------------------------------------------------------
# recursion pieces


@dataclass
class RecursionPolygon:
    """A recursion piece in world coordinates.

    ``cycle`` is the CCW boundary: cycle[0] is the corner, cycle[1] the far
    end of the first cut edge, then the chain of original polygon edges, and
    (when has_v) the last point is the far end of the second cut edge.  Each
    entry is (x, y, is_polygon_vertex); cut endpoints created by rays or
    region contacts do not count as polygon vertices.
    """

    cycle: list[tuple[float, float, bool]]
    has_v: bool
    face: int = 0

    def area(self) -> float:
        s = 0.0
        c = self.cycle
        for i in range(len(c)):
            x0, y0, _ = c[i]
            x1, y1, _ = c[(i + 1) % len(c)]
            s += x0 * y1 - x1 * y0
        return 0.5 * s

    def interior_vertex_count(self) -> int:
        """Polygon vertices on the chain, excluding cut-edge endpoints."""
        lo = 2
        hi = len(self.cycle) - (2 if self.has_v else 1)
        return sum(1 for i in range(lo, hi + 1) if self.cycle[i][2])


@dataclass(frozen=True)
class _Frame:
    """Signed-permutation isometry mapping a piece to canonical position."""

    swap: bool
    sx: float
    sy: float
    ox: float
    oy: float

    def fwd(self, x: float, y: float) -> tuple[float, float]:
        u, w = x - self.ox, y - self.oy
        if self.swap:
            u, w = w, u
        return self.sx * u, self.sy * w

    def inv(self, u: float, w: float) -> tuple[float, float]:
        u, w = u / self.sx, w / self.sy
        if self.swap:
            u, w = w, u
        return u + self.ox, w + self.oy

    @property
    def det(self) -> float:
        d = self.sx * self.sy
        return -d if self.swap else d


class _CanonPiece:
    """A recursion piece in canonical coordinates.

    Corner at the origin, the longer cut edge (the floor) along +x with
    length lh, the other cut edge (the wall) along +y with length lv >= 0,
    and the chain running CCW from (lh, 0) to (0, lv) (to the corner itself
    when lv == 0).  ``pts`` holds the chain vertices including both ends;
    ``flags`` marks original polygon vertices.
    """

    __slots__ = ("lh", "lv", "pts", "flags", "frame", "face", "scale")

    def __init__(self, rp: RecursionPolygon):
        cyc = rp.cycle
        cx, cy, cflag = cyc[0]
        hx, hy, _ = cyc[1]
        if rp.has_v:
            vx, vy, _ = cyc[-1]
        else:
            vx, vy = cx, cy
        frame = self._find_frame(rp, cx, cy, hx, hy, vx, vy)
        pts = [frame.fwd(x, y) for (x, y, _f) in cyc]
        flags = [f for (_x, _y, f) in cyc]
        if frame.det < 0:
            pts = [pts[0]] + pts[:0:-1]
            flags = [flags[0]] + flags[:0:-1]
        ex, ey = pts[1]
        if not (ex > 0 and abs(ey) <= _REL * max(1.0, ex)):
            raise SweepError("canonicalization failed: floor not along +x")
        self.lh = ex
        self.lv = pts[-1][1] if rp.has_v else 0.0
        chain_pts = list(pts[1:])
        chain_flags = list(flags[1:])
        if not rp.has_v:
            chain_pts.append((0.0, 0.0))
            chain_flags.append(cflag)
        chain_pts[0] = (self.lh, 0.0)
        if rp.has_v:
            chain_pts[-1] = (0.0, self.lv)
        else:
            chain_pts[-1] = (0.0, 0.0)
        self.pts = chain_pts
        self.flags = chain_flags
        self.frame = frame
        self.face = rp.face
        self.scale = max(self.lh,
                         max(abs(x) for x, _ in chain_pts),
                         max(abs(y) for _, y in chain_pts))

    @staticmethod
    def _find_frame(rp, cx, cy, hx, hy, vx, vy) -> "_Frame":
        def on_plus_x(x, y):
            return x > 0 and abs(y) <= _REL * max(1.0, abs(x))

        def on_plus_y(x, y):
            return y > 0 and abs(x) <= _REL * max(1.0, abs(y))

        for swap in (False, True):
            for sx in (1.0, -1.0):
                for sy in (1.0, -1.0):
                    f = _Frame(swap, sx, sy, cx, cy)
                    ex, ey = f.fwd(hx, hy)
                    if rp.has_v:
                        wx, wy = f.fwd(vx, vy)
                        # direct: first cut edge becomes the floor (det > 0)
                        if on_plus_x(ex, ey) and on_plus_y(wx, wy) \
                                and ex >= wy * (1.0 - _REL) and f.det > 0:
                            return f
                        # transposed: second cut edge becomes the floor; the
                        # reflection is undone by reversing the cycle
                        if on_plus_x(wx, wy) and on_plus_y(ex, ey) \
                                and wx >= ey * (1.0 - _REL) and f.det < 0:
                            return f
                    else:
                        # single cut edge: the unique rotation aligning it
                        # with +x (the CCW cycle keeps the piece above)
                        if on_plus_x(ex, ey) and f.det > 0:
                            return f
        raise SweepError("piece cut edges are not orthogonal axis-aligned")

    @property
    def n_edges(self) -> int:
        return len(self.pts) - 1

    def edge(self, i: int) -> tuple[float, float, float, float]:
        (x0, y0), (x1, y1) = self.pts[i], self.pts[i + 1]
        return x0, y0, x1, y1

    def edge_slope(self, i: int) -> float:
        x0, y0, x1, y1 = self.edge(i)
        dx = x1 - x0
        if dx == 0.0:
            raise SweepError("axis-parallel chain edge: general position required")
        return (y1 - y0) / dx

    def polygon_points(self) -> list[tuple[float, float]]:
        return [(0.0, 0.0)] + [(x, y) for (x, y) in self.pts]


# ---------------------------------------------------------------------------
# seeding


def seed_rays(poly: SimplePolygon, p0: Point) -> list[RecursionPolygon]:
    """Cut the polygon by four axis-aligned rays from an interior point.

    Returns up to four recursion pieces whose union is the polygon; each has
    two orthogonal cut edges meeting at p0.  Degenerate slivers (two rays
    hitting the same boundary point) are dropped.
    """
    if contains(poly, p0) != INSIDE:
        raise GeometryError("seed point must be strictly interior")
    hits = [_ray_hit(poly, p0, d) for d in ((1, 0), (0, 1), (-1, 0), (0, -1))]
    pieces = []
    for k in range(4):
        a, b = hits[k], hits[(k + 1) % 4]
        chain = _boundary_walk(poly, a, b)
        cyc = [(p0.x, p0.y, False)] + chain
        if len(cyc) < 3:
            continue
        rp = RecursionPolygon(cyc, has_v=True)
        if abs(rp.area()) <= 1e-12 * poly.area:
            continue
        if rp.area() < 0:
            raise SweepError("seed piece has wrong orientation")
        pieces.append(rp)
    total = sum(p.area() for p in pieces)
    if abs(total - poly.area) > 1e-9 * poly.area:
        raise SweepError("seed pieces do not partition the polygon")
    return pieces


@dataclass(frozen=True)
class _BoundaryPos:
    edge: int          # boundary edge index i: segment v[i] -> v[i+1]
    t: float           # parameter along the edge
    x: float
    y: float
    at_vertex: int     # vertex index when the hit is a polygon vertex, else -1


def _ray_hit(poly: SimplePolygon, p0: Point, d: tuple[int, int]) -> _BoundaryPos:
    """First boundary point hit by the axis-aligned ray from p0.

    Crossings are counted with a half-open rule on the transverse span, so a
    ray through a vertex yields exactly one hit, located at the vertex.
    """
    v = poly.vertices
    n = len(v)
    best = None
    best_dist = math.inf
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if d[0] != 0:
            ya, yb = a.y - p0.y, b.y - p0.y
            if (ya > 0) == (yb > 0):
                continue
            t = ya / (ya - yb)
            dist = (a.x + t * (b.x - a.x) - p0.x) * d[0]
        else:
            xa, xb = a.x - p0.x, b.x - p0.x
            if (xa > 0) == (xb > 0):
                continue
            t = xa / (xa - xb)
            dist = (a.y + t * (b.y - a.y) - p0.y) * d[1]
        if 0.0 < dist < best_dist:
            best_dist = dist
            best = (i, t)
    if best is None:
        raise SweepError("axis ray found no boundary hit")
    i, t = best
    a, b = v[i], v[(i + 1) % n]
    if d[0] != 0:
        x, y = a.x + t * (b.x - a.x), p0.y
    else:
        x, y = p0.x, a.y + t * (b.y - a.y)
    at_vertex = -1
    eps = 1e-12 * max(1.0, abs(x), abs(y))
    if abs(x - a.x) <= eps and abs(y - a.y) <= eps:
        at_vertex, x, y = i, a.x, a.y
    elif abs(x - b.x) <= eps and abs(y - b.y) <= eps:
        at_vertex, x, y = (i + 1) % n, b.x, b.y
    return _BoundaryPos(i, t, x, y, at_vertex)


def _boundary_walk(poly: SimplePolygon, a: _BoundaryPos, b: _BoundaryPos
                   ) -> list[tuple[float, float, bool]]:
    """Boundary points from position a CCW to position b, inclusive."""
    v = poly.vertices
    n = len(v)
    out = [(a.x, a.y, a.at_vertex >= 0)]
    if a.edge == b.edge and a.t < b.t:
        if (b.x, b.y) != (a.x, a.y):
            out.append((b.x, b.y, b.at_vertex >= 0))
        return out
    i = a.edge
    guard = 0
    while True:
        guard += 1
        if guard > n + 2:
            raise SweepError("boundary walk did not terminate")
        nxt = (i + 1) % n
        p = v[nxt]
        if (p.x, p.y) != (out[-1][0], out[-1][1]):
            out.append((p.x, p.y, True))
        i = nxt
        if i == b.edge:
            break
    if (b.x, b.y) != (out[-1][0], out[-1][1]):
        out.append((b.x, b.y, b.at_vertex >= 0))
    return out


# ---------------------------------------------------------------------------
# square sweep


@dataclass(frozen=True)
class SweptSquareState:
    """One phase of the square motion inside a recursion piece.

    ``square`` is the phase-end square as (lower-left x, lower-left y, side)
    in the canonical frame of the piece.  ``contacts`` names the maintained
    contacts: 'floor', 'wall', or (corner, chain edge index) with corner in
    {'nw', 'ne', 'se'}.  ``terminal`` is None while the motion continues,
    else 'vertex', 'contact-end' or 'collapse'.
    """

    case: str
    start_square: tuple[float, float, float]
    square: tuple[float, float, float]
    contacts: tuple
    terminal: str | None = None
    terminal_vertex: int | None = None
    next_contacts: tuple = ()

    @property
    def is_terminal(self) -> bool:
        return self.terminal is not None


_CASE_BY_CONTACTS = {
    frozenset(("floor", "wall")): "A",
    frozenset(("floor", "nw")): "B",
    frozenset(("nw", "se")): "C",
    frozenset(("nw", "ne")): "D",
    frozenset(("wall", "ne")): "E",
    frozenset(("floor", "ne")): "F",
    frozenset(("ne", "se")): "G",
    frozenset(("wall", "se")): "H",
}

# watched transition corners per case and their continuation contact sets
_TRANSITIONS = {
    "A": {"nw": [("floor", "nw")], "ne": [("wall", "ne"), ("floor", "ne")],
          "se": [("wall", "se")]},
    "B": {"se": [("nw", "se")], "ne": [("nw", "ne"), ("floor", "ne")]},
    "C": {"ne": [("nw", "ne"), ("ne", "se")]},
    "D": {},
    "E": {"nw": [("nw", "ne")]},
    "F": {"se": [("ne", "se")]},
    "G": {},
    "H": {"nw": [("nw", "se")], "ne": [("wall", "ne"), ("ne", "se")]},
}


def _contact_names(contacts) -> frozenset:
    return frozenset(c if isinstance(c, str) else c[0] for c in contacts)


def _contact_edge(contacts, name) -> int | None:
    for c in contacts:
        if not isinstance(c, str) and c[0] == name:
            return c[1]
    return None


class _Phase:
    """A one-parameter square motion with a fixed contact set."""

    __slots__ = ("piece", "case", "contacts", "sq0", "v")

    def __init__(self, piece: _CanonPiece, contacts: tuple,
                 sq0: tuple[float, float, float]):
        self.piece = piece
        self.contacts = contacts
        names = _contact_names(contacts)
        case = _CASE_BY_CONTACTS.get(names)
        if case is None:
            raise SweepError(f"no sweep case for contact set {sorted(names)}")
        self.case = case
        self.sq0 = sq0
        self.v = self._velocity()

    def _slope(self, name: str) -> float:
        idx = _contact_edge(self.contacts, name)
        return self.piece.edge_slope(idx)

    def _velocity(self) -> tuple[float, float, float]:
        case = self.case
        if case == "A":
            return (0.0, 0.0, 1.0)
        if case == "B":
            m1 = self._slope("nw")
            if m1 <= 0:
                raise SweepError("case B requires a rising left contact edge")
            return (1.0, 0.0, m1)
        if case == "C":
            m1, m2 = self._slope("nw"), self._slope("se")
            if m1 <= 0 or m2 <= 0:
                raise SweepError("case C requires rising contact edges")
            return (1.0, m2 * (1 + m1) / (1 + m2), (m1 - m2) / (1 + m2))
        if case == "D":
            m1, m3 = self._slope("nw"), self._slope("ne")
            if m1 <= 0 or m3 >= 0:
                raise SweepError("case D requires rising left, falling right")
            vs = 1.0 / m3 - 1.0 / m1
            return (1.0 / m1, 1.0 - vs, vs)
        if case == "E":
            m3 = self._slope("ne")
            if m3 >= 0:
                raise SweepError("case E requires a falling contact edge")
            return (0.0, 1.0, -1.0 / (1.0 - m3))
        if case == "F":
            m3 = self._slope("ne")
            if m3 >= 0:
                raise SweepError("case F requires a falling contact edge")
            return (1.0, 0.0, m3 / (1.0 - m3))
        if case == "G":
            m3, m2 = self._slope("ne"), self._slope("se")
            if m3 >= 0 or m2 <= 0:
                raise SweepError("case G requires falling top, rising bottom")
            vs = m3 - m2
            return (1.0 - vs, m2, vs)
        if case == "H":
            m2 = self._slope("se")
            if m2 <= 0:
                raise SweepError("case H requires a rising contact edge")
            return (0.0, 1.0, 1.0 / m2)
        raise SweepError(f"unknown case {case}")

    def square_at(self, t: float) -> tuple[float, float, float]:
        x0, y0, s0 = self.sq0
        vx, vy, vs = self.v
        return (x0 + vx * t, y0 + vy * t, s0 + vs * t)

    def corner_path(self, name: str):
        """Position and velocity of a square corner along the motion."""
        x0, y0, s0 = self.sq0
        vx, vy, vs = self.v
        if name == "nw":
            return (x0, y0 + s0), (vx, vy + vs)
        if name == "ne":
            return (x0 + s0, y0 + s0), (vx + vs, vy + vs)
        if name == "se":
            return (x0 + s0, y0), (vx + vs, vy)
        if name == "sw":
            return (x0, y0), (vx, vy)
        raise SweepError(f"unknown corner {name}")


@dataclass(frozen=True)
class _Event:
    t: float
    kind: str            # 'vertex' | 'contact-end' | 'collapse' | 'transition'
    rank: tuple          # deterministic tie order within a kind class
    vertex: int | None = None
    corner: str | None = None
    edge: int | None = None


def _interval_entry(a: float, b: float, t_lo: float) -> float | None:
    """Smallest t >= t_lo with a + b t >= 0, or None."""
    if b == 0.0:
        return t_lo if a >= 0.0 else None
    t = -a / b
    if b > 0.0:
        return max(t, t_lo)
    return t_lo if t >= t_lo else None


def _vertex_entry_time(phase: _Phase, wx: float, wy: float) -> float | None:
    """First t >= 0 at which (wx, wy) lies in the closed moving square."""
    x0, y0, s0 = phase.sq0
    vx, vy, vs = phase.v
    lo, hi = 0.0, math.inf
    # wx - x(t) >= 0 ; x(t)+s(t) - wx >= 0 ; wy - y(t) >= 0 ; y+s - wy >= 0
    for (a, b) in (
        (wx - x0, -vx),
        (x0 + s0 - wx, vx + vs),
        (wy - y0, -vy),
        (y0 + s0 - wy, vy + vs),
    ):
        if b == 0.0:
            if a < 0.0:
                return None
            continue
        t = -a / b
        if b > 0.0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    if lo > hi:
        return None
    return lo


def _phase_events(phase: _Phase) -> list[_Event]:
    piece = phase.piece
    eps = _REL * max(piece.scale, 1e-300)
    events: list[_Event] = []
    contact_edges = {c[1] for c in phase.contacts if not isinstance(c, str)}

    # vertex entries (interior polygon vertices only)
    for i in range(1, len(piece.pts) - 1):
        if not piece.flags[i]:
            continue
        t = _vertex_entry_time(phase, *piece.pts[i])
        if t is not None and t >= -eps:
            events.append(_Event(max(t, 0.0), "vertex", (0, i), vertex=i))

    # contact ends: a riding corner reaches an endpoint of its edge
    for c in phase.contacts:
        if isinstance(c, str):
            continue
        name, eidx = c
        (px, py), (qx, qy) = phase.corner_path(name)
        x0, y0, x1, y1 = piece.edge(eidx)
        dx, dy = x1 - x0, y1 - y0
        dd = dx * dx + dy * dy
        # param along edge: xi(t) = (c(t)-e0).d / |d|^2, linear in t
        xi0 = ((px - x0) * dx + (py - y0) * dy) / dd
        dxi = (qx * dx + qy * dy) / dd
        last = len(piece.pts) - 1
        for target, endpoint in ((0.0, eidx), (1.0, eidx + 1)):
            if dxi == 0.0:
                continue
            t = (target - xi0) / dxi
            if t >= eps:
                # chain-end endpoints are cut-edge endpoints: they terminate
                # the motion but never count as polygon-vertex hits
                flagged = piece.flags[endpoint] and endpoint not in (0, last)
                kind = "vertex" if flagged else "contact-end"
                events.append(
                    _Event(t, kind, (1, endpoint), vertex=endpoint, corner=name)
                )

    # collapse
    vs = phase.v[2]
    if vs < 0.0:
        t = -phase.sq0[2] / vs
        if t >= -eps:
            events.append(_Event(max(t, 0.0), "collapse", (9,)))

    # transitions: watched corners hitting chain edge interiors
    for corner in _TRANSITIONS[phase.case]:
        (px, py), (qx, qy) = phase.corner_path(corner)
        for eidx in range(piece.n_edges):
            if eidx in contact_edges:
                continue
            x0, y0, x1, y1 = piece.edge(eidx)
            # line through edge: n.(p - e0) = 0 with n = (-(y1-y0), x1-x0)
            nx, ny = -(y1 - y0), x1 - x0
            denom = nx * qx + ny * qy
            num = nx * (px - x0) + ny * (py - y0)
            if denom == 0.0:
                continue
            t = -num / denom
            if t < -eps:
                continue
            cx, cy = px + qx * t, py + qy * t
            dx, dy = x1 - x0, y1 - y0
            dd = dx * dx + dy * dy
            xi = ((cx - x0) * dx + (cy - y0) * dy) / dd
            if xi < -_REL or xi > 1.0 + _REL:
                continue
            events.append(
                _Event(max(t, 0.0), "transition", (5 if corner == "se" else 4, eidx),
                       corner=corner, edge=eidx)
            )
    events.sort(key=lambda e: (e.t, e.rank))
    return events


def _segment_hits_open_square(x0, y0, x1, y1, sq) -> bool:
    """True when segment (x0,y0)-(x1,y1) meets the open square interior."""
    sx, sy, s = sq
    if s <= 0.0:
        return False
    lo_x, hi_x, lo_y, hi_y = sx, sx + s, sy, sy + s
    # Liang-Barsky clip of the segment against the open box
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0 - lo_x), (dx, hi_x - x0), (-dy, y0 - lo_y), (dy, hi_y - y0)):
        if p == 0.0:
            if q <= 0.0:
                return False
            continue
        r = q / p
        if p < 0.0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
    return t0 < t1


def _point_in_open_square(px, py, sq) -> bool:
    sx, sy, s = sq
    return sx < px < sx + s and sy < py < sy + s


def _pick_event(phase: _Phase) -> _Event:
    piece = phase.piece
    # tie window: only near-exact coincidences may be regrouped, otherwise a
    # blocking transition marginally before a vertex would be overridden and
    # the square would overshoot through the contact edge
    eps = 1e-3 * _REL * max(piece.scale, 1e-300)
    events = _phase_events(phase)
    i = 0
    while i < len(events):
        ev = events[i]
        # lookahead step: half the gap to the next distinct candidate time
        dt = 1e-6 * piece.scale
        for later in events[i + 1:]:
            if later.t > ev.t + eps:
                dt = min(dt, 0.5 * (later.t - ev.t))
                break
        dt = max(dt, 10 * eps)
        sq_next = phase.square_at(ev.t + dt)
        if ev.kind == "vertex" and ev.corner is None:
            wx, wy = piece.pts[ev.vertex]
            if not _point_in_open_square(wx, wy, sq_next):
                i += 1
                continue
        elif ev.kind == "transition":
            x0, y0, x1, y1 = piece.edge(ev.edge)
            if not _segment_hits_open_square(x0, y0, x1, y1, sq_next):
                i += 1
                continue
        # collect the tie group and prefer terminals, then lowest rank
        group = [ev]
        for later in events[i + 1:]:
            if later.t <= ev.t + eps:
                group.append(later)
            else:
                break
        order = {"vertex": 0, "contact-end": 1, "collapse": 2, "transition": 3}
        group.sort(key=lambda e: (order[e.kind], e.rank))
        chosen = group[0]
        if chosen.kind == "transition":
            # validate the tied transition the same way
            x0, y0, x1, y1 = piece.edge(chosen.edge)
            if not _segment_hits_open_square(x0, y0, x1, y1,
                                             phase.square_at(chosen.t + dt)):
                chosen = ev
        return chosen
    raise SweepError(f"case {phase.case}: no blocking event found")


def _start_phases(piece: _CanonPiece) -> list[_Phase]:
    """Initial phase(s) of the sweep for a canonical piece."""
    origin = (0.0, 0.0, 0.0)
    if piece.lv > 0.0:
        return [_Phase(piece, ("floor", "wall"), origin)]
    # zero-length wall: the chain meets the corner; if its edge rises to the
    # right the square is in contact immediately and slides (case B).
    last = piece.n_edges - 1
    x0, y0, x1, y1 = piece.edge(last)  # ends at the corner (x1,y1)=(0,0)
    if x0 > 0.0 and y0 > 0.0:
        return [_Phase(piece, ("floor", ("nw", last)), origin)]
    return [_Phase(piece, ("floor", "wall"), origin)]


def run_sweep(piece: _CanonPiece) -> list[SweptSquareState]:
    """Run the full square motion; returns all phases over all branches."""
    states: list[SweptSquareState] = []
    stack = _start_phases(piece)
    guard = 0
    while stack:
        phase = stack.pop()
        guard += 1
        if guard > 16 + 4 * piece.n_edges:
            raise SweepError("sweep did not terminate")
        ev = _pick_event(phase)
        end_sq = phase.square_at(ev.t)
        if ev.kind == "transition":
            branches = _TRANSITIONS[phase.case][ev.corner]
            new_lists = []
            for branch in branches:
                contacts = []
                for name in branch:
                    if name in ("floor", "wall"):
                        contacts.append(name)
                    else:
                        kept = _contact_edge(phase.contacts, name)
                        contacts.append((name, ev.edge if name == ev.corner
                                         else kept))
                new_lists.append(tuple(contacts))
            states.append(SweptSquareState(
                phase.case, phase.sq0, end_sq, phase.contacts,
                next_contacts=tuple(new_lists)))
            for contacts in new_lists:
                stack.append(_Phase(piece, contacts, end_sq))
        else:
            states.append(SweptSquareState(
                phase.case, phase.sq0, end_sq, phase.contacts,
                terminal=ev.kind if ev.kind != "vertex" else "vertex",
                terminal_vertex=ev.vertex))
    return states


# public views of the sweep used by callers and tests -----------------------


def grow_from_corner(rp: RecursionPolygon) -> SweptSquareState:
    """Run the initial growth phase and report its end state."""
    piece = _CanonPiece(rp)
    phase = _start_phases(piece)[0]
    ev = _pick_event(phase)
    end_sq = phase.square_at(ev.t)
    if ev.kind == "transition":
        branches = _TRANSITIONS[phase.case][ev.corner]
        nxt = tuple(
            tuple(n if n in ("floor", "wall") else (n, ev.edge) for n in b)
            for b in branches
        )
        return SweptSquareState(phase.case, phase.sq0, end_sq, phase.contacts,
                                next_contacts=nxt)
    return SweptSquareState(phase.case, phase.sq0, end_sq, phase.contacts,
                            terminal=ev.kind, terminal_vertex=ev.vertex)


def push_square(state: SweptSquareState, rp: RecursionPolygon
                ) -> list[SweptSquareState]:
    """Advance the motion by one phase from a non-terminal state.

    Returns the next state per continuation branch (two entries after a
    split, one otherwise); an empty list if the given state was terminal.
    """
    if state.is_terminal:
        return []
    piece = _CanonPiece(rp)
    out = []
    for contacts in state.next_contacts:
        phase = _Phase(piece, contacts, state.square)
        ev = _pick_event(phase)
        end_sq = phase.square_at(ev.t)
        if ev.kind == "transition":
            branches = _TRANSITIONS[phase.case][ev.corner]
            nxt = []
            for branch in branches:
                cs = []
                for n in branch:
                    if n in ("floor", "wall"):
                        cs.append(n)
                    else:
                        kept = _contact_edge(contacts, n)
                        cs.append((n, ev.edge if n == ev.corner else kept))
                nxt.append(tuple(cs))
            out.append(SweptSquareState(phase.case, state.square, end_sq,
                                        contacts, next_contacts=tuple(nxt)))
        else:
            out.append(SweptSquareState(phase.case, state.square, end_sq,
                                        contacts, terminal=ev.kind,
                                        terminal_vertex=ev.vertex))
    return out


# ---------------------------------------------------------------------------
# swept union


@dataclass(frozen=True)
class SevenGon:
    """A convex decomposition region with at most 7 vertices (CCW)."""

    vertices: tuple[Point, ...]
    parent_face: int
    provenance: str

    def area(self) -> float:
        s = 0.0
        v = self.vertices
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            s += a.x * b.y - b.x * a.y
        return 0.5 * s

    def coords(self) -> list[tuple[float, float]]:
        return [(p.x, p.y) for p in self.vertices]


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _merge_collinear_loop(pts: list[tuple[float, float]], tol_len: float
                          ) -> list[tuple[float, float]]:
    """Drop near-duplicate vertices and vertices within tol_len of the line
    through their neighbors, one at a time."""
    out = list(pts)
    changed = True
    while changed and len(out) > 3:
        changed = False
        n = len(out)
        for i in range(n):
            a, b = out[i], out[(i + 1) % n]
            if _dist2_pt(a, b) <= tol_len * tol_len:
                del out[(i + 1) % n]
                changed = True
                break
        if changed:
            continue
        for i in range(n):
            a, b, c = out[i - 1], out[i], out[(i + 1) % n]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if abs(cross) <= tol_len * math.hypot(c[0] - a[0], c[1] - a[1]):
                del out[i]
                changed = True
                break
    return out


def sweep_union(states: list[SweptSquareState], piece: _CanonPiece) -> list[tuple[float, float]]:
    """Union of all swept squares as a convex polygon (canonical coords).

    Squares interpolate linearly within each phase, so the union of a phase
    is the convex hull of its end squares; the union over the whole motion
    is convex and therefore equals the hull of all phase-boundary squares.
    """
    tol_len = _REL * piece.scale
    corners: list[tuple[float, float]] = [(0.0, 0.0)]
    for st in states:
        for (x, y, s) in (st.start_square, st.square):
            if s <= tol_len:
                corners.append((x, y))
            else:
                corners.extend(((x, y), (x + s, y), (x + s, y + s), (x, y + s)))
    hull = _convex_hull(corners)
    hull = _merge_collinear_loop(hull, tol_len)
    if len(hull) > 7:
        raise SweepError(f"swept union has {len(hull)} vertices (> 7)")
    return hull


# ---------------------------------------------------------------------------
# recursion split


def recursion_split(piece: _CanonPiece, hull: list[tuple[float, float]]
                    ) -> list[RecursionPolygon]:
    """Partition the remainder of a piece into new recursion pieces.

    The region boundary is classified against the piece boundary (floor,
    wall, chain).  Free portions are axis-aligned; each maximal free run
    together with the facing piece-boundary arc bounds one pocket.  Pockets
    whose cut material exceeds two orthogonal edges meeting at a corner are
    split by axis-aligned rays shot from the region's staircase corners.
    """
    if len(hull) < 3:
        raise SweepError("degenerate swept region")
    tol = _REL * piece.scale
    bd, breakpts = _classify_hull(piece, hull, tol)
    runs = _free_runs(bd, breakpts, tol)
    out: list[RecursionPolygon] = []
    for run in runs:
        pocket = _pocket_cycle(piece, bd, run, tol)
        if pocket is None:
            continue
        out.extend(_split_pocket(piece, pocket, tol))
    return out


def _classify_hull(piece: _CanonPiece, hull, tol):
    """Annotate region boundary edges: floor / wall / chain / free.

    Returns (edges, breakpoints); breakpoints are chain-vertex contact
    points on the region boundary where free runs must be separated.
    """
    # split west-side edges crossing the wall top (possible after a graze)
    # and bottom edges crossing the floor end (zero-wall pieces whose chain
    # dips below the floor line)
    pts = list(hull)
    res = []
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        res.append(a)
        if piece.lv > 0.0 and abs(a[0]) <= tol and abs(b[0]) <= tol:
            ys = sorted((a[1], b[1]))
            if ys[0] < piece.lv - tol and ys[1] > piece.lv + tol:
                res.append((0.0, piece.lv))
        if abs(a[1]) <= tol and abs(b[1]) <= tol:
            xs = sorted((a[0], b[0]))
            if xs[0] < piece.lh - tol and xs[1] > piece.lh + tol:
                res.append((piece.lh, 0.0))
    pts = res
    # split free edges at polygon vertices that lie on them
    flagged = [piece.pts[i] for i in range(1, len(piece.pts) - 1)
               if piece.flags[i]]
    breakpts: list[tuple[float, float]] = []
    res = []
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        res.append(a)
        onsplit = []
        for (wx, wy) in flagged:
            if not _point_on_segment_tol(wx, wy, a, b, tol):
                continue
            at_a = abs(wx - a[0]) <= tol and abs(wy - a[1]) <= tol
            at_b = abs(wx - b[0]) <= tol and abs(wy - b[1]) <= tol
            if at_a or at_b:
                breakpts.append((wx, wy))
            else:
                onsplit.append((wx, wy))
                breakpts.append((wx, wy))
        onsplit.sort(key=lambda p: (p[0] - a[0]) ** 2 + (p[1] - a[1]) ** 2)
        res.extend(onsplit)
    pts = res

    edges = []
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        kind, data = _classify_edge(piece, a, b, tol)
        edges.append((a, b, kind, data))
    return edges, breakpts


def _point_on_segment_tol(px, py, a, b, tol) -> bool:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    dd = dx * dx + dy * dy
    if dd == 0.0:
        return False
    t = ((px - ax) * dx + (py - ay) * dy) / dd
    if t < -1e-12 or t > 1.0 + 1e-12:
        return False
    qx, qy = ax + t * dx, ay + t * dy
    return abs(px - qx) <= tol and abs(py - qy) <= tol


def _classify_edge(piece: _CanonPiece, a, b, tol):
    (ax, ay), (bx, by) = a, b
    if abs(ay) <= tol and abs(by) <= tol and min(ax, bx) >= -tol \
            and max(ax, bx) <= piece.lh + tol:
        return "floor", None
    if piece.lv > 0.0 and abs(ax) <= tol and abs(bx) <= tol \
            and min(ay, by) >= -tol and max(ay, by) <= piece.lv + tol:
        return "wall", None
    for i in range(piece.n_edges):
        x0, y0, x1, y1 = piece.edge(i)
        if _point_on_segment_tol(ax, ay, (x0, y0), (x1, y1), tol) and \
           _point_on_segment_tol(bx, by, (x0, y0), (x1, y1), tol):
            return "chain", i
    if abs(ax - bx) > tol and abs(ay - by) > tol:
        raise SweepError("free region edge is not axis-aligned")
    return "free", None


def _free_runs(bd, breakpts, tol) -> list[list[int]]:
    n = len(bd)
    free = [i for i in range(n) if bd[i][2] == "free"]
    if not free:
        return []
    free_set = set(free)

    def broken_at(pt) -> bool:
        return any(abs(pt[0] - bx) <= tol and abs(pt[1] - by) <= tol
                   for (bx, by) in breakpts)

    def continues(i, j) -> bool:
        """Run continues from edge i to edge j across their junction."""
        return j in free_set and not broken_at(bd[i][1])

    starts = [i for i in free
              if (i - 1) % n not in free_set or broken_at(bd[(i - 1) % n][1])]
    if not starts:
        raise SweepError("region boundary has no piece contact")
    runs = []
    visited = set()
    for i in starts:
        run = [i]
        visited.add(i)
        j = i
        while continues(j, (j + 1) % n) and (j + 1) % n != i:
            j = (j + 1) % n
            visited.add(j)
            run.append(j)
        runs.append(run)
    if len(visited) != len(free):
        raise SweepError("free run extraction missed edges")
    return runs


def _pocket_cycle(piece: _CanonPiece, bd, run, tol):
    """Assemble a pocket polygon: boundary arc + reversed free run.

    Returns a list of labeled edges [(p, q, label, flag_q)] in CCW order
    with label in {'sub', 'chain'}; flag_q tells whether q is an original
    polygon vertex.  None for degenerate (zero-area) pockets.
    """
    n = len(bd)
    a_pt = bd[run[0]][0]          # run start = arc start
    b_pt = bd[run[-1]][1]         # run end = arc end
    arc = _piece_arc(piece, a_pt, b_pt, tol)
    if arc is None:
        return None
    cyc = list(arc)
    for idx in reversed(run):
        p, q, _k, _d = bd[idx]
        cyc.append((q, p, "sub", False))
    # orientation / degeneracy check
    area = 0.0
    for (p, q, _k, _f) in cyc:
        area += p[0] * q[1] - q[0] * p[1]
    area *= 0.5
    if area <= 16.0 * tol * tol:
        return None
    if area < 0:
        raise SweepError("pocket has wrong orientation")
    return cyc


def _piece_arc(piece: _CanonPiece, a_pt, b_pt, tol):
    """Labeled piece-boundary edges CCW from a_pt to b_pt.

    The piece boundary CCW is: corner -> floor end (floor), chain edges,
    then wall top -> corner (wall).  Both endpoints lie on it.
    """
    feats: list[tuple[str, tuple, tuple, bool]] = []
    feats.append(("floor", (0.0, 0.0), (piece.lh, 0.0), False))
    for i in range(piece.n_edges):
        x0, y0, x1, y1 = piece.edge(i)
        feats.append(("chain", (x0, y0), (x1, y1), piece.flags[i + 1]))
    if piece.lv > 0.0:
        feats.append(("wall", (0.0, piece.lv), (0.0, 0.0), False))

    def locate(pt):
        cands = []
        for fi, (kind, p, q, _f) in enumerate(feats):
            if _point_on_segment_tol(pt[0], pt[1], p, q, 4 * tol):
                dx, dy = q[0] - p[0], q[1] - p[1]
                t = ((pt[0] - p[0]) * dx + (pt[1] - p[1]) * dy) / (dx * dx + dy * dy)
                cands.append((fi, min(max(t, 0.0), 1.0)))
        return cands

    ca, cb = locate(a_pt), locate(b_pt)
    if not ca or not cb:
        raise SweepError("free run endpoint is not on the piece boundary")
    best = None
    for (fa, ta) in ca:
        for (fb, tb) in cb:
            if fa == fb and tb >= ta - 1e-12:
                span = tb - ta
            else:
                span = (fb - fa) % len(feats) + tb - ta
            if best is None or span < best[0]:
                best = (span, fa, ta, fb, tb)
    _span, fa, ta, fb, tb = best
    out = []
    cur = a_pt
    fi = fa
    guard = 0
    while True:
        guard += 1
        if guard > len(feats) + 2:
            raise SweepError("piece arc walk did not terminate")
        kind, p, q, flag = feats[fi]
        label = "chain" if kind == "chain" else "sub"
        if fi == fb and (fi != fa or tb >= ta - 1e-12):
            if _dist2_pt(cur, b_pt) > (tol * 4) ** 2:
                out.append((cur, b_pt, label, False))
            break
        if _dist2_pt(cur, q) > (tol * 4) ** 2:
            out.append((cur, q, label, flag))
            cur = q
        else:
            cur = q
        fi = (fi + 1) % len(feats)
        if fi == fa and guard > len(feats):
            raise SweepError("piece arc wrapped fully")
    if not out:
        return None
    return out


def _dist2_pt(a, b) -> float:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def _split_pocket(piece: _CanonPiece, cyc, tol) -> list[RecursionPolygon]:
    """Emit recursion pieces from a pocket, cutting staircases by rays."""
    out = []
    stack = [cyc]
    guard = 0
    while stack:
        cur = stack.pop()
        guard += 1
        if guard > 64:
            raise SweepError("pocket splitting did not terminate")
        cur = _merge_cycle_edges(cur, tol)
        subs = [i for i, e in enumerate(cur) if e[2] == "sub"]
        if not subs:
            raise SweepError("pocket without cut edges")
        reflex = _find_reflex_sub_corner(cur, subs)
        if reflex is None:
            rp = _finalize_piece(piece, cur, subs, tol)
            if rp is not None:
                out.append(rp)
            continue
        stack.extend(_cut_by_ray(cur, reflex, tol, piece.scale))
    return out


def _merge_cycle_edges(cyc, tol):
    """Merge consecutive collinear edges with the same label (cyclically)."""
    changed = True
    while changed and len(cyc) > 3:
        changed = False
        n = len(cyc)
        for i in range(n):
            j = (i + 1) % n
            (p, q, lab, f) = cyc[i]
            (p2, q2, lab2, f2) = cyc[j]
            if lab != lab2 or f:
                continue
            cross = (q[0] - p[0]) * (q2[1] - p[1]) - (q[1] - p[1]) * (q2[0] - p[0])
            la = math.hypot(q[0] - p[0], q[1] - p[1])
            lb = math.hypot(q2[0] - p2[0], q2[1] - p2[1])
            if abs(cross) <= tol * max(la, lb, 1e-300):
                merged = (p, q2, lab, f2)
                if j > i:
                    cyc = cyc[:i] + [merged] + cyc[j + 1:]
                else:
                    cyc = [merged] + cyc[1:i]
                changed = True
                break
    return cyc


def _find_reflex_sub_corner(cyc, subs):
    """Index pair (i, j) of consecutive sub edges meeting reflex, or None."""
    n = len(cyc)
    for i in subs:
        j = (i + 1) % n
        if cyc[j][2] != "sub":
            continue
        p, q, _l, _f = cyc[i]
        _p2, r, _l2, _f2 = cyc[j]
        cross = (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0])
        if cross < 0:  # right turn in a CCW cycle = reflex interior corner
            return (i, j)
    return None


def _cut_by_ray(cyc, reflex, tol, scale):
    """Split the pocket by an axis-aligned ray from a staircase corner.

    The ray extends the earlier cut edge forward when further cut material
    precedes it (so the merged edge stays with that material), else it
    extends the later cut edge backward; either way each resulting side
    keeps at most two orthogonal cut edges meeting at a corner.
    """
    i, j = reflex
    n_cyc = len(cyc)
    p, q, _l, _f = cyc[i]
    if cyc[(i - 1) % n_cyc][2] == "sub":
        dx, dy = q[0] - p[0], q[1] - p[1]       # extend cyc[i] forward
    else:
        p2, q2, _l2, _f2 = cyc[j]
        dx, dy = p2[0] - q2[0], p2[1] - q2[1]   # extend cyc[j] backward
    ln = math.hypot(dx, dy)
    dx, dy = dx / ln, dy / ln
    n = len(cyc)
    best = None
    for k in range(n):
        if k in (i, j):
            continue
        (a, b, lab, flag) = cyc[k]
        hit = _ray_segment_hit(q, (dx, dy), a, b)
        if hit is None:
            continue
        t, u = hit
        if t <= tol:
            continue
        if best is None or t < best[0]:
            best = (t, k, u)
    if best is None:
        raise SweepError("staircase ray found no pocket boundary hit")
    t, k, u = best
    (a, b, lab, flag) = cyc[k]
    hx, hy = a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])
    snap_a = _dist2_pt((hx, hy), a) <= tol * tol
    snap_b = _dist2_pt((hx, hy), b) <= tol * tol
    if snap_a:
        hx, hy = a
    elif snap_b:
        hx, hy = b
    h = (hx, hy)
    # cycle 1: q -> ... -> hit (walk j..k), closed by chord h->q
    cyc1 = []
    m = j
    while m != k:
        cyc1.append(cyc[m])
        m = (m + 1) % n
    if not snap_a:
        cyc1.append((a, h, lab, False))
    cyc1.append((h, q, "sub", False))
    # cycle 2: hit -> ... -> q's edge start (walk k..i), plus chord q->h
    cyc2 = []
    if not snap_b:
        cyc2.append((h, b, lab, flag))
    m = (k + 1) % n
    while m != j:
        cyc2.append(cyc[m])
        m = (m + 1) % n
    cyc2.append((q, h, "sub", False))
    return [c for c in (cyc1, cyc2) if _cycle_area(c) > tol * tol]


def _cycle_area(cyc) -> float:
    s = 0.0
    for (p, q, _l, _f) in cyc:
        s += p[0] * q[1] - q[0] * p[1]
    return 0.5 * s


def _ray_segment_hit(origin, d, a, b):
    """(t, u) with origin + t d = a + u (b - a), t > 0, 0 <= u <= 1."""
    ex, ey = b[0] - a[0], b[1] - a[1]
    denom = d[0] * ey - d[1] * ex
    if denom == 0.0:
        return None
    wx, wy = a[0] - origin[0], a[1] - origin[1]
    t = (wx * ey - wy * ex) / denom
    u = (wx * d[1] - wy * d[0]) / denom
    if t <= 0.0 or u < -1e-12 or u > 1.0 + 1e-12:
        return None
    return t, min(max(u, 0.0), 1.0)


def _finalize_piece(piece: _CanonPiece, cyc, subs, tol):
    """Turn a pocket with at most two cut edges into a RecursionPolygon."""
    n = len(cyc)
    if len(subs) > 2:
        raise SweepError(f"pocket still has {len(subs)} cut edges")
    if len(subs) == 2:
        i, j = subs
        if (i + 1) % n == j:
            corner_idx = j
        elif (j + 1) % n == i:
            corner_idx = i
        else:
            raise SweepError("two cut edges do not meet at a corner")
        # rotate so the cycle starts with the corner
        rot = cyc[corner_idx:] + cyc[:corner_idx]
        pts = [(e[0][0], e[0][1]) for e in rot]
        flags = [False] + [rot[k - 1][3] for k in range(1, len(rot))]
        has_v = True
    else:
        i = subs[0]
        rot = cyc[i:] + cyc[:i]
        pts = [(e[0][0], e[0][1]) for e in rot]
        flags = [rot[-1][3]] + [rot[k - 1][3] for k in range(1, len(rot))]
        has_v = False
    world = [piece.frame.inv(x, y) for (x, y) in pts]
    if piece.frame.det < 0:
        world = [world[0]] + world[:0:-1]
        flags = [flags[0]] + flags[:0:-1]
        if not has_v:
            # the reversal moved the cut edge to the end; re-anchor at its
            # other endpoint so the cut edge leads the cycle again
            world = world[-1:] + world[:-1]
            flags = flags[-1:] + flags[:-1]
    cycle = [(x, y, f) for ((x, y), f) in zip(world, flags)]
    rp = RecursionPolygon(cycle, has_v=has_v, face=piece.face)
    if rp.area() <= 0:
        raise SweepError("split piece has non-positive area")
    return rp


# ---------------------------------------------------------------------------
# full decomposition


def decompose(poly: SimplePolygon, p0: Point | None = None, *,
              rotate_gp: bool = False, validate: bool = True
              ) -> list[SevenGon]:
    """Decompose a simple polygon into convex regions of at most 7 vertices.

    The output regions partition the polygon and satisfy the 1/2
    area-vs-distance certificate.  Vertex coordinates must be pairwise
    distinct in x and in y; pass rotate_gp=True to apply the fixed remedy
    rotation automatically (the result is mapped back to input coordinates).
    """
    rep = validate_general_position(poly)
    rot = None
    if not rep.ok:
        if not rotate_gp:
            raise GeneralPositionError(
                "polygon vertices share an x or y coordinate; rerun with "
                "rotate_gp=True (CLI: --rotate-gp) to apply the remedy rotation"
            )
        poly_work, rot = rotated_polygon(poly)
        if not validate_general_position(poly_work).ok:
            raise GeneralPositionError("remedy rotation did not restore "
                                       "general position")
        if p0 is not None:
            p0 = rot.apply(p0)
    else:
        poly_work = poly
    if p0 is None:
        p0 = _nudged_interior_point(poly_work)
    pieces = seed_rays(poly_work, p0)
    regions: list[SevenGon] = []
    stack = list(pieces)
    guard = 0
    max_steps = 64 + 32 * poly.n
    while stack:
        rp = stack.pop()
        guard += 1
        if guard > max_steps:
            raise SweepError("decomposition did not terminate")
        canon = _CanonPiece(rp)
        states = run_sweep(canon)
        hull = sweep_union(states, canon)
        children = recursion_split(canon, hull)
        if validate:
            _validate_step(rp, canon, hull, children)
        provenance = "+".join(
            f"{st.case}{_terminal_code(st)}" for st in states if st.is_terminal
        ) or "A0"
        world_pts = [canon.frame.inv(x, y) for (x, y) in hull]
        if canon.frame.det < 0:
            world_pts.reverse()
        if rot is not None:
            inv = rot.inverse()
            world_pts = [tuple(inv.apply(Point(x, y))) for (x, y) in world_pts]
        regions.append(SevenGon(tuple(Point(x, y) for (x, y) in world_pts),
                                rp.face, provenance))
        stack.extend(children)
    if validate:
        total = sum(r.area() for r in regions)
        if abs(total - poly.area) > 1e-9 * poly.area:
            raise SweepError(
                f"region areas sum to {total}, polygon area is {poly.area}")
    return regions


def _nudged_interior_point(poly: SimplePolygon) -> Point:
    """Interior point whose coordinates are not aligned with any vertex.

    Axis rays from a point sharing a coordinate with a vertex would graze
    it and spawn sliver pieces; nudge deterministically until clear.
    """
    p = interior_point(poly)
    x0, y0, x1, y1 = poly.bbox()
    delta = 1e-5 * max(x1 - x0, y1 - y0)
    xs = sorted(v.x for v in poly.vertices)
    ys = sorted(v.y for v in poly.vertices)

    def clear(c, values):
        return all(abs(c - v) > 0.5 * delta for v in values)

    for k in range(64):
        px = p.x + (k % 8) * delta
        py = p.y + (k // 8) * delta
        q = Point(px, py)
        if clear(px, xs) and clear(py, ys) and contains(poly, q) == INSIDE:
            return q
    return p


_TERMINAL_CODES = {"vertex": "1", "contact-end": "2", "collapse": "3"}


def _terminal_code(st: SweptSquareState) -> str:
    return _TERMINAL_CODES.get(st.terminal, "?")


def _validate_step(rp, canon, hull, children) -> None:
    hull_area = 0.5 * abs(sum(
        hull[i][0] * hull[(i + 1) % len(hull)][1]
        - hull[(i + 1) % len(hull)][0] * hull[i][1]
        for i in range(len(hull))
    ))
    child_area = sum(c.area() for c in children)
    parent_area = rp.area()
    # absolute floor: shoelace roundoff at the world coordinate magnitude
    mag = max(max(abs(x), abs(y)) for (x, y, _f) in rp.cycle)
    tol_abs = 1e-12 * mag * mag
    if abs(hull_area + child_area - parent_area) > 1e-9 * parent_area + tol_abs:
        raise SweepError(
            f"split area mismatch: region {hull_area} + rest {child_area} "
            f"!= piece {parent_area}")
    # Progress: children never gain interior polygon vertices.  Most steps
    # consume at least one vertex; a collapse-terminal branch may defer the
    # decrease to the next round (the child re-frames and reaches it), so a
    # strict per-step decrease is not asserted.  Termination is guarded by
    # the step watchdog in decompose().
    parent_v = rp.interior_vertex_count()
    for c in children:
        if c.interior_vertex_count() > parent_v:
            raise SweepError("split child gained polygon vertices")


# ---------------------------------------------------------------------------
# square-distance oracle helpers (used by the test suite)


def square_reach_point(px: float, py: float) -> float:
    """Side of the smallest origin-cornered square whose boundary holds p."""
    if px < 0.0 or py < 0.0:
        return math.inf
    return max(px, py)


def square_reach_segment(x0, y0, x1, y1) -> float:
    """Smallest origin-cornered square side touching the segment."""
    best = math.inf
    for (px, py) in ((x0, y0), (x1, y1)):
        best = min(best, square_reach_point(px, py))
    dx, dy = x1 - x0, y1 - y0
    # interior candidates: crossing of x=y, and axis crossings
    den = dx - dy
    if den != 0.0:
        t = (y0 - x0) / den
        if 0.0 <= t <= 1.0:
            best = min(best, square_reach_point(x0 + t * dx, y0 + t * dy))
    if dx != 0.0:
        t = -x0 / dx
        if 0.0 <= t <= 1.0:
            best = min(best, square_reach_point(0.0, y0 + t * dy))
    if dy != 0.0:
        t = -y0 / dy
        if 0.0 <= t <= 1.0:
            best = min(best, square_reach_point(x0 + t * dx, 0.0))
    return best
