"""Triangulation of convex polygons with a per-triangle area guarantee.

The triangulation splits the polygon along its diameter and then peels
triangles recursively: each piece is bounded by one cut edge (the base) and
a convex chain, and the emitted triangle joins the base to the chain vertex
farthest from it.  Every interior point then lies in a triangle whose area
is at least the squared distance from the point to the polygon boundary
(certificate constant 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import LEFT, GeometryError, Point, SimplePolygon, orient


class ConvexityError(GeometryError):
    """Raised when an operation requires a convex polygon."""


def is_convex(poly: SimplePolygon) -> bool:
    """True when every vertex turns strictly left (CCW convex)."""
    v = poly.vertices
    n = len(v)
    return all(orient(v[i - 1], v[i], v[(i + 1) % n]) == LEFT for i in range(n))


def _require_convex(poly: SimplePolygon) -> None:
    if not is_convex(poly):
        raise ConvexityError("operation requires a convex polygon")


def _dist2(a: Point, b: Point) -> float:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def diameter(poly: SimplePolygon) -> tuple[tuple[int, int], float]:
    """Vertex index pair at maximum distance, by rotating calipers.

    Ties are broken toward the lexicographically smallest index pair so the
    result is deterministic.  Runs in linear time.
    """
    _require_convex(poly)
    v = poly.vertices
    n = len(v)
    best_d2 = -1.0
    best_pair = (0, 0)

    def consider(i, j):
        nonlocal best_d2, best_pair
        if i == j:
            return
        d2 = _dist2(v[i], v[j])
        pair = (i, j) if i < j else (j, i)
        if d2 > best_d2 or (d2 == best_d2 and pair < best_pair):
            best_d2 = d2
            best_pair = pair

    if n <= 64:
        # Exhaustive for small polygons: exact lowest-index tie-breaking.
        for a in range(n):
            for b in range(a + 1, n):
                consider(a, b)
        return best_pair, math.sqrt(best_d2)

    # Antipodal pair walk: advance the far point while the triangle area
    # against the current edge keeps growing.
    j = 1
    for i in range(n):
        ni = (i + 1) % n
        while _area2(v[i], v[ni], v[(j + 1) % n]) > _area2(v[i], v[ni], v[j]):
            j = (j + 1) % n
        consider(i, j)
        consider(ni, j)
        consider(i, (j + 1) % n)
    return best_pair, math.sqrt(best_d2)


def _area2(a: Point, b: Point, c: Point) -> float:
    return abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def _line_dist(a: Point, b: Point, p: Point) -> float:
    """Distance from p to the supporting line of a-b."""
    return _area2(a, b, p) / math.hypot(b.x - a.x, b.y - a.y)


@dataclass(frozen=True)
class ConvexChainPiece:
    """A recursion piece: a base cut edge plus a convex chain of the polygon.

    ``chain`` holds the vertex indices strictly between the base endpoints
    when walking counter-clockwise from base_a to base_b.  The base is the
    diameter of the piece, so the angles it makes with the chain are acute.
    """

    poly: SimplePolygon
    base_a: int
    base_b: int
    chain: tuple[int, ...]


def farthest_chain_vertex(piece: ConvexChainPiece) -> int:
    """Chain vertex maximizing distance to the base's supporting line.

    The distance sequence along a convex chain is unimodal; a ternary search
    narrows the range and a linear scan finishes short ranges (< 8) so tie
    handling stays exact.  Ties break toward the lowest vertex index.
    """
    if not piece.chain:
        raise ConvexityError("empty chain has no farthest vertex")
    v = piece.poly.vertices
    a, b = v[piece.base_a], v[piece.base_b]
    chain = piece.chain

    def d(k: int) -> float:
        return _line_dist(a, b, v[chain[k]])

    lo, hi = 0, len(chain) - 1
    while hi - lo >= 8:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        if d(m1) < d(m2):
            lo = m1 + 1
        elif d(m1) > d(m2):
            hi = m2 - 1
        else:
            lo, hi = m1, m2
    best_k = lo
    best_d = d(lo)
    for k in range(lo + 1, hi + 1):
        dk = d(k)
        if dk > best_d:
            best_d = dk
            best_k = k
    return chain[best_k]


@dataclass(frozen=True)
class DistTriangulation:
    """Triangulation with the unit distance certificate.

    For every point p of the polygon, the triangle containing p has area at
    least alpha * d(p)^2 where d(p) is the distance from p to the polygon
    boundary and alpha == 1.
    """

    poly: SimplePolygon
    triangles: tuple[tuple[int, int, int], ...]
    alpha: float = 1.0

    def triangle_points(self, t: tuple[int, int, int]) -> tuple[Point, Point, Point]:
        v = self.poly.vertices
        return v[t[0]], v[t[1]], v[t[2]]


def triangulate_convex(poly: SimplePolygon, *, check_diameters: bool = False
                       ) -> DistTriangulation:
    """Distance-certified triangulation of a convex polygon.

    Splits along the diameter, then recursively emits for each piece the
    triangle formed by the base and the farthest chain vertex.  Exactly
    n - 2 triangles come out.  With check_diameters the per-piece diameter
    invariant (|base| dominates all piece vertex distances) is asserted.
    """
    _require_convex(poly)
    v = poly.vertices
    n = len(v)
    if n == 3:
        return DistTriangulation(poly, ((0, 1, 2),))
    (d1, d2), _ = diameter(poly)
    out: list[tuple[int, int, int]] = []

    def chain_between(i, j):
        ch = []
        k = (i + 1) % n
        while k != j:
            ch.append(k)
            k = (k + 1) % n
        return tuple(ch)

    stack = [ConvexChainPiece(poly, d2, d1, chain_between(d2, d1))]
    stack.append(ConvexChainPiece(poly, d1, d2, chain_between(d1, d2)))
    while stack:
        piece = stack.pop()
        if not piece.chain:
            continue
        if check_diameters:
            _assert_base_is_diameter(piece)
        far = farthest_chain_vertex(piece)
        out.append((piece.base_a, far, piece.base_b))
        ch = piece.chain
        pos = ch.index(far)
        right = ConvexChainPiece(poly, far, piece.base_b, ch[pos + 1:])
        left = ConvexChainPiece(poly, piece.base_a, far, ch[:pos])
        stack.append(right)
        stack.append(left)
    assert len(out) == n - 2, f"expected {n - 2} triangles, got {len(out)}"
    return DistTriangulation(poly, tuple(out))


def _assert_base_is_diameter(piece: ConvexChainPiece) -> None:
    v = piece.poly.vertices
    ids = [piece.base_a, piece.base_b, *piece.chain]
    base2 = _dist2(v[piece.base_a], v[piece.base_b])
    for i in ids:
        for j in ids:
            assert _dist2(v[i], v[j]) <= base2 * (1 + 1e-12), (
                "piece base is not the piece diameter"
            )


def triangle_areas(tri: DistTriangulation) -> list[float]:
    v = tri.poly.vertices
    return [0.5 * _area2(v[a], v[b], v[c]) for (a, b, c) in tri.triangles]
