"""Convex geometry kernel: hulls, diameters, canonical rotation, rigid
placements and tolerance-aware overlap/containment predicates.

Coordinates are doubles. Rotations are carried as ``(cos, sin)`` pairs and
never converted back to angles inside predicates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

Point = tuple[float, float]

REL_TOL = 1e-9          # feasibility tolerance as a fraction of the knapsack side
_TIE_REL = 1e-12        # relative slack when comparing candidate diameters


class DegenerateInput(ValueError):
    """Raised for point sets that do not span a proper convex polygon."""


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.w < 0 or self.h < 0:
            raise ValueError(f"negative extent in {self}")

    @property
    def x2(self) -> float:
        return self.x + self.w

    @property
    def y2(self) -> float:
        return self.y + self.h

    @property
    def area(self) -> float:
        return self.w * self.h

    def corners(self) -> np.ndarray:
        return np.array([[self.x, self.y], [self.x2, self.y],
                         [self.x2, self.y2], [self.x, self.y2]], dtype=float)


@dataclass(frozen=True)
class Placement:
    """Clockwise rotation about the polygon's first vertex, then translation."""

    dx: float = 0.0
    dy: float = 0.0
    cos_a: float = 1.0
    sin_a: float = 0.0

    def __post_init__(self):
        # plain floats keep repr-based serialization free of numpy scalar reprs
        for name in ("dx", "dy", "cos_a", "sin_a"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if abs(self.cos_a * self.cos_a + self.sin_a * self.sin_a - 1.0) > 1e-12:
            raise ValueError(f"rotation pair is not a unit vector: {self}")

    @classmethod
    def from_angle(cls, theta: float, dx: float = 0.0, dy: float = 0.0) -> "Placement":
        """``theta`` is the clockwise rotation angle in radians."""
        return cls(dx, dy, math.cos(theta), math.sin(theta))

    @classmethod
    def identity(cls) -> "Placement":
        return cls()


class ConvexPolygon:
    """Strictly convex polygon with counterclockwise vertices.

    Metrics (diameter, bounding box) are computed lazily and cached. The
    vertex array is read-only.
    """

    __slots__ = ("vertices", "__dict__")

    def __init__(self, vertices, *, check: bool = True):
        v = np.array(vertices, dtype=float).reshape(-1, 2)
        if check:
            _check_convex(v)
        v.setflags(write=False)
        self.vertices = v

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        pts = ", ".join(f"({x:.6g}, {y:.6g})" for x, y in self.vertices)
        return f"ConvexPolygon([{pts}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        return self.vertices.shape == other.vertices.shape and bool(
            np.all(self.vertices == other.vertices))

    def __hash__(self) -> int:
        return hash(self.vertices.tobytes())

    @cached_property
    def _diameter(self) -> tuple[tuple[int, int], float]:
        return _diameter_calipers(self.vertices)

    @property
    def diameter_pair(self) -> tuple[int, int]:
        return self._diameter[0]

    @property
    def diameter_len(self) -> float:
        return self._diameter[1]

    @cached_property
    def bbox(self) -> Rect:
        lo = self.vertices.min(axis=0)
        hi = self.vertices.max(axis=0)
        return Rect(float(lo[0]), float(lo[1]), float(hi[0] - lo[0]), float(hi[1] - lo[1]))

    @property
    def width(self) -> float:
        return self.bbox.w

    @property
    def height(self) -> float:
        return self.bbox.h

    @cached_property
    def area(self) -> float:
        return polygon_area(self)

    @cached_property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)


def _orient(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _check_convex(v: np.ndarray) -> None:
    k = len(v)
    if k < 3:
        raise DegenerateInput(f"polygon needs at least 3 vertices, got {k}")
    if not np.all(np.isfinite(v)):
        raise DegenerateInput("non-finite vertex coordinate")
    scale = float(np.abs(v).max()) or 1.0
    eps = 1e-12 * scale * scale
    for i in range(k):
        c = _orient(v[i - 1], v[i], v[(i + 1) % k])
        if c <= eps:
            raise DegenerateInput(
                f"vertex {i} ({v[i][0]:g}, {v[i][1]:g}) is reflex, collinear or clockwise")


def convex_hull(points: Iterable[Sequence[float]]) -> ConvexPolygon:
    """Strictly convex CCW hull (monotone chain); collinear points dropped."""
    pts = sorted({(float(p[0]), float(p[1])) for p in points})
    if len(pts) < 3:
        raise DegenerateInput("fewer than 3 distinct points")
    scale = max(max(abs(x), abs(y)) for x, y in pts) or 1.0
    eps = 1e-12 * scale * scale

    def chain(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and _orient(out[-2], out[-1], p) <= eps:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("all points are collinear")
    return ConvexPolygon(hull)


def _diameter_calipers(v: np.ndarray) -> tuple[tuple[int, int], float]:
    k = len(v)

    def d2(i, j):
        dx = v[i][0] - v[j][0]
        dy = v[i][1] - v[j][1]
        return dx * dx + dy * dy

    def tri2(i, j, m):
        return abs(_orient(v[i], v[j], v[m]))

    # antipodal pairs by rotating calipers; every diameter pair is antipodal
    cands: set[tuple[int, int]] = set()
    j = 1
    for i in range(k):
        i2 = (i + 1) % k
        while tri2(i, i2, (j + 1) % k) > tri2(i, i2, j):
            j = (j + 1) % k
        for a in (i, i2):
            for b in (j, (j + 1) % k):
                if a != b:
                    cands.add((min(a, b), max(a, b)))
        # parallel edges give a second antipodal vertex
        jp = (j + 1) % k
        if abs(tri2(i, i2, jp) - tri2(i, i2, j)) <= 1e-12 * max(1.0, tri2(i, i2, j)):
            for a in (i, i2):
                for b in (j, jp, (jp + 1) % k):
                    if a != b:
                        cands.add((min(a, b), max(a, b)))
    best = max(d2(a, b) for a, b in cands)
    pair = min(p for p in cands if d2(*p) >= best * (1.0 - 2 * _TIE_REL))
    return pair, math.sqrt(d2(*pair))


def diameter(poly: ConvexPolygon) -> tuple[tuple[int, int], float]:
    """Farthest vertex pair and its length; ties go to the smallest index pair."""
    return poly.diameter_pair, poly.diameter_len


def _rotate_ccw(pts: np.ndarray, c: float, s: float) -> np.ndarray:
    return np.column_stack([c * pts[:, 0] - s * pts[:, 1], s * pts[:, 0] + c * pts[:, 1]])


def canonicalize(poly: ConvexPolygon) -> ConvexPolygon:
    """Rotate the diameter horizontal (lower index endpoint on the left) and
    translate the bounding box to the origin."""
    (i, j), length = diameter(poly)
    v = poly.vertices
    dx, dy = v[j] - v[i]
    c, s = dx / length, dy / length
    if abs(s) <= 1e-15 and c > 0:
        rot = v.copy()
    else:
        rot = _rotate_ccw(v, c, -s)
        rot[:, 1] -= rot[i, 1]
        rot[j, 1] = 0.0
        rot[i, 1] = 0.0
    rot -= rot.min(axis=0)
    rot[np.abs(rot) < 1e-15 * max(1.0, length)] = 0.0
    return ConvexPolygon(rot, check=False)


def place_vertices(vertices: np.ndarray, p: Placement, pivot=None) -> np.ndarray:
    """Apply ``p`` to ``vertices``; the rotation centre defaults to vertex 0."""
    v0 = vertices[0] if pivot is None else np.asarray(pivot, dtype=float)
    rel = vertices - v0
    c, s = p.cos_a, p.sin_a
    out = np.empty_like(rel)
    out[:, 0] = v0[0] + c * rel[:, 0] + s * rel[:, 1] + p.dx
    out[:, 1] = v0[1] - s * rel[:, 0] + c * rel[:, 1] + p.dy
    return out


def apply_placement(poly: ConvexPolygon, p: Placement) -> ConvexPolygon:
    """Rotate clockwise about vertex 0 by the placement angle, then translate."""
    return ConvexPolygon(place_vertices(poly.vertices, p), check=False)


def placement_from_transform(poly: ConvexPolygon, cos_phi: float, sin_phi: float,
                             tx: float, ty: float) -> Placement:
    """Placement realising ``x -> R_ccw(phi) x + t`` on ``poly``."""
    v0 = poly.vertices[0]
    rx = cos_phi * v0[0] - sin_phi * v0[1]
    ry = sin_phi * v0[0] + cos_phi * v0[1]
    norm = math.hypot(cos_phi, sin_phi)
    return Placement(tx + rx - v0[0], ty + ry - v0[1], cos_phi / norm, -sin_phi / norm)


def shrink_vertices(vertices: np.ndarray, tol: float) -> np.ndarray:
    """Shrink a convex polygon by ``tol`` toward its vertex centroid.

    Uniform scaling by ``1 - tol/rho`` where rho is the smallest distance
    from the vertex centroid to an edge line, so every edge moves inward by
    at least ``tol``. Slivers with ``rho <= 2 tol`` fall back to moving every
    edge inward by exactly ``tol``. An empty array means the polygon vanished.
    """
    v = np.asarray(vertices, dtype=float)
    if tol <= 0:
        return v.copy()
    c = v.mean(axis=0)
    e = np.roll(v, -1, axis=0) - v
    ln = np.hypot(e[:, 0], e[:, 1])
    dist = (e[:, 0] * (c[1] - v[:, 1]) - e[:, 1] * (c[0] - v[:, 0])) / np.where(ln > 0, ln, 1.0)
    rho = float(dist.min())
    if rho > 2 * tol:
        return c + (v - c) * (1.0 - tol / rho)
    return _offset_inward(v, tol)


def _offset_inward(v: np.ndarray, tol: float) -> np.ndarray:
    k = len(v)
    e = np.roll(v, -1, axis=0) - v
    ln = np.hypot(e[:, 0], e[:, 1])
    n = np.column_stack([-e[:, 1], e[:, 0]]) / ln[:, None]      # inward for CCW
    p = v + n * tol
    out = []
    for i in range(k):
        a, da = p[i - 1], e[i - 1]
        b, db = p[i], e[i]
        den = da[0] * db[1] - da[1] * db[0]
        if abs(den) < 1e-300:
            continue
        t = ((b[0] - a[0]) * db[1] - (b[1] - a[1]) * db[0]) / den
        out.append(a + t * da)
    out = np.array(out)
    if len(out) < 3:
        return np.empty((0, 2))
    # inverted offset (polygon thinner than 2 tol) reverses orientation
    area2 = np.sum(out[:, 0] * np.roll(out[:, 1], -1) - np.roll(out[:, 0], -1) * out[:, 1])
    return out if area2 > 0 else np.empty((0, 2))


def polygons_overlap(a: ConvexPolygon, b: ConvexPolygon, tol: float) -> bool:
    """True iff both polygons, shrunk by ``tol``, have intersecting interiors."""
    sa = shrink_vertices(a.vertices, tol)
    sb = shrink_vertices(b.vertices, tol)
    if len(sa) < 3 or len(sb) < 3:
        return False
    return _kernels.overlap_pair(sa, sb)


def contains(outer: Rect, poly: ConvexPolygon, tol: float) -> bool:
    v = poly.vertices
    return bool(np.all(v[:, 0] >= outer.x - tol) and np.all(v[:, 0] <= outer.x2 + tol)
                and np.all(v[:, 1] >= outer.y - tol) and np.all(v[:, 1] <= outer.y2 + tol))


def polygon_area(poly: ConvexPolygon | np.ndarray) -> float:
    v = poly.vertices if isinstance(poly, ConvexPolygon) else np.asarray(poly, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def scaled(poly: ConvexPolygon, factor: float) -> ConvexPolygon:
    return ConvexPolygon(poly.vertices * factor, check=False)


def rectangle(w: float, h: float, x: float = 0.0, y: float = 0.0) -> ConvexPolygon:
    return ConvexPolygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


def segment_hits_polygon(p: Sequence[float], q: Sequence[float], poly: np.ndarray,
                         tol: float) -> bool:
    """True iff segment pq meets the interior of convex ``poly`` shrunk by ``tol``."""
    v = shrink_vertices(poly, tol)
    if len(v) < 3:
        return False
    p = np.asarray(p, dtype=float)
    d = np.asarray(q, dtype=float) - p
    # clip the parametric segment against every inward half-plane
    t0, t1 = 0.0, 1.0
    k = len(v)
    for i in range(k):
        a, b = v[i], v[(i + 1) % k]
        e = b - a
        num = e[0] * (p[1] - a[1]) - e[1] * (p[0] - a[0])     # >0 inside
        den = e[0] * d[1] - e[1] * d[0]
        if abs(den) < 1e-300:
            if num <= 0:
                return False
            continue
        t = -num / den
        if den > 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 >= t1:
            return False
    return True
