"""Planar primitives: validated convex polygons, orientation, reflections.

Polygons are indexed from 0. Side ``i`` joins vertex ``i`` to vertex
``i + 1`` (mod n). All objects are immutable once built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateVertex,
    NonFiniteCoordinate,
    NotConvex,
    NotInscribed,
    ParallelOverlap,
    TooFewVertices,
)

MIN_VERTICES = 5
ORIENT_EPS = 1e-12
DUPLICATE_EPS = 1e-12


def _as_point(p) -> np.ndarray:
    return np.asarray(p, dtype=float).reshape(2)


def cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def orientation(a, b, c) -> int:
    """Sign of ``(b - a) x (c - a)`` with a scale-relative zero band."""
    ux, uy = b[0] - a[0], b[1] - a[1]
    vx, vy = c[0] - a[0], c[1] - a[1]
    det = ux * vy - uy * vx
    band = ORIENT_EPS * max(math.hypot(ux, uy) * math.hypot(vx, vy), 1.0)
    if det > band:
        return 1
    if det < -band:
        return -1
    return 0


def polygon_area(points) -> float:
    """Signed shoelace area of a closed point ring (positive when CCW)."""
    pts = np.asarray(points, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def polygon_perimeter(points) -> float:
    pts = np.asarray(points, dtype=float)
    return float(np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1).sum())


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon with vertices in counterclockwise order.

    Build through :func:`validate_polygon`; the constructor trusts its input.
    """

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.vertices[i % len(self.vertices)]

    def side(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        return self[i], self[i + 1]

    def point_on_side(self, i: int, tau: float) -> np.ndarray:
        a, b = self.side(i)
        return a + tau * (b - a)

    def side_lengths(self) -> np.ndarray:
        v = self.vertices
        return np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)

    def diameter(self) -> float:
        v = self.vertices
        d = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((d**2).sum(-1)).max())

    def scale(self) -> float:
        """Bounding-box diagonal; the length unit used by tolerances."""
        lo, hi = self.vertices.min(axis=0), self.vertices.max(axis=0)
        return float(np.hypot(*(hi - lo)))

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def rotated_labels(self, shift: int) -> "ConvexPolygon":
        """Same polygon with vertex ``shift`` relabelled as vertex 0."""
        return ConvexPolygon(np.roll(self.vertices, -shift, axis=0))

    def transformed(self, rotation: float = 0.0, offset=(0.0, 0.0), factor: float = 1.0) -> "ConvexPolygon":
        c, s = math.cos(rotation), math.sin(rotation)
        rot = np.array([[c, -s], [s, c]])
        return ConvexPolygon(factor * self.vertices @ rot.T + np.asarray(offset, dtype=float))


def validate_polygon(points: Iterable) -> ConvexPolygon:
    """Check a vertex list and return it as a CCW :class:`ConvexPolygon`.

    Clockwise input is reversed. Raises :class:`TooFewVertices` for fewer
    than five vertices, :class:`DuplicateVertex` for coincident neighbours
    and :class:`NotConvex` for any non-left turn or a ring that winds more
    than once.
    """
    pts = np.array([_as_point(p) for p in points], dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise TooFewVertices("no vertices given")
    if not np.all(np.isfinite(pts)):
        raise NonFiniteCoordinate("coordinates must be finite")
    n = len(pts)
    if n < MIN_VERTICES:
        raise TooFewVertices(f"need at least {MIN_VERTICES} vertices, got {n}")

    lo, hi = pts.min(axis=0), pts.max(axis=0)
    diag = float(np.hypot(*(hi - lo)))
    gaps = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
    k = int(np.argmin(gaps))
    if gaps[k] <= DUPLICATE_EPS * diag:
        raise DuplicateVertex(f"vertices {k} and {(k + 1) % n} coincide")

    if polygon_area(pts) < 0:
        pts = pts[::-1].copy()

    for i in range(n):
        if orientation(pts[i - 1], pts[i], pts[(i + 1) % n]) <= 0:
            raise NotConvex(f"vertex {i} is not a strict left turn")

    # all left turns but winding twice (a star) still has to be rejected
    edges = np.roll(pts, -1, axis=0) - pts
    turn = np.arctan2(
        edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0],
        (edges * np.roll(edges, -1, axis=0)).sum(axis=1),
    )
    if abs(turn.sum() - 2 * math.pi) > 1e-6:
        raise NotConvex("vertex ring winds more than once")
    return ConvexPolygon(pts)


def area(P: ConvexPolygon) -> float:
    return polygon_area(P.vertices)


def perimeter(P: ConvexPolygon) -> float:
    return float(P.side_lengths().sum())


def interior_angle(P: ConvexPolygon, i: int) -> float:
    """Interior angle at vertex ``i`` in radians, in (0, pi)."""
    return angle_at(P[i], P[i - 1], P[i + 1])


def angle_at(apex, a, b) -> float:
    """Unsigned angle ``a - apex - b`` in [0, pi]."""
    u = np.asarray(a, dtype=float) - apex
    v = np.asarray(b, dtype=float) - apex
    return math.atan2(abs(cross(u, v)), float(np.dot(u, v)))


@dataclass(frozen=True)
class Line:
    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        d = _as_point(self.direction)
        norm = math.hypot(*d)
        if norm == 0.0:
            raise ValueError("line direction must be non-zero")
        object.__setattr__(self, "base", _as_point(self.base))
        object.__setattr__(self, "direction", d / norm)

    @classmethod
    def through(cls, a, b) -> "Line":
        a = _as_point(a)
        return cls(a, _as_point(b) - a)

    def signed_distance(self, p) -> float:
        """Positive on the left of the direction."""
        return cross(self.direction, _as_point(p) - self.base)


def reflect_across(p, L: Line) -> np.ndarray:
    p = _as_point(p)
    d = L.direction
    rel = p - L.base
    along = float(np.dot(rel, d)) * d
    return L.base + 2.0 * along - rel


def line_segment_intersection(L: Line, a, b):
    """Intersection of ``L`` with segment ``ab`` as ``(point, tau)`` or None.

    ``tau`` runs from 0 at ``a`` to 1 at ``b``. A segment lying on the line
    raises :class:`ParallelOverlap`.
    """
    a, b = _as_point(a), _as_point(b)
    da = L.signed_distance(a)
    db = L.signed_distance(b)
    scale = max(float(np.hypot(*(b - a))), 1.0)
    tol = ORIENT_EPS * scale
    if abs(da) <= tol and abs(db) <= tol:
        raise ParallelOverlap("segment lies on the line")
    if da == db:
        return None
    tau = da / (da - db)
    if tau < 0.0 or tau > 1.0:
        return None
    return a + tau * (b - a), float(tau)


def intersect_lines(a1, a2, b1, b2):
    """Intersection point of lines ``a1a2`` and ``b1b2``; None when parallel."""
    a1, a2, b1, b2 = map(_as_point, (a1, a2, b1, b2))
    u, v = a2 - a1, b2 - b1
    den = cross(u, v)
    if den == 0.0:
        return None
    t = cross(b1 - a1, v) / den
    return a1 + t * u


def regular_polygon(n: int, radius: float = 1.0, phase: float = 0.0) -> ConvexPolygon:
    t = phase + 2 * math.pi * np.arange(n) / n
    return ConvexPolygon(radius * np.column_stack([np.cos(t), np.sin(t)]))


def _weak_vertices(pts: np.ndarray) -> np.ndarray:
    """Vectorised twin of the per-vertex checks in :func:`validate_polygon`."""
    prev, nxt = np.roll(pts, 1, axis=0), np.roll(pts, -1, axis=0)
    u, v = pts - prev, nxt - prev
    det = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    band = ORIENT_EPS * np.maximum(np.hypot(*u.T) * np.hypot(*v.T), 1.0)
    diag = float(np.hypot(*(pts.max(axis=0) - pts.min(axis=0))))
    dup = np.hypot(*(nxt - pts).T) <= DUPLICATE_EPS * diag
    return np.flatnonzero((det <= band) | dup)


def random_convex_polygon(n: int, rng: np.random.Generator | int | None = None) -> ConvexPolygon:
    """Vertices at sorted uniform angles on the unit circle.

    Angles that make a vertex fail validation (near-coincident neighbours)
    are redrawn. Redrawing whole polygons instead would almost never finish
    for n in the thousands, where some gap is nearly always tiny.
    """
    rng = np.random.default_rng(rng)
    t = np.sort(rng.uniform(0.0, 2 * math.pi, n))
    for _ in range(10_000):
        pts = np.column_stack([np.cos(t), np.sin(t)])
        bad = _weak_vertices(pts)
        if len(bad) == 0:
            try:
                return validate_polygon(pts)
            except (NotConvex, DuplicateVertex):
                bad = np.arange(n)
        t[bad] = rng.uniform(0.0, 2 * math.pi, len(bad))
        t.sort()
    raise RuntimeError(f"could not draw a strictly convex {n}-gon")


# ---------------------------------------------------------------------------
# inscribed polygons


@dataclass(frozen=True)
class Anchor:
    """Vertex of an inscribed polygon.

    ``kind == "vertex"``: the host vertex ``index``.
    ``kind == "side"``: interior point of side ``index`` at parameter ``tau``
    in (0, 1) measured from vertex ``index``.
    """

    kind: str
    index: int
    tau: float = 0.0

    def __post_init__(self):
        if self.kind not in ("vertex", "side"):
            raise ValueError(f"unknown anchor kind {self.kind!r}")
        if self.kind == "side" and not (0.0 < self.tau < 1.0):
            raise ValueError(f"side anchor needs 0 < tau < 1, got {self.tau}")

    @classmethod
    def vertex(cls, i: int) -> "Anchor":
        return cls("vertex", int(i))

    @classmethod
    def on_side(cls, i: int, tau: float) -> "Anchor":
        return cls("side", int(i), float(tau))

    @property
    def is_vertex(self) -> bool:
        return self.kind == "vertex"

    def point(self, host: ConvexPolygon) -> np.ndarray:
        if self.is_vertex:
            return np.array(host[self.index])
        return host.point_on_side(self.index, self.tau)

    def boundary_position(self, n: int) -> float:
        return (self.index % n) + (self.tau if self.kind == "side" else 0.0)

    def to_dict(self) -> dict:
        if self.is_vertex:
            return {"vertex": self.index}
        return {"side": self.index, "tau": self.tau}

    @classmethod
    def from_dict(cls, d: dict) -> "Anchor":
        if "vertex" in d:
            return cls.vertex(d["vertex"])
        return cls.on_side(d["side"], d["tau"])


@dataclass(frozen=True)
class InscribedPolygon:
    """Ring of anchors, in CCW boundary order, touching every side of ``host``."""

    host: ConvexPolygon
    anchors: tuple[Anchor, ...]

    def __post_init__(self):
        n = self.host.n
        anchors = tuple(
            Anchor(a.kind, a.index % n, a.tau) for a in self.anchors
        )
        object.__setattr__(self, "anchors", anchors)
        if len(anchors) < 2:
            raise NotInscribed("an inscribed polygon needs at least two anchors")
        touched = np.zeros(n, dtype=bool)
        for a in anchors:
            touched[a.index] = True
            if a.is_vertex:
                touched[(a.index - 1) % n] = True
        if not touched.all():
            missing = [int(i) for i in np.flatnonzero(~touched)]
            raise NotInscribed(f"sides {missing} contain no anchor")
        pos = [a.boundary_position(n) for a in anchors]
        wraps = sum(1 for k in range(len(pos)) if pos[k] >= pos[(k + 1) % len(pos)])
        if wraps != 1:
            raise NotInscribed("anchors are not in counterclockwise boundary order")

    def __len__(self) -> int:
        return len(self.anchors)

    def points(self) -> np.ndarray:
        return np.array([a.point(self.host) for a in self.anchors])

    def area(self) -> float:
        return polygon_area(self.points())

    def perimeter(self) -> float:
        return polygon_perimeter(self.points())

    def sequence(self) -> str:
        """The U/N word: position k is U iff host vertex k is an anchor."""
        used = {a.index for a in self.anchors if a.is_vertex}
        return "".join("U" if k in used else "N" for k in range(self.host.n))

    def replace(self, position: int, anchor: Anchor) -> "InscribedPolygon":
        anchors = list(self.anchors)
        anchors[position] = anchor
        return InscribedPolygon(self.host, tuple(anchors))


def vertex_polygon(host: ConvexPolygon, indices: Sequence[int]) -> InscribedPolygon:
    """Inscribed polygon whose anchors are the given host vertices."""
    return InscribedPolygon(host, tuple(Anchor.vertex(i) for i in sorted(set(int(i) % host.n for i in indices))))


def midpoint_polygon(host: ConvexPolygon) -> InscribedPolygon:
    return InscribedPolygon(host, tuple(Anchor.on_side(i, 0.5) for i in range(host.n)))
