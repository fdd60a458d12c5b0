"""Polygons circumscribed about a convex host.

Requires every pair of consecutive host angles to sum to more than pi, so
that the side lines ``i - 1`` and ``i + 1`` meet beyond side ``i`` at the
external point ``x[i]``. Any circumscribed polygon has its vertices in the
triangles ``p[i] p[i+1] x[i]``, hence diameter at most ``diam(conv x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AngleConditionViolated, LineNotSupporting, NotCircumscribed
from .geometry import ConvexPolygon, angle_at, cross, interior_angle, orientation

ANGLE_MARGIN = 1e-10
FAR_LIMIT = 1e12
DIAM_RTOL = 1e-12


def validate_angle_condition(C: ConvexPolygon) -> bool:
    ang = [interior_angle(C, i) for i in range(C.n)]
    return all(ang[i] + ang[(i + 1) % C.n] > math.pi + ANGLE_MARGIN for i in range(C.n))


def external_points(C: ConvexPolygon) -> np.ndarray:
    """``x[i]`` = meet of lines ``p[i-1] p[i]`` and ``p[i+1] p[i+2]``."""
    if not validate_angle_condition(C):
        raise AngleConditionViolated("two consecutive angles sum to at most pi")
    n = C.n
    scale = C.scale()
    out = np.empty((n, 2))
    for i in range(n):
        a0, a1 = C[i - 1], C[i]
        b0, b1 = C[i + 1], C[i + 2]
        u, w = a1 - a0, b1 - b0
        den = cross(u, w)
        t = cross(b0 - a0, w) / den if den != 0.0 else math.inf
        if not math.isfinite(t) or abs(t) * math.hypot(*u) > FAR_LIMIT * scale:
            raise AngleConditionViolated(f"side lines around side {i} are nearly parallel")
        out[i] = a0 + t * u
    return out


def hull_of_ordered(points: np.ndarray) -> list[int]:
    """Convex hull of points already sorted by angle about an interior point.

    One Graham pass from the lowest point; returns hull indices in CCW
    order. Collinear points are dropped.
    """
    n = len(points)
    start = min(range(n), key=lambda i: (points[i][1], points[i][0]))
    order = [(start + k) % n for k in range(n)]
    stack: list[int] = []
    for i in order + [start]:
        while len(stack) >= 2 and orientation(points[stack[-2]], points[stack[-1]], points[i]) <= 0:
            stack.pop()
        stack.append(i)
    stack.pop()  # closing copy of start
    return stack


def rotating_calipers(points: np.ndarray, hull: list[int], rtol: float = DIAM_RTOL):
    """Diameter of a convex polygon and every antipodal pair attaining it.

    Pairs are returned as sorted tuples of the original point indices.
    """
    h = len(hull)
    P = points[hull]
    if h == 2:
        return float(np.linalg.norm(P[0] - P[1])), [tuple(sorted(hull))]

    def tri(a, b, c):
        return abs(cross(P[b] - P[a], P[c] - P[a]))

    candidates = set()
    j = 1
    for i in range(h):
        i1 = (i + 1) % h
        while tri(i, i1, (j + 1) % h) > tri(i, i1, j):
            j = (j + 1) % h
        candidates.add((i, j))
        candidates.add((i1, j))
        # an edge parallel to the caliper edge makes both its ends antipodal
        jn = (j + 1) % h
        if tri(i, i1, jn) >= tri(i, i1, j) * (1 - 1e-9):
            candidates.add((i, jn))
            candidates.add((i1, jn))
    dist = {c: float(np.linalg.norm(P[c[0]] - P[c[1]])) for c in candidates if c[0] != c[1]}
    best = max(dist.values())
    pairs = sorted({tuple(sorted((hull[a], hull[b]))) for (a, b), d in dist.items() if d >= best * (1 - rtol)})
    return best, pairs


@dataclass(frozen=True)
class DiameterReport:
    """Diameter of the hull of the external points.

    ``resolved`` is True when some diametral pair is not adjacent on the
    hull; only then is ``value`` known to be the largest diameter of a
    circumscribed polygon. Otherwise the case is left open and flagged.
    """

    value: float
    pairs: list[tuple[int, int]]
    hull: list[int]
    points: np.ndarray
    resolved: bool


def diameter_report(points: np.ndarray) -> DiameterReport:
    hull = hull_of_ordered(points)
    value, pairs = rotating_calipers(points, hull)
    pos = {v: k for k, v in enumerate(hull)}
    h = len(hull)
    resolved = any((pos[a] - pos[b]) % h not in (1, h - 1) for a, b in pairs)
    return DiameterReport(value, pairs, hull, points, resolved)


def max_diameter_circumscribed(C: ConvexPolygon) -> DiameterReport:
    return diameter_report(external_points(C))


# ---------------------------------------------------------------------------
# maximum perimeter: first-order condition


@dataclass(frozen=True)
class CircumPolygon:
    """Vertices of Q in CCW order and, per side, the host vertices on it."""

    vertices: np.ndarray
    assignment: tuple[tuple[int, ...], ...]


def support_polygon(C: ConvexPolygon, directions) -> CircumPolygon:
    """Circumscribed polygon with one side through each host vertex.

    ``directions[j]`` is the direction of the side line through ``p[j]``;
    it must lie strictly between the directions of sides ``j - 1`` and
    ``j`` for the line to support C. Side ``k`` of the result runs from
    vertex ``k`` to vertex ``k + 1`` and holds ``p[k]``.
    """
    n = C.n
    d = np.asarray(directions, dtype=float)
    verts = np.empty((n, 2))
    for k in range(n):
        a, u = C[k], d[k]
        b, w = C[k + 1], d[(k + 1) % n]
        den = cross(u, w)
        if den <= 0:
            raise NotCircumscribed(f"support lines at {k} and {k + 1} do not meet beyond side {k}")
        verts[k] = a + cross(b - a, w) / den * u
    # verts[k] sits on the lines through p[k] and p[k+1]; shift so that
    # side k (vertex k to vertex k+1) is the one through p[k]
    verts = np.roll(verts, 1, axis=0)
    return CircumPolygon(verts, tuple((k,) for k in range(n)))


def _contains(Q: np.ndarray, p, tol: float) -> bool:
    m = len(Q)
    return all(cross(Q[(k + 1) % m] - Q[k], p - Q[k]) >= -tol for k in range(m))


def circumscribed_assignment(C: ConvexPolygon, Q) -> tuple[tuple[int, ...], ...]:
    """Host vertices lying on each side of ``Q`` (within ``1e-9 * scale``)."""
    Q = np.asarray(Q, dtype=float)
    m = len(Q)
    tol = 1e-9 * C.scale()
    out = []
    for k in range(m):
        a, b = Q[k], Q[(k + 1) % m]
        e = b - a
        L = math.hypot(*e)
        on = []
        for j in range(C.n):
            p = C[j]
            if abs(cross(e, p - a)) / L <= tol and -tol <= np.dot(p - a, e) / L <= L + tol:
                on.append(j)
        out.append(tuple(on))
    return tuple(out)


@dataclass(frozen=True)
class SideReport:
    side: int
    host_vertices: tuple[int, ...]
    residual: float | None


def check_eq5(C: ConvexPolygon, Q) -> list[SideReport]:
    """Per-side check of the stationarity condition for maximum perimeter.

    For a side ``q[i] q[i+1]`` through a single host vertex ``p``:
    ``|q[i] p| cot(beta_i) - |q[i+1] p| cot(beta_{i+1})`` where ``beta`` are
    the angles of Q. Sides through two host vertices get ``residual=None``.
    """
    verts = Q.vertices if isinstance(Q, CircumPolygon) else np.asarray(Q, dtype=float)
    m = len(verts)
    tol = 1e-9 * C.scale()
    for j in range(C.n):
        if not _contains(verts, C[j], tol):
            raise NotCircumscribed(f"host vertex {j} lies outside Q")
    assign = circumscribed_assignment(C, verts)
    touched = {j for a in assign for j in a}
    if len(touched) != C.n:
        raise NotCircumscribed("some host vertex is not on the boundary of Q")
    beta = [angle_at(verts[k], verts[k - 1], verts[(k + 1) % m]) for k in range(m)]
    out = []
    for k, on in enumerate(assign):
        if not on:
            raise NotCircumscribed(f"side {k} of Q contains no host vertex")
        if len(on) != 1:
            out.append(SideReport(k, on, None))
            continue
        p = C[on[0]]
        qa, qb = verts[k], verts[(k + 1) % m]
        r = np.linalg.norm(qa - p) / math.tan(beta[k]) - np.linalg.norm(qb - p) / math.tan(beta[(k + 1) % m])
        out.append(SideReport(k, on, float(r)))
    return out


def _supports(C: ConvexPolygon, a, b) -> bool:
    e = np.asarray(b, dtype=float) - a
    tol = 1e-9 * C.scale() * math.hypot(*e)
    s = [cross(e, C[j] - a) for j in range(C.n)]
    return min(s) >= -tol or max(s) <= tol


def propagate_eq5(C: ConvexPolygon, q_i, j: int, tol: float = 1e-12):
    """Next vertex ``q[i+1]`` on the line through ``q_i`` and host vertex ``j``.

    The neighbouring sides of Q are taken to pass through host vertices
    ``j - 1`` (before ``q_i``) and ``j + 1`` (after ``q[i+1]``). Solves the
    stationarity condition by bisection on the part of the admissible ray
    beyond ``p[j]`` where it is monotone; returns None when it has no root
    there.
    """
    q_i = np.asarray(q_i, dtype=float)
    p = np.array(C[j])
    if not _supports(C, q_i, p):
        raise LineNotSupporting("line through q_i and p_j cuts the host")
    dist_i = float(np.linalg.norm(p - q_i))
    d = (p - q_i) / dist_i
    beta_i = angle_at(q_i, C[j - 1], p)
    lhs = dist_i / math.tan(beta_i)
    p_next = np.array(C[j + 1])
    scale = C.scale()

    # q[i+1] must stay before the line of side j+1, else the next side cuts C
    a, b = np.array(C[j + 1]), np.array(C[j + 2])
    den = cross(d, b - a)
    t_max = cross(a - p, b - a) / den if den != 0 else math.inf
    if not t_max > 0:
        t_max = math.inf
    t_max = min(t_max, FAR_LIMIT * scale)

    def resid(t):
        q = p + t * d
        beta = angle_at(q, p, p_next)
        return lhs - t / math.tan(beta)

    # With u the offset of p[j+1] along the line and h its distance from it,
    # t cot(beta) = t (t - u) / h, so the residual is a concave quadratic in
    # t that decreases for t > u / 2. A second root below u / 2 can exist;
    # the search stays on the decreasing branch.
    u = float(np.dot(p_next - p, d))
    lo, hi = max(tol * scale, 0.5 * u), t_max * (1 - 1e-12)
    if not lo < hi:
        return None
    r_lo, r_hi = resid(lo), resid(hi)
    if r_lo == 0:
        return p + lo * d
    if r_lo * r_hi > 0:
        return None
    while hi - lo > tol * scale:
        mid = 0.5 * (lo + hi)
        r_mid = resid(mid)
        if r_mid * r_lo > 0:
            lo, r_lo = mid, r_mid
        else:
            hi = mid
    return p + 0.5 * (lo + hi) * d


def perimeter_profile(d_prev: float, d_next: float, gamma: float):
    """``f(beta) = d_prev / sin(beta) + d_next / sin(pi + gamma - beta)``.

    Length of the side through the contact vertex as that side rotates
    about it with both neighbouring side lines fixed.
    """

    def f(beta):
        return d_prev / math.sin(beta) + d_next / math.sin(math.pi + gamma - beta)

    return f
