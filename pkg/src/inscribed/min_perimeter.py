"""Minimum-perimeter inscribed polygons via reflection unfolding.

``arc_length[i, k]`` is the length of the shortest polygonal arc from host
vertex ``i`` to host vertex ``i + k`` that runs along the boundary order and
touches each of the sides ``i, ..., i + k - 1``. Such an arc either has no
host vertex in its interior, in which case every interior anchor obeys the
reflection law and the arc is a straight segment after unfolding, or it
passes through some vertex ``i + u`` and splits into two shorter arcs.
Closed arcs (k = n) give every optimum with at least one used vertex; the
case with no used vertex is a closed billiard orbit handled separately.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateAngle
from .geometry import (
    Anchor,
    ConvexPolygon,
    InscribedPolygon,
    Line,
    angle_at,
    line_segment_intersection,
    reflect_across,
)

INTERIOR_MARGIN = 1e-12
TIE_RTOL = 1e-12
FAMILY_TOL = 1e-10
CLOSURE_TOL = 1e-9


def _reflect_batch(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = b - a
    d = d / np.linalg.norm(d, axis=-1, keepdims=True)
    rel = pts - a
    along = (rel * d).sum(-1, keepdims=True) * d
    return a + 2.0 * along - rel


def _fold(v: np.ndarray, start: np.ndarray, sides: np.ndarray, end: np.ndarray):
    """Unfold-and-fold a batch of arcs.

    ``start`` and ``end`` are (B, 2), ``sides`` is (B, L) host side indices
    in path order. Returns ``(length, ok, taus)``: the unfolded length, a
    mask of arcs whose folded anchors are all strictly inside their sides,
    and the (B, L) side parameters of those anchors.
    """
    n = len(v)
    B, L = sides.shape
    images = np.empty((L + 1, B, 2))
    images[0] = start
    for m in range(L):
        s = sides[:, m]
        images[m + 1] = _reflect_batch(images[m], v[s], v[(s + 1) % n])
    length = np.linalg.norm(images[L] - end, axis=1)
    ok = np.ones(B, dtype=bool)
    taus = np.empty((B, L))
    target = np.array(end, dtype=float)
    for m in range(L, 0, -1):
        s = sides[:, m - 1]
        s0, s1 = v[s], v[(s + 1) % n]
        d = s1 - s0
        nrm = np.column_stack([-d[:, 1], d[:, 0]])
        A = images[m]
        da = ((A - s0) * nrm).sum(1)
        dt = ((target - s0) * nrm).sum(1)
        den = da - dt
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(den != 0.0, da / den, np.nan)
        X = A + t[:, None] * (target - A)
        tau = ((X - s0) * d).sum(1) / (d * d).sum(1)
        ok &= (t >= -INTERIOR_MARGIN) & (t <= 1 + INTERIOR_MARGIN)
        ok &= (tau > INTERIOR_MARGIN) & (tau < 1 - INTERIOR_MARGIN)
        taus[:, m - 1] = tau
        target = X
    return length, ok, taus


def unfold_shortest_arc(C: ConvexPolygon, i: int, j: int, reverse: bool = False):
    """Shortest arc from vertex ``i`` to vertex ``j`` with no interior host vertex.

    Returns ``(anchors, length)`` with vertex anchors at both ends, or None if
    some folded anchor falls outside the interior of its side. ``reverse``
    unfolds from ``j`` back to ``i`` with the scalar reflection routines; it
    must agree with the forward result.
    """
    n = C.n
    k = j - i
    if not 1 <= k <= n:
        raise ValueError("need i < j <= i + n")
    if k <= 2:
        return [Anchor.vertex(i), Anchor.vertex(j)], float(np.linalg.norm(C[j] - C[i]))
    sides = [(i + m) % n for m in range(1, k - 1)]
    if reverse:
        return _unfold_scalar_reverse(C, i, j, sides)
    length, ok, taus = _fold(
        C.vertices, C[i][None, :], np.array([sides]), C[j][None, :]
    )
    if not ok[0]:
        return None
    mid = [Anchor.on_side(s, float(t)) for s, t in zip(sides, taus[0])]
    return [Anchor.vertex(i), *mid, Anchor.vertex(j)], float(length[0])


def _unfold_scalar_reverse(C, i, j, sides):
    lines = [Line.through(C[s], C[s + 1]) for s in sides]
    img = [np.array(C[j])]
    for L in reversed(lines):
        img.append(reflect_across(img[-1], L))
    length = float(np.linalg.norm(img[-1] - C[i]))
    target = np.array(C[i])
    anchors = []
    for m, (s, L) in enumerate(zip(sides, lines)):
        hit = line_segment_intersection(L, img[len(sides) - m], target)
        if hit is None:
            return None
        x, _ = hit
        a, b = C[s], C[s + 1]
        tau = float(np.dot(x - a, b - a) / np.dot(b - a, b - a))
        if not INTERIOR_MARGIN < tau < 1 - INTERIOR_MARGIN:
            return None
        anchors.append(Anchor.on_side(s, tau))
        target = x
    return [Anchor.vertex(i), *anchors, Anchor.vertex(j)], length


@dataclass(frozen=True)
class PiTable:
    """Shortest-arc lengths and back-pointers.

    ``length[i, k]`` for ``1 <= k <= n``; ``back[i, k]`` is 0 for a direct
    (unfolded) arc or the split offset ``u`` of the smallest optimal split.
    ``ties`` maps ``(i, k)`` to every achieving type when there is more
    than one.
    """

    host: ConvexPolygon = field(repr=False)
    length: np.ndarray = field(repr=False)
    back: np.ndarray = field(repr=False)
    ties: dict = field(default_factory=dict, repr=False)

    def __call__(self, i: int, k: int) -> float:
        return float(self.length[i % self.host.n, k])

    def arc(self, i: int, k: int) -> list[Anchor]:
        """Anchors of the recorded optimal arc from vertex i to vertex i + k."""
        n = self.host.n
        i %= n
        u = int(self.back[i, k])
        if u == 0:
            got = unfold_shortest_arc(self.host, i, i + k)
            if got is None:
                raise RuntimeError(f"direct arc ({i}, {k}) no longer admissible")
            return got[0]
        left = self.arc(i, u)
        right = self.arc(i + u, k - u)
        return left + right[1:]

    def closed_polygon(self, i: int) -> InscribedPolygon:
        anchors = self.arc(i, self.host.n)[:-1]
        return InscribedPolygon(self.host, tuple(anchors))


def build_pi_table(C: ConvexPolygon) -> PiTable:
    n = C.n
    v = C.vertices
    idx = np.arange(n)
    length = np.full((n, n + 1), np.inf)
    back = np.zeros((n, n + 1), dtype=np.int64)
    length[:, 1] = np.linalg.norm(v[(idx + 1) % n] - v, axis=1)
    length[:, 2] = np.linalg.norm(v[(idx + 2) % n] - v, axis=1)
    tol = TIE_RTOL * float(length[:, 1].sum())
    ties = {}
    for k in range(3, n + 1):
        u = np.arange(1, k)
        split = length[idx[:, None], u[None, :]] + length[(idx[:, None] + u[None, :]) % n, k - u[None, :]]
        best_split = split.min(axis=1)
        near = split <= best_split[:, None] + tol
        first_u = u[np.argmax(near, axis=1)]

        sides = (idx[:, None] + np.arange(1, k - 1)[None, :]) % n
        direct, ok, _ = _fold(v, v, sides, v[(idx + k) % n])
        use_direct = ok & (direct <= best_split + tol)
        length[:, k] = np.where(use_direct, direct, best_split)
        back[:, k] = np.where(use_direct, 0, first_u)
        for i in np.flatnonzero(near.sum(axis=1) + (ok & (np.abs(direct - best_split) <= tol)) > 1):
            types = ([0] if ok[i] and abs(direct[i] - best_split[i]) <= tol else []) + u[near[i]].tolist()
            ties[(int(i), k)] = tuple(types)
    return PiTable(C, length, back, ties)


@dataclass(frozen=True)
class FagnanoSolution:
    """Inscribed polygons with no used host vertex (closed billiard orbits).

    ``kind`` is "unique", "family" or "none". ``tau`` follows
    ``q(tau) = tau * p[n-1] + (1 - tau) * p[0]`` on the closing side.
    """

    kind: str
    coefficients: tuple[float, float, float]
    tau: float | None = None
    interval: tuple[float, float] | None = None
    witnesses: tuple[InscribedPolygon, ...] = ()
    perimeter_value: float | None = None

    @property
    def witness(self) -> InscribedPolygon | None:
        if not self.witnesses:
            return None
        return self.witnesses[len(self.witnesses) // 2]


def _orbit_at(C: ConvexPolygon, taus: np.ndarray):
    """Fold the closed orbit through ``q(tau)`` for each tau."""
    n = C.n
    v = C.vertices
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    q = taus[:, None] * v[n - 1] + (1 - taus[:, None]) * v[0]
    sides = np.tile(np.arange(n - 1), (len(taus), 1))
    length, ok, side_taus = _fold(v, q, sides, q)
    ok &= (taus > INTERIOR_MARGIN) & (taus < 1 - INTERIOR_MARGIN)
    return length, ok, side_taus


def _orbit_polygon(C: ConvexPolygon, tau: float) -> InscribedPolygon:
    _, _, st = _orbit_at(C, [tau])
    anchors = [Anchor.on_side(s, float(t)) for s, t in enumerate(st[0])]
    anchors.append(Anchor.on_side(C.n - 1, 1.0 - tau))
    return InscribedPolygon(C, tuple(anchors))


def _closes(C: ConvexPolygon, Q: InscribedPolygon, laps: int = 2) -> bool:
    """Shoot a billiard ball around the orbit and check it comes back."""
    pts = Q.points()
    n = C.n
    start = pts[-1]
    d = pts[0] - start
    d /= np.linalg.norm(d)
    pos = start
    tol = CLOSURE_TOL * C.scale()
    for _ in range(laps):
        for s in range(n):
            a, b = C[s], C[s + 1]
            e = b - a
            den = d[0] * e[1] - d[1] * e[0]
            if den == 0.0:
                return False
            t = ((a[0] - pos[0]) * e[1] - (a[1] - pos[1]) * e[0]) / den
            pos = pos + t * d
            e = e / np.linalg.norm(e)
            d = 2.0 * np.dot(d, e) * e - d
        if np.linalg.norm(pos - start) > tol:
            return False
    return True


def solve_all_N(C: ConvexPolygon, grid: int = 4001) -> FagnanoSolution:
    n = C.n
    v = C.vertices
    sides = np.arange(n - 1)[None, :]
    ends = np.vstack([v[n - 1], v[0]])
    img = ends.copy()
    for s in range(n - 1):
        img = _reflect_batch(img, v[s], v[(s + 1) % n])
    e = img[1] - v[0]
    f = (img[0] - v[n - 1]) - e
    a, b, c = float(f @ f), float(2 * e @ f), float(e @ e)
    coef = (a, b, c)
    scale = C.diameter()

    if abs(a) <= FAMILY_TOL * scale**2 and abs(b) <= FAMILY_TOL * scale:
        ts = np.linspace(0.0, 1.0, grid)
        _, ok, _ = _orbit_at(C, ts)
        if not ok.any():
            return FagnanoSolution("none", coef)
        # admissible set is an interval; widen the first run to its ends
        first = int(np.argmax(ok))
        last = first
        while last + 1 < grid and ok[last + 1]:
            last += 1
        lo = _bisect_edge(C, ts[max(first - 1, 0)], ts[first]) if first > 0 else 0.0
        hi = _bisect_edge(C, ts[min(last + 1, grid - 1)], ts[last]) if last < grid - 1 else 1.0
        reps = tuple(
            _orbit_polygon(C, lo + f_ * (hi - lo)) for f_ in (0.25, 0.5, 0.75)
        )
        if not all(_closes(C, Q) for Q in reps):
            return FagnanoSolution("none", coef)
        return FagnanoSolution(
            "family", coef, tau=0.5 * (lo + hi), interval=(lo, hi),
            witnesses=reps, perimeter_value=reps[1].perimeter(),
        )

    if a <= FAMILY_TOL * scale**2:
        return FagnanoSolution("none", coef)
    tau0 = -b / (2 * a)
    if not 0.0 < tau0 < 1.0:
        return FagnanoSolution("none", coef)
    _, ok, _ = _orbit_at(C, [tau0])
    if not ok[0]:
        return FagnanoSolution("none", coef)
    Q = _orbit_polygon(C, tau0)
    if not _closes(C, Q):
        return FagnanoSolution("none", coef)
    return FagnanoSolution(
        "unique", coef, tau=tau0, witnesses=(Q,),
        perimeter_value=math.sqrt(max(a * tau0 * tau0 + b * tau0 + c, 0.0)),
    )


def _bisect_edge(C, bad: float, good: float, iters: int = 60) -> float:
    for _ in range(iters):
        mid = 0.5 * (bad + good)
        if _orbit_at(C, [mid])[1][0]:
            good = mid
        else:
            bad = mid
    return good


@dataclass(frozen=True)
class MinPerimResult:
    value: float
    witness: InscribedPolygon
    family: FagnanoSolution | None
    per_sequence_best: np.ndarray = field(repr=False)
    table: PiTable = field(repr=False)

    @property
    def p1(self) -> float:
        return float(self.per_sequence_best.min())

    def optimal_sequences(self, rtol: float = 1e-9) -> set[str]:
        """Vertex patterns of every recorded optimum within ``rtol``."""
        cut = self.value * (1 + rtol)
        seqs = {
            self.table.closed_polygon(i).sequence()
            for i in np.flatnonzero(self.per_sequence_best <= cut)
        }
        if self.family is not None and self.family.perimeter_value is not None:
            if self.family.perimeter_value <= cut:
                seqs.add("N" * self.witness.host.n)
        return seqs


def min_perimeter_inscribed(C: ConvexPolygon) -> MinPerimResult:
    table = build_pi_table(C)
    closed = table.length[:, C.n].copy()
    i0 = int(np.argmin(closed))
    value = float(closed[i0])
    witness = table.closed_polygon(i0)
    fam = solve_all_N(C)
    if fam.perimeter_value is not None and fam.perimeter_value <= value * (1 + 1e-9):
        value = min(value, fam.perimeter_value)
        witness = fam.witness
    return MinPerimResult(value, witness, fam if fam.kind != "none" else None, closed, table)


def check_reflection_law(C: ConvexPolygon, Q: InscribedPolygon) -> list[float | None]:
    """Angle residual of the reflection law at each side anchor (None at vertices)."""
    pts = Q.points()
    m = len(pts)
    tol = 1e-14 * C.scale()
    for k in range(m):
        if np.linalg.norm(pts[k] - pts[(k + 1) % m]) <= tol:
            raise DegenerateAngle(f"anchors {k} and {(k + 1) % m} coincide")
    out: list[float | None] = []
    for k, a in enumerate(Q.anchors):
        if a.is_vertex:
            out.append(None)
            continue
        q, prev, nxt = pts[k], pts[k - 1], pts[(k + 1) % m]
        lhs = angle_at(q, C[a.index], prev)
        rhs = angle_at(q, nxt, C[a.index + 1])
        out.append(abs(lhs - rhs))
    return out
