"""Slow reference solvers used to cross-check the fast ones.

Nothing here shares code paths with the dynamic programs: minimum area is
found by enumerating vertex subsets, minimum perimeter by cyclic
coordinate descent over anchor positions, diameters by all pairs.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, NoConvergence
from .geometry import Anchor, ConvexPolygon, InscribedPolygon, polygon_area, polygon_perimeter


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 16
    max_iterations: int = 200_000
    restarts: int = 1
    tolerance: float = 1e-13

    def __post_init__(self):
        if min(self.max_vertices, self.max_iterations, self.restarts) <= 0 or self.tolerance <= 0:
            raise ValueError("budget entries must be positive")


DEFAULT_BUDGET = OracleBudget()


def brute_min_area(C: ConvexPolygon, budget: OracleBudget = DEFAULT_BUDGET, rtol: float = 1e-10):
    """Minimum area over all inscribed vertex subsets.

    Returns ``(value, cuts)`` where ``cuts`` lists every optimal set of
    dropped vertices as a sorted tuple.
    """
    n = C.n
    if n > budget.max_vertices:
        raise BudgetExceeded(f"n = {n} exceeds max_vertices = {budget.max_vertices}")
    masks = np.arange(1 << n, dtype=np.int64)
    keep = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    # every side needs a kept endpoint
    ok = np.all(keep | np.roll(keep, -1, axis=1), axis=1)
    keep = keep[ok]
    masks = masks[ok]
    v = C.vertices
    # shoelace over kept vertices; the next kept vertex after i is i+1 or i+2
    nxt1 = np.roll(keep, -1, axis=1)
    j = np.where(nxt1, (np.arange(n) + 1) % n, (np.arange(n) + 2) % n)
    cr = v[:, 0] * v[j][..., 1] - v[:, 1] * v[j][..., 0]
    areas = 0.5 * np.where(keep, cr, 0.0).sum(axis=1)
    best = float(areas.min())
    tol = rtol * polygon_area(v)
    winners = np.flatnonzero(areas <= best + tol)
    cuts = sorted(tuple(int(i) for i in np.flatnonzero(~keep[w])) for w in winners)
    return best, cuts


def pairwise_diameter(points, rtol: float = 1e-12):
    """Largest pairwise distance and every index pair within ``rtol`` of it."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    best = float(d.max())
    ii, jj = np.nonzero(np.triu(d >= best * (1 - rtol), k=1))
    return best, sorted(zip(ii.tolist(), jj.tolist()))


def _best_on_segment(a, b, s0, s1) -> float:
    """Parameter in [0, 1] on ``s0 s1`` minimising ``|a - x| + |x - b|``.

    The unconstrained optimum is where the segment from ``a`` to the mirror
    image of ``b`` crosses the side's line (the tangency point of the
    ellipse with foci a, b); the objective is convex so clamping is exact.
    """
    d = s1 - s0
    L2 = float(d @ d)
    nrm = np.array([-d[1], d[0]])
    da = float((a - s0) @ nrm)
    db = float((b - s0) @ nrm)
    if da * db < 0:  # points on opposite sides: cross the line directly
        bb = b
        dbb = db
    else:
        bb = b - 2.0 * db / L2 * nrm
        dbb = -db
    if da == dbb:
        t = float((a - s0) @ d) / L2
    else:
        lam = da / (da - dbb)
        x = a + lam * (bb - a)
        t = float((x - s0) @ d) / L2
    return min(1.0, max(0.0, t))


def _best_pair(a, b, s0, s1, s2) -> tuple[float, float]:
    """Joint optimum of two anchors on consecutive sides ``s0 s1`` and ``s1 s2``.

    Minimises ``|a - x| + |x - y| + |y - b|``. The term ``|x - y|`` has a kink
    where both anchors meet at the shared corner, which single-coordinate
    steps only approach at a sublinear rate. The outer parameter is found by
    golden-section search (partial minimisation keeps it convex), the inner
    one in closed form.
    """
    def inner(t):
        x = s0 + t * (s1 - s0)
        u = _best_on_segment(x, b, s1, s2)
        y = s1 + u * (s2 - s1)
        return _dist(a, x) + _dist(x, y) + _dist(y, b), u

    g = (math.sqrt(5) - 1) / 2
    lo, hi = 0.0, 1.0
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = inner(x1)[0], inner(x2)[0]
    while hi - lo > 1e-12:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = inner(x1)[0]
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = inner(x2)[0]
    # the golden bracket never evaluates the ends exactly
    t = min((lo, 0.0, 1.0), key=lambda c: inner(c)[0])
    return t, inner(t)[1]


def _dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def relax_min_perimeter(
    C: ConvexPolygon,
    s: str,
    budget: OracleBudget = DEFAULT_BUDGET,
    pin_tol: float = 1e-7,
    snap: float = 0.25,
    trace: list | None = None,
):
    """Shortest inscribed polygon with vertex pattern ``s`` by coordinate descent.

    U positions are fixed host vertices; every side with two N endpoints
    carries one free anchor, started at the midpoint. Returns
    ``(value, witness)``, or None when some free anchor is driven onto a side
    endpoint (the pattern is then not realised by an interior optimum).

    Besides single-anchor steps, anchors on consecutive sides within ``snap``
    of their shared corner get a joint step, and all such pairs are also
    tried on their corners at once. Every step must lower the perimeter by
    more than roundoff, so flat directions cannot cycle.
    """
    n = C.n
    s = s.upper()
    if len(s) != n:
        raise ValueError("sequence length must equal the vertex count")
    v = C.vertices
    slots = []  # (kind, index) in CCW order
    for k in range(n):
        if s[k] == "U":
            slots.append(("vertex", k))
        if s[k] == "N" and s[(k + 1) % n] == "N":
            slots.append(("side", k))
    free = [i for i, (kind, _) in enumerate(slots) if kind == "side"]
    tau = {i: 0.5 for i in free}
    m = len(slots)
    # free anchors on consecutive sides, which can meet at the shared corner
    pairs = [i for i in free if (i + 1) % m in free and m > 2]
    eps = 1e-15 * polygon_perimeter(v)

    def pos(i):
        kind, k = slots[i]
        if kind == "vertex":
            return v[k]
        return v[k] + tau[i] * (v[(k + 1) % n] - v[k])

    def total():
        pts = np.array([pos(i) for i in range(m)])
        return polygon_perimeter(pts)

    def local(i, j):
        # perimeter terms touching slots i..j, each edge once
        edges = {r % m for r in range(i - 1, j + 1)}
        return sum(_dist(pos(r), pos((r + 1) % m)) for r in sorted(edges))

    def attempt(new, lo, hi):
        # take ``new`` only on a real gain; returns the largest move made
        old = {i: tau[i] for i in new}
        before = local(lo, hi)
        tau.update(new)
        if local(lo, hi) < before - eps:
            return max(abs(new[i] - old[i]) for i in new)
        tau.update(old)
        return 0.0

    if free:
        if trace is not None:
            trace.append(total())
        for _ in range(budget.max_iterations):
            moved = 0.0
            for i in free:
                k = slots[i][1]
                t = _best_on_segment(pos((i - 1) % m), pos((i + 1) % m), v[k], v[(k + 1) % n])
                moved = max(moved, attempt({i: t}, i, i))
            near = [i for i in pairs if tau[i] > 1 - snap and tau[(i + 1) % m] < snap]
            for i in near:
                j, k = (i + 1) % m, slots[i][1]
                ta, tb = _best_pair(pos((i - 1) % m), pos((j + 1) % m), v[k], v[(k + 1) % n], v[(k + 2) % n])
                moved = max(moved, attempt({i: ta, j: tb}, i, i + 1))
            # several pairs can creep onto their corners together, which no
            # single pair step sees
            if len(near) > 1:
                snapped = {}
                for i in near:
                    snapped[i], snapped[(i + 1) % m] = 1.0, 0.0
                moved = max(moved, attempt(snapped, 0, m - 1))
            if trace is not None:
                trace.append(total())
            if moved < budget.tolerance:
                break
        else:
            raise NoConvergence(f"no convergence after {budget.max_iterations} sweeps")
        if any(t <= pin_tol or t >= 1 - pin_tol for t in tau.values()):
            return None
    anchors = tuple(
        Anchor.vertex(k) if kind == "vertex" else Anchor.on_side(k, tau[i])
        for i, (kind, k) in enumerate(slots)
    )
    witness = InscribedPolygon(C, anchors)
    return witness.perimeter(), witness


def admissible_perimeter_words(n: int):
    """All length-n U/N words with no cyclic run of three Us."""
    for bits in itertools.product("NU", repeat=n):
        w = "".join(bits)
        if "UUU" not in (w + w[:2]):
            yield w


def global_min_perimeter(C: ConvexPolygon, budget: OracleBudget = DEFAULT_BUDGET, max_n: int = 12):
    """Best :func:`relax_min_perimeter` result over every admissible pattern.

    Patterns whose fixed vertices alone already span a hull at least as long
    as the incumbent are skipped; hull perimeter is monotone under inclusion.
    """
    n = C.n
    if n > max_n:
        raise BudgetExceeded(f"n = {n} exceeds {max_n}")
    words = sorted(admissible_perimeter_words(n), key=lambda w: w.count("U"))
    best = (math.inf, None)
    for w in words:
        used = [k for k in range(n) if w[k] == "U"]
        if len(used) >= 2 and polygon_perimeter(C.vertices[used]) >= best[0]:
            continue
        got = relax_min_perimeter(C, w, budget)
        if got is not None and got[0] < best[0]:
            best = got
    return best
