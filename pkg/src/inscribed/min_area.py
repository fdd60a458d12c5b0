"""Minimum-area inscribed polygons.

Every optimum can be taken with all of its vertices at host vertices, and
cutting corner ``i`` (dropping vertex ``i``) removes the triangle
``p[i-1] p[i] p[i+1]``. So the problem is a maximum-weight choice of
corners on the n-cycle with no two neighbours both cut. The cycle is split
into two linear chains, one with corner 0 cut (corners 1 and n-1 kept) and
one with corner 0 kept, each solved by the usual take/skip recursion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .geometry import Anchor, ConvexPolygon, InscribedPolygon, area, cross, vertex_polygon

TIE_RTOL = 1e-12
PARALLEL_TOL = 1e-9


def triangle_weights(C: ConvexPolygon) -> np.ndarray:
    """``T[i]`` = area of triangle ``p[i-1] p[i] p[i+1]``."""
    v = C.vertices
    prev, nxt = np.roll(v, 1, axis=0), np.roll(v, -1, axis=0)
    u, w = v - prev, nxt - prev
    return 0.5 * np.abs(u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0])


@dataclass(frozen=True)
class _Chain:
    """Take/skip table over the corners ``indices`` (a path, not a cycle).

    ``best[k + 1]`` is the optimum over the first ``k + 1`` chain entries;
    ``best[0]`` is the empty prefix.
    """

    forced: tuple[int, ...]
    indices: np.ndarray
    best: np.ndarray

    @property
    def value(self) -> float:
        return float(self.best[-1])


def _chain(forced: tuple[int, ...], base: float, indices: np.ndarray, T: np.ndarray) -> _Chain:
    w = T[indices]
    best = np.empty(len(w) + 1)
    best[0] = base
    prev2, prev1 = base, base
    # best[k] = max(best[k-1], best[k-2] + w[k-1]); best[-1] of the empty prefix is base
    for k, wk in enumerate(w, start=1):
        cur = max(prev1, prev2 + wk)
        best[k] = cur
        prev2, prev1 = prev1, cur
    return _Chain(forced, indices, best)


@dataclass(frozen=True)
class SkipDecisionTree:
    """All optimal corner sets, shared as a DAG over chain prefixes.

    A node is (branch, k) meaning "the first k chain entries still have to
    reach ``best[k]``". From it one may skip entry k-1 if ``best[k-1]`` also
    reaches that target, or take it if ``best[k-2] + w`` does. Paths to
    k = 0 decode to corner sets.
    """

    n: int
    weights: np.ndarray = field(repr=False)
    value: float
    tol: float
    branches: tuple[_Chain, ...] = field(repr=False)

    def _options(self, ch: _Chain, k: int):
        """Yield (took, next_k) moves from node k (k >= 1)."""
        target = ch.best[k] - self.tol
        w = self.weights[ch.indices[k - 1]]
        if k >= 2:
            if ch.best[k - 1] >= target:
                yield False, k - 1
            if ch.best[k - 2] + w >= target:
                yield True, k - 2
        else:
            base = ch.best[0]
            if base >= target:
                yield False, 0
            if base + w >= target:
                yield True, -1

    def count(self) -> int:
        """Number of optimal corner sets (exact integer)."""
        total = 0
        for ch in self.branches:
            m = len(ch.indices)
            ways = [0] * (m + 2)  # ways[k + 1] for k in -1..m
            ways[0] = ways[1] = 1
            for k in range(1, m + 1):
                ways[k + 1] = sum(ways[nk + 1] for _, nk in self._options(ch, k))
            total += ways[m + 1]
        return total

    def paths(self) -> Iterator[tuple[int, ...]]:
        """Every optimal corner set as a sorted tuple. May be exponential."""
        for ch in self.branches:
            stack = [(len(ch.indices), ())]
            while stack:
                k, chosen = stack.pop()
                if k <= 0:
                    yield tuple(sorted(ch.forced + chosen))
                    continue
                for took, nk in self._options(ch, k):
                    stack.append((nk, chosen + ((int(ch.indices[k - 1]),) if took else ())))

    def contains(self, subset) -> bool:
        s = tuple(sorted(int(i) for i in subset))
        return s in set(self.paths())


def max_nonconsecutive_cycle(T) -> tuple[float, SkipDecisionTree]:
    """Best total weight of pairwise non-adjacent positions on the cycle."""
    T = np.asarray(T, dtype=float)
    n = len(T)
    if n < 5:
        raise ValueError("the cycle needs at least 5 positions")
    if np.any(T <= 0):
        raise ValueError("weights must be strictly positive")
    with_first = _chain((0,), float(T[0]), np.arange(2, n - 1), T)
    without_first = _chain((), 0.0, np.arange(1, n), T)
    A = max(with_first.value, without_first.value)
    tol = TIE_RTOL * float(T.sum())
    branches = tuple(ch for ch in (with_first, without_first) if ch.value >= A - tol)
    return A, SkipDecisionTree(n, T, A, tol, branches)


def _lexmin_subset(tree: SkipDecisionTree) -> tuple[int, ...]:
    """Lexicographically smallest optimal corner set (sorted index list)."""
    # branch containing corner 0 always sorts first
    ch = next((c for c in tree.branches if c.forced), tree.branches[0])
    w = tree.weights[ch.indices]
    m = len(w)
    tail = np.zeros(m + 2)
    for k in range(m - 1, -1, -1):
        tail[k] = max(tail[k + 1], w[k] + tail[k + 2])
    chosen = list(ch.forced)
    k = 0
    while k < m:
        if w[k] + tail[k + 2] >= tail[k] - tree.tol:
            chosen.append(int(ch.indices[k]))
            k += 2
        else:
            k += 1
    return tuple(sorted(chosen))


@dataclass(frozen=True)
class SlideFamily:
    """Positions of a vertex-anchored optimum that may slide along a side.

    Each ``(position, side)`` entry says the witness anchor at ``position``
    can be replaced by any point of host side ``side`` without changing the
    area. Entries at non-adjacent positions may be applied together.
    """

    base_witness: InscribedPolygon
    slidable: tuple[tuple[int, int], ...]
    deviation: tuple[float, ...] = ()

    def slide(self, entry: int, tau: float) -> InscribedPolygon:
        pos, side = self.slidable[entry]
        return self.base_witness.replace(pos, Anchor.on_side(side, tau))


@dataclass(frozen=True)
class MinAreaResult:
    value: float
    cut_area: float
    one_witness: InscribedPolygon
    cut_corners: tuple[int, ...]
    all_vertex_optima: SkipDecisionTree = field(repr=False)
    slide_families: tuple[SlideFamily, ...] = ()

    def witness_for(self, cut: tuple[int, ...]) -> InscribedPolygon:
        n = self.one_witness.host.n
        dropped = set(cut)
        keep = [i for i in range(n) if i not in dropped]
        return vertex_polygon(self.one_witness.host, keep)


def _parallel_deviations(C: ConvexPolygon) -> np.ndarray:
    """|sin| of the angle between side i and diagonal p[i-1] p[i+2], for all i."""
    v = C.vertices
    u = np.roll(v, -1, axis=0) - v
    d = np.roll(v, -2, axis=0) - np.roll(v, 1, axis=0)
    cr = u[:, 0] * d[:, 1] - u[:, 1] * d[:, 0]
    return np.abs(cr) / (np.hypot(*u.T) * np.hypot(*d.T))


def _parallel_deviation(C: ConvexPolygon, i: int) -> float:
    u = C[i + 1] - C[i]
    v = C[i + 2] - C[i - 1]
    return abs(cross(u, v)) / (math.hypot(*u) * math.hypot(*v))


def parallel_sides(C: ConvexPolygon, tol: float = PARALLEL_TOL) -> list[int]:
    return [int(i) for i in np.flatnonzero(_parallel_deviations(C) <= tol)]


def _families_for(C: ConvexPolygon, witness: InscribedPolygon, parallel: set[int]) -> SlideFamily | None:
    n = C.n
    idx = [a.index for a in witness.anchors]
    m = len(idx)
    entries, dev = [], []
    for s in range(m):
        a, b, c = idx[s - 1], idx[s], idx[(s + 1) % m]
        gaps = ((b - a) % n, (c - b) % n)
        if gaps == (1, 2):
            side = b
        elif gaps == (2, 1):
            side = (a + 1) % n
        else:
            continue
        if side in parallel:
            entries.append((s, side))
            dev.append(_parallel_deviation(C, side))
    if not entries:
        return None
    return SlideFamily(witness, tuple(entries), tuple(dev))


def slide_families(C: ConvexPolygon, tree: SkipDecisionTree, max_optima: int = 10_000) -> list[SlideFamily]:
    """Continua of non-vertex optima generated from the vertex-anchored ones.

    Only optima whose kept vertices include ``p[i-1]``, one of ``p[i]`` /
    ``p[i+1]`` and ``p[i+2]`` consecutively, with side ``i`` parallel to
    ``p[i-1] p[i+2]``, give rise to a family.
    """
    parallel = set(parallel_sides(C))
    if not parallel:
        return []
    found: dict = {}
    for k, cut in enumerate(tree.paths()):
        if k >= max_optima:
            break
        dropped = set(cut)
        keep = [i for i in range(C.n) if i not in dropped]
        fam = _families_for(C, vertex_polygon(C, keep), parallel)
        if fam is None:
            continue
        # both ends of a slide are vertex optima; report each continuum once,
        # based at the end where the sliding anchor sits at the side's start
        idx = [a.index for a in fam.base_witness.anchors]
        sliders = {idx[pos] for pos, _ in fam.slidable}
        key = (frozenset(idx) - sliders, frozenset(side for _, side in fam.slidable))
        at_start = sum(idx[pos] == side for pos, side in fam.slidable)
        if key not in found or at_start > found[key][0]:
            found[key] = (at_start, k, fam)
    return [fam for _, _, fam in sorted(found.values(), key=lambda e: e[1])]


def min_area_inscribed(C: ConvexPolygon) -> MinAreaResult:
    T = triangle_weights(C)
    A, tree = max_nonconsecutive_cycle(T)
    cut = _lexmin_subset(tree)
    dropped = set(cut)
    keep = [i for i in range(C.n) if i not in dropped]
    witness = vertex_polygon(C, keep)
    return MinAreaResult(
        value=area(C) - A,
        cut_area=A,
        one_witness=witness,
        cut_corners=cut,
        all_vertex_optima=tree,
        slide_families=tuple(slide_families(C, tree)),
    )
