"""U/N vertex patterns of inscribed polygons and hosts that realise them.

A pattern is a plain string over ``{"U", "N"}``; position ``k`` is ``U``
when host vertex ``k`` is a vertex of the inscribed polygon. Patterns are
cyclic, so "runs" wrap around the end of the string.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import EpsTooLarge, GeometryError, NotAdmissible, ParamsTooLarge
from .geometry import ConvexPolygon, InscribedPolygon, validate_polygon

MAX_HALVINGS = 40


def check_word(s: str) -> str:
    s = s.strip().upper()
    if len(s) < 5 or set(s) - {"U", "N"}:
        raise ValueError(f"expected a U/N word of length >= 5, got {s!r}")
    return s


def _has_cyclic(s: str, run: str) -> bool:
    return run in s + s[: len(run) - 1]


def rotations(s: str) -> set[str]:
    return {s[k:] + s[:k] for k in range(len(s))}


def equal_up_to_rotation(a: str, b: str) -> bool:
    return len(a) == len(b) and b in a + a


def sequence_of(C: ConvexPolygon, Q: InscribedPolygon) -> str:
    if Q.host is not C and not np.array_equal(Q.host.vertices, C.vertices):
        raise ValueError("polygon is inscribed in a different host")
    return Q.sequence()


def area_admissible(s: str) -> bool:
    """No cyclic NN (a side would be missed) and no cyclic UUU."""
    s = check_word(s)
    return not _has_cyclic(s, "NN") and not _has_cyclic(s, "UUU")


def perimeter_admissible(s: str) -> bool:
    s = check_word(s)
    return not _has_cyclic(s, "UUU")


def admissible_words(n: int, kind: str = "area") -> list[str]:
    test = {"area": area_admissible, "perimeter": perimeter_admissible}[kind]
    return [w for w in ("".join(b) for b in itertools.product("NU", repeat=n)) if test(w)]


def _gaps(s: str) -> tuple[list[int], list[int]]:
    """Positions of the Ns and the number of Us after each one."""
    n = len(s)
    ns = [k for k in range(n) if s[k] == "N"]
    gaps = [((ns[(j + 1) % len(ns)] - ns[j] - 1) % n) for j in range(len(ns))]
    if len(ns) == 1:
        gaps = [n - 1]
    return ns, gaps


def _outward(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = b - a
    d = d / np.linalg.norm(d)
    return d, np.array([d[1], -d[0]])


def _place(s: str, base: list[np.ndarray], glue) -> np.ndarray:
    """Assign ``base`` points to N positions and glued points to the Us."""
    ns, gaps = _gaps(s)
    pts = [None] * len(s)
    for j, pos in enumerate(ns):
        pts[pos] = base[j]
        a, b = base[j], base[(j + 1) % len(base)]
        for t, p in enumerate(glue(j, gaps[j], a, b)):
            pts[(pos + 1 + t) % len(s)] = p
    return np.array(pts)


def _area_points(s: str, eps: float) -> np.ndarray:
    k = s.count("N")
    if k == 2:
        base = [np.array([-1.0, 0.0]), np.array([1.0, 0.0])]
    else:
        t = 2 * math.pi * np.arange(k) / k
        base = list(np.column_stack([np.cos(t), np.sin(t)]))
    h = 0.5 * eps
    top = 0.4 * h  # shorter than half the distance from a top vertex to the base midpoint

    def glue(j, count, a, b):
        d, u = _outward(a, b)
        g = 0.5 * (a + b)
        if count == 1:
            return [g + h * u]
        return [g - 0.5 * top * d + h * u, g + 0.5 * top * d + h * u]

    return _place(s, base, glue)


def realize_area_sequence(s: str, eps: float = 1e-3, verify: bool = True) -> ConvexPolygon:
    """Host whose unique minimum-area inscribed polygon has pattern ``s``.

    Regular polygon on the N vertices with a flat triangle (one U) or flat
    trapezoid (two Us) glued on each side. ``eps`` bounds how far the glued
    vertices stand off the base; it is halved until the result validates
    and the solver confirms the pattern.
    """
    from .min_area import min_area_inscribed

    s = check_word(s)
    if not area_admissible(s):
        raise NotAdmissible(f"{s} contains NN or UUU")
    for _ in range(MAX_HALVINGS + 1):
        try:
            C = validate_polygon(_area_points(s, eps))
        except GeometryError:
            eps *= 0.5
            continue
        C = _keep_labels(C, s, _area_points(s, eps))
        if not verify:
            return C
        res = min_area_inscribed(C)
        if res.all_vertex_optima.count() == 1 and res.one_witness.sequence() == s:
            return C
        eps *= 0.5
    raise EpsTooLarge(f"no eps down to {eps:g} realises {s}")


def _keep_labels(C: ConvexPolygon, s: str, pts: np.ndarray) -> ConvexPolygon:
    # validation may have reversed the ring; the construction is already CCW
    if not np.array_equal(C.vertices, pts):
        raise GeometryError("construction came out clockwise")
    return C


def _perimeter_points(s: str, zeta: float, delta: float) -> np.ndarray:
    k = s.count("N")
    if k == 2:
        # flat obtuse isosceles triangle: base between the Ns, apex opposite
        apex = np.array([0.0, 0.3])
        base = [np.array([-1.0, 0.0]), np.array([1.0, 0.0])]

        def glue(j, count, a, b):
            if j == 0:
                return _bumps(a, b, count, zeta, delta)
            if count == 1:
                return [apex]
            return [
                apex + zeta * (a - apex) / np.linalg.norm(a - apex),
                apex + zeta * (b - apex) / np.linalg.norm(b - apex),
            ]

        return _place(s, base, glue)

    t = 2 * math.pi * np.arange(k) / k
    R = 1.0 / (2 * math.sin(math.pi / k))  # unit edge length
    base = list(R * np.column_stack([np.cos(t), np.sin(t)]))
    return _place(s, base, lambda j, count, a, b: _bumps(a, b, count, zeta, delta))


def _bumps(a, b, count, zeta, delta):
    d, u = _outward(a, b)
    m = 0.5 * (a + b)
    if count == 0:
        return []
    if count == 1:
        return [m + delta * u]
    return [m - 0.5 * zeta * d + delta * u, m + 0.5 * zeta * d + delta * u]


def realize_perimeter_sequence(
    s: str, zeta: float = 1e-2, delta: float | None = None, verify: bool = True
) -> ConvexPolygon:
    """Host whose minimum-perimeter inscribed polygon has pattern ``s``.

    With at least three Ns: a regular polygon of unit edge on the N
    vertices, each side carrying zero, one (midpoint) or two (``zeta``
    apart) extra vertices pushed out by ``delta``. With two Ns: a flat
    obtuse isosceles triangle whose base gets the bumps and whose apex is
    kept (one U) or cut off at distance ``zeta`` (two Us). Both parameters
    are halved until the solver confirms a unique optimum with pattern s.
    """
    from .min_perimeter import min_perimeter_inscribed

    s = check_word(s)
    if not perimeter_admissible(s):
        raise NotAdmissible(f"{s} contains UUU")
    n = len(s)
    if s == "N" * n:
        t = 2 * math.pi * np.arange(n) / n
        return validate_polygon(np.column_stack([np.cos(t), np.sin(t)]))
    k = s.count("N")
    if delta is None:
        R = 1.0 if k == 2 else 1.0 / (2 * math.sin(math.pi / k))
        delta = 1e-4 * R
    for _ in range(MAX_HALVINGS + 1):
        pts = _perimeter_points(s, zeta, delta)
        try:
            C = _keep_labels(validate_polygon(pts), s, pts)
        except GeometryError:
            zeta, delta = 0.5 * zeta, 0.5 * delta
            continue
        if not verify:
            return C
        res = min_perimeter_inscribed(C)
        if res.witness.sequence() == s and res.optimal_sequences() == {s}:
            return C
        zeta, delta = 0.5 * zeta, 0.5 * delta
    raise ParamsTooLarge(f"no zeta/delta realises {s}")
