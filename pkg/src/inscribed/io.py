"""JSON documents, SVG rendering and timing harness."""
from __future__ import annotations

import json
import math
import time
from typing import Iterable, Sequence

import numpy as np

from .errors import DocumentSyntaxError, GeometryError
from .geometry import Anchor, ConvexPolygon, InscribedPolygon, random_convex_polygon, validate_polygon


def parse_polygon(text: str) -> ConvexPolygon:
    """Parse ``{"vertices": [[x, y], ...], "name": ...}`` into a polygon."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise DocumentSyntaxError("document must be an object with a 'vertices' field")
    verts = doc["vertices"]
    if not isinstance(verts, list):
        raise DocumentSyntaxError("'vertices' must be a list")
    for k, v in enumerate(verts):
        ok = isinstance(v, list) and len(v) == 2 and all(
            isinstance(c, (int, float)) and not isinstance(c, bool) for c in v
        )
        if not ok:
            raise DocumentSyntaxError(f"vertices[{k}]: expected a pair of numbers, got {v!r}")
    try:
        return validate_polygon(verts)
    except GeometryError as exc:
        raise type(exc)(f"vertices: {exc}") from exc


def polygon_document(C: ConvexPolygon, name: str | None = None) -> dict:
    doc = {"vertices": [[float(x), float(y)] for x, y in C.vertices]}
    if name is not None:
        doc["name"] = name
    return doc


def dump_polygon(C: ConvexPolygon, name: str | None = None) -> str:
    return dumps(polygon_document(C, name))


def result_document(
    kind: str,
    value: float,
    witness: InscribedPolygon | None = None,
    diagnostics: dict | None = None,
    timing_ns: int | None = None,
) -> dict:
    doc = {"problem": kind, "value": float(value)}
    if witness is not None:
        doc["witness"] = [a.to_dict() for a in witness.anchors]
        doc["sequence"] = witness.sequence()
    doc["diagnostics"] = diagnostics or {}
    if timing_ns is not None:
        doc["timing_ns"] = int(timing_ns)
    return doc


def _encode(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x} in document")
        return format(x, ".17g")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(doc) -> str:
    """JSON text with every float at 17 significant digits (lossless)."""
    return _encode(doc)


def witness_from_document(C: ConvexPolygon, doc: dict) -> InscribedPolygon:
    try:
        anchors = tuple(Anchor.from_dict(a) for a in doc["witness"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentSyntaxError(f"witness: {exc}") from exc
    for k, a in enumerate(anchors):
        if not 0 <= a.index < C.n:
            raise DocumentSyntaxError(f"witness[{k}]: index {a.index} outside 0..{C.n - 1}")
    return InscribedPolygon(C, anchors)


# ---------------------------------------------------------------------------
# SVG

_STYLE_HOST = 'fill="none" stroke="black" stroke-width="{w}"'
_STYLE_WITNESS = 'fill="none" stroke="{c}" stroke-width="{w}" stroke-dasharray="{d}"'
_COLORS = ("#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e")


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _path(points) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in points)


def render_svg(
    C: ConvexPolygon,
    witnesses: Sequence = (),
    annotations: dict | None = None,
    size: int = 480,
) -> str:
    """Host solid, witnesses dashed, anchors as dots.

    ``witnesses`` holds :class:`InscribedPolygon` objects or raw point rings.
    ``annotations`` may carry ``"points"`` (drawn as crosses, e.g. external
    points) and ``"hull"`` (a point ring drawn dotted).
    """
    annotations = annotations or {}
    rings = [w.points() if isinstance(w, InscribedPolygon) else np.asarray(w, float) for w in witnesses]
    extra = [np.asarray(annotations[k], float) for k in ("points", "hull") if k in annotations]
    allpts = np.vstack([C.vertices, *rings, *extra]) if (rings or extra) else C.vertices
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = hi - lo
    pad = 0.05 * float(max(span.max(), 1e-12))
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    w, h = span[0] + 2 * pad, span[1] + 2 * pad
    stroke = _fmt(0.004 * max(w, h))
    dot = _fmt(0.008 * max(w, h))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
        f'<polygon points="{_path(C.vertices)}" {_STYLE_HOST.format(w=stroke)}/>',
    ]
    dash = _fmt(0.02 * max(w, h))
    for k, ring in enumerate(rings):
        color = _COLORS[k % len(_COLORS)]
        out.append(f'<polygon points="{_path(ring)}" {_STYLE_WITNESS.format(c=color, w=stroke, d=dash)}/>')
        for x, y in ring:
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{dot}" fill="{color}"/>')
    if "hull" in annotations:
        out.append(
            f'<polygon points="{_path(annotations["hull"])}" fill="none" stroke="gray" '
            f'stroke-width="{stroke}" stroke-dasharray="{stroke} {stroke}"/>'
        )
    for x, y in annotations.get("points", ()):
        out.append(
            f'<path d="M{_fmt(x - 0.01 * w)},{_fmt(-y)} h{_fmt(0.02 * w)} '
            f'M{_fmt(x)},{_fmt(-y - 0.01 * w)} v{_fmt(0.02 * w)}" stroke="gray" stroke-width="{stroke}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# timing


def _solver(problem: str):
    from .circumscribed import max_diameter_circumscribed
    from .min_area import min_area_inscribed
    from .min_perimeter import build_pi_table

    return {
        "min-area": min_area_inscribed,
        "pi-table": build_pi_table,
        "circum-diameter": max_diameter_circumscribed,
    }[problem]


BENCH_SIZES = {
    "min-area": (1024, 2048, 4096, 8192),
    "pi-table": (32, 64, 128, 256),
    "circum-diameter": (1024, 2048, 4096, 8192),
}


def bench(problem: str, sizes: Iterable[int] | None = None, seed: int = 0, repeats: int = 3) -> list[tuple[int, int]]:
    """Best-of-``repeats`` wall time in nanoseconds per size, one seeded polygon each."""
    solve = _solver(problem)
    sizes = tuple(sizes or BENCH_SIZES[problem])
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        C = random_convex_polygon(int(n), rng)
        best = math.inf
        for _ in range(repeats):
            t = time.perf_counter_ns()
            solve(C)
            best = min(best, time.perf_counter_ns() - t)
        rows.append((int(n), int(best)))
    return rows


def loglog_slope(rows: Sequence[tuple[int, int]]) -> float:
    x = np.log([r[0] for r in rows])
    y = np.log([r[1] for r in rows])
    return float(np.polyfit(x, y, 1)[0])


def bench_csv(rows: Sequence[tuple[int, int]]) -> str:
    return "n,wall_ns\n" + "".join(f"{n},{t}\n" for n, t in rows)
