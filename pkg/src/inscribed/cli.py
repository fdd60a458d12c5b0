"""Command-line front end: ``python -m inscribed <subcommand> ...``.

Exit status 0 on success, 1 when the input is rejected, 2 on internal
failure; errors are reported as a JSON object on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import io
from .circumscribed import check_eq5, max_diameter_circumscribed
from .errors import DocumentSyntaxError, EpsTooLarge, GeometryError, NotAdmissible, ParamsTooLarge
from .min_area import min_area_inscribed
from .min_perimeter import check_reflection_law, min_perimeter_inscribed
from .sequences import (
    area_admissible,
    check_word,
    perimeter_admissible,
    realize_area_sequence,
    realize_perimeter_sequence,
)

class UsageError(ValueError):
    pass


USER_ERRORS = (GeometryError, NotAdmissible, EpsTooLarge, ParamsTooLarge, DocumentSyntaxError, UsageError, OSError)


def _word(text: str) -> str:
    try:
        return check_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_json(path: str) -> dict:
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise DocumentSyntaxError(f"{path}: expected a JSON object")
    return doc


def _write_svg(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _residual_list(values) -> list:
    return [None if r is None else float(r) for r in values]


def _min_area(args) -> dict:
    C = io.parse_polygon(_read(args.polygon))
    t = time.perf_counter_ns()
    res = min_area_inscribed(C)
    dt = time.perf_counter_ns() - t
    diag = {
        "cut_corners": list(res.cut_corners),
        "optimum_count": res.all_vertex_optima.count(),
        "slide_families": [
            {"cut": [i for i in range(C.n) if i not in {a.index for a in f.base_witness.anchors}],
             "slidable": [list(e) for e in f.slidable]}
            for f in res.slide_families
        ],
    }
    _write_svg(args.svg, io.render_svg(C, [res.one_witness]))
    return io.result_document("min-area", res.value, res.one_witness, diag, dt)


def _min_perimeter(args) -> dict:
    C = io.parse_polygon(_read(args.polygon))
    t = time.perf_counter_ns()
    res = min_perimeter_inscribed(C)
    dt = time.perf_counter_ns() - t
    diag = {
        "reflection_residuals": _residual_list(check_reflection_law(C, res.witness)),
        "best_with_vertex": res.p1,
        "optimal_sequences": sorted(res.optimal_sequences()),
    }
    shown = [res.witness]
    if res.family is not None:
        diag["all_N_kind"] = res.family.kind
        if res.family.interval is not None:
            diag["family_interval"] = list(res.family.interval)
            shown = list(res.family.witnesses)
    _write_svg(args.svg, io.render_svg(C, shown))
    return io.result_document("min-perimeter", res.value, res.witness, diag, dt)


def _circum_diameter(args) -> dict:
    C = io.parse_polygon(_read(args.polygon))
    t = time.perf_counter_ns()
    rep = max_diameter_circumscribed(C)
    dt = time.perf_counter_ns() - t
    diag = {
        "resolved": rep.resolved,
        "pairs": [list(p) for p in rep.pairs],
        "hull": list(rep.hull),
        "external_points": rep.points.tolist(),
    }
    _write_svg(args.svg, io.render_svg(C, [], {"points": rep.points, "hull": rep.points[rep.hull]}))
    return io.result_document("circum-diameter", rep.value, None, diag, dt)


def _check_sequence(args) -> dict:
    s = args.word
    test = area_admissible if args.kind == "area" else perimeter_admissible
    return {"sequence": s, "kind": args.kind, "admissible": test(s)}


def _realize_sequence(args) -> dict:
    if args.kind == "area":
        kw = {} if args.eps is None else {"eps": args.eps}
        C = realize_area_sequence(args.word, **kw)
        res = min_area_inscribed(C)
        value, witness = res.value, res.one_witness
    else:
        kw = {k: getattr(args, k) for k in ("zeta", "delta") if getattr(args, k) is not None}
        C = realize_perimeter_sequence(args.word, **kw)
        res = min_perimeter_inscribed(C)
        value, witness = res.value, res.witness
    _write_svg(args.svg, io.render_svg(C, [witness]))
    doc = io.result_document(f"realize-{args.kind}", value, witness)
    doc["polygon"] = io.polygon_document(C)
    return doc


def _verify(args) -> dict:
    C = io.parse_polygon(_read(args.polygon))
    doc = _load_json(args.witness)
    if "circumscribed" in doc:
        reports = check_eq5(C, np.asarray(doc["circumscribed"], dtype=float))
        res = [r.residual for r in reports]
        kind = "side-stationarity"
    else:
        Q = io.witness_from_document(C, doc)
        res = check_reflection_law(C, Q)
        kind = "reflection-law"
    finite = [abs(r) for r in res if r is not None]
    worst = max(finite, default=0.0)
    return {
        "check": kind,
        "residuals": _residual_list(res),
        "max_residual": worst,
        "ok": worst <= args.tol * (1 if kind == "reflection-law" else C.scale()),
    }


def _bench(args):
    rows = io.bench(args.problem, args.sizes, seed=args.seed, repeats=args.repeats)
    return io.bench_csv(rows)


def _render(args):
    C = io.parse_polygon(_read(args.polygon))
    witnesses, notes = [], {}
    for path in args.result or ():
        doc = _load_json(path)
        if "witness" in doc:
            witnesses.append(io.witness_from_document(C, doc))
        pts = doc.get("diagnostics", {}).get("external_points")
        if pts is not None:
            notes["points"] = pts
            notes["hull"] = [pts[k] for k in doc["diagnostics"]["hull"]]
    svg = io.render_svg(C, witnesses, notes)
    if args.svg:
        _write_svg(args.svg, svg)
        return None
    return svg


def _sizes(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from exc
    if not out or min(out) < 3:
        raise argparse.ArgumentTypeError("sizes must be integers >= 3")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="inscribed", description="Extremal polygons inscribed in / circumscribed about a convex polygon.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("min-area", _min_area, "minimum-area inscribed polygon"),
        ("min-perimeter", _min_perimeter, "minimum-perimeter inscribed polygon"),
        ("circum-diameter", _circum_diameter, "maximum diameter of a circumscribed polygon"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("polygon", help='polygon document, or "-" for stdin')
        sp.add_argument("--svg", metavar="PATH")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("check-sequence", help="admissibility of a U/N pattern")
    sp.add_argument("word", type=_word)
    sp.add_argument("--kind", choices=("area", "perimeter"), default="area")
    sp.set_defaults(func=_check_sequence)

    sp = sub.add_parser("realize-sequence", help="build a host realising a U/N pattern")
    sp.add_argument("word", type=_word)
    sp.add_argument("--kind", choices=("area", "perimeter"), default="area")
    sp.add_argument("--eps", type=_positive)
    sp.add_argument("--zeta", type=_positive)
    sp.add_argument("--delta", type=_positive)
    sp.add_argument("--svg", metavar="PATH")
    sp.set_defaults(func=_realize_sequence)

    sp = sub.add_parser("verify", help="check a witness against its optimality condition")
    sp.add_argument("polygon")
    sp.add_argument("witness", help='result document with "witness" anchors, or {"circumscribed": [[x, y], ...]}')
    sp.add_argument("--tol", type=float, default=1e-7)
    sp.set_defaults(func=_verify)

    sp = sub.add_parser("bench", help="CSV of n,wall_ns over a size ladder")
    sp.add_argument("--problem", choices=sorted(io.BENCH_SIZES), default="min-area")
    sp.add_argument("--sizes", type=_sizes)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--repeats", type=int, default=3)
    sp.set_defaults(func=_bench)

    sp = sub.add_parser("render", help="SVG of a polygon and any result documents")
    sp.add_argument("polygon")
    sp.add_argument("--result", action="append", metavar="PATH")
    sp.add_argument("--svg", metavar="PATH")
    sp.set_defaults(func=_render)
    return p


def _fail(exc: BaseException, code: int) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(exc, 1)
    try:
        out = args.func(args)
    except USER_ERRORS as exc:
        return _fail(exc, 1)
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        return _fail(exc, 2)
    if out is not None:
        sys.stdout.write(out if isinstance(out, str) else io.dumps(out) + "\n")
    return 0


def main() -> None:
    sys.exit(run_cli())
