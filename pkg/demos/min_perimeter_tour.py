"""Shortest inscribed polygons and closed billiard paths.

A shortest inscribed polygon either passes through some host vertices or is
a closed billiard path that bounces once off every side. The first kind is
assembled from a table of shortest boundary-anchored arcs; the second comes
from unfolding the host by repeated reflection. Regular hosts give the
midpoint polygon, and the regular hexagon has a whole family of parallel
orbits. A flattened pentagon shows the case with no orbit at all.

    python demos/min_perimeter_tour.py --out /tmp/tour
"""
import argparse
from pathlib import Path

from inscribed import min_perimeter_inscribed, regular_polygon, validate_polygon
from inscribed.io import render_svg
from inscribed.min_perimeter import check_reflection_law, solve_all_N
from inscribed.oracles import global_min_perimeter

FLAT_PENTAGON = [(0, 0), (4, 0), (4.3, 0.4), (2, 3), (-1, 1)]


def describe(name, C):
    res = min_perimeter_inscribed(C)
    Q = res.witness
    resid = [r for r in check_reflection_law(C, Q) if r is not None]
    print(name)
    print(f"  perimeter {res.value:.9f}, pattern {Q.sequence()}")
    print(f"  best path through a host vertex {res.p1:.9f}")
    if resid:
        print(f"  worst reflection-law residual {max(resid):.1e}")
    return res


def main(out: Path):
    out.mkdir(parents=True, exist_ok=True)

    P = regular_polygon(5)
    res = describe("regular pentagon", P)
    print("  anchor positions:", " ".join(f"{a.tau:.6f}" for a in res.witness.anchors))
    (out / "perimeter_pentagon.svg").write_text(render_svg(P, [res.witness]))

    H = regular_polygon(6)
    describe("regular hexagon", H)
    fam = solve_all_N(H)
    lo, hi = fam.interval
    print(f"  orbit family over tau in [{lo:.3g}, {hi:.3g}], all of length {fam.perimeter_value:.9f}")
    (out / "perimeter_hexagon_family.svg").write_text(render_svg(H, fam.witnesses))

    F = validate_polygon(FLAT_PENTAGON)
    res = describe("flattened pentagon", F)
    print(f"  closed orbit: {solve_all_N(F).kind}")
    value, _ = global_min_perimeter(F)
    print(f"  coordinate-descent check {value:.9f}")
    (out / "perimeter_flat.svg").write_text(render_svg(F, [res.witness]))
    print(f"SVG files written to {out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("demo_output"))
    main(ap.parse_args().out)
