"""Smallest-area inscribed polygons.

Cutting a corner p[i] off the host removes the triangle p[i-1] p[i] p[i+1].
Two cut corners must not be neighbours, so the best choice is a maximum
weight set of pairwise non-adjacent corners on a cycle. This script first
solves a generic heptagon and the regular hexagon with its two tied optima.
It then shows a heptagon where one optimal vertex can slide along a side.

    python demos/min_area_tour.py --out /tmp/tour
"""
import argparse
from pathlib import Path

from inscribed import min_area_inscribed, random_convex_polygon, regular_polygon, validate_polygon
from inscribed.io import render_svg
from inscribed.min_area import triangle_weights

SLIDE_HEPTAGON = [(-2, 0), (-1, -0.8), (1, -0.8), (2, 0), (2.3, 2.5), (0.5, 2.9), (-2.2, 2.2)]


def main(out: Path):
    out.mkdir(parents=True, exist_ok=True)

    C = random_convex_polygon(7, 2024)
    res = min_area_inscribed(C)
    print("generic heptagon")
    print("  corner triangle areas:", " ".join(f"{t:.3f}" for t in triangle_weights(C)))
    print(f"  cut corners {res.cut_corners}, inscribed area {res.value:.6f}")
    print(f"  pattern {res.one_witness.sequence()} (U = host vertex kept)")
    (out / "min_area_generic.svg").write_text(render_svg(C, [res.one_witness]))

    H = regular_polygon(6)
    res = min_area_inscribed(H)
    cuts = sorted(res.all_vertex_optima.paths())
    print("regular hexagon")
    print(f"  {res.all_vertex_optima.count()} optimal cuts: {cuts}, area {res.value:.6f}")
    (out / "min_area_hexagon.svg").write_text(render_svg(H, [res.witness_for(c) for c in cuts]))

    S = validate_polygon(SLIDE_HEPTAGON)
    res = min_area_inscribed(S)
    fam = res.slide_families[0]
    print("heptagon with side 1 parallel to the diagonal p0 p3")
    print(f"  optimal cuts {sorted(res.all_vertex_optima.paths())}")
    # the two vertex optima are the ends of this slide
    for tau in (0.1, 0.5, 0.9):
        Q = fam.slide(0, tau)
        print(f"  slide tau = {tau:.1f}: pattern {Q.sequence()}, area {Q.area():.9f}")
    (out / "min_area_slide.svg").write_text(render_svg(S, [fam.slide(0, t) for t in (0.1, 0.5, 0.9)]))
    print(f"SVG files written to {out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("demo_output"))
    main(ap.parse_args().out)
