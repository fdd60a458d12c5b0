"""How wide can a polygon around the host get?

A circumscribed polygon has every host vertex on its boundary. When no two
consecutive interior angles sum to at most pi, extending sides i-1 and i+1
until they meet gives an outer point x_i, and every circumscribed polygon
stays inside the hull of those points. Its diameter, found with rotating
calipers, is therefore an upper bound; it is attained when a diametral pair
of outer points is not a pair of neighbours.

    python demos/circumscribed_tour.py --out /tmp/tour
"""
import argparse
from pathlib import Path

import numpy as np

from inscribed import max_diameter_circumscribed, regular_polygon, validate_polygon
from inscribed.circumscribed import check_eq5, support_polygon
from inscribed.io import render_svg

UNRESOLVED_HEPTAGON = [
    [0.7718648016179562, 0.635786700099391],
    [-0.17766741474821385, 0.9840905902083843],
    [-0.4083217078264884, 0.9128380923896964],
    [-0.5636827817604674, 0.8259913568232911],
    [-0.6010521766673699, 0.799209785302593],
    [-0.8449059994338247, -0.5349148082832721],
    [0.40383478678814466, -0.9148319326410582],
]


def show(name, C, out):
    rep = max_diameter_circumscribed(C)
    print(name)
    print(f"  bound {rep.value:.9f} from pairs {rep.pairs}, resolved {rep.resolved}")
    notes = {"points": rep.points, "hull": rep.points[rep.hull]}
    (out / f"circum_{name.replace(' ', '_')}.svg").write_text(render_svg(C, [], notes))


def main(out: Path):
    out.mkdir(parents=True, exist_ok=True)
    show("regular hexagon", regular_polygon(6), out)
    show("regular pentagon", regular_polygon(5), out)
    show("lopsided heptagon", validate_polygon(UNRESOLVED_HEPTAGON), out)

    # the tangent-line polygon of a regular pentagon is balanced at every side
    C = regular_polygon(5)
    Q = support_polygon(C, [np.array([-C[k][1], C[k][0]]) for k in range(C.n)])
    worst = max(abs(r.residual) for r in check_eq5(C, Q))
    print(f"tangent pentagon: worst side stationarity residual {worst:.1e}")
    print(f"SVG files written to {out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("demo_output"))
    main(ap.parse_args().out)
