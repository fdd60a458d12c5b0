"""Which U/N patterns can an optimal inscribed polygon have?

Write U where the optimum keeps a host vertex and N where it does not. For
minimum area the kept vertices come in runs of one or two separated by single
cuts; for minimum perimeter only runs of three Us are ruled out. Every
admissible pattern is realised by some host, and this script builds those
hosts and solves them again to recover the pattern.

    python demos/sequences_tour.py --out /tmp/tour
"""
import argparse
from pathlib import Path

from inscribed import (
    area_admissible,
    min_area_inscribed,
    min_perimeter_inscribed,
    perimeter_admissible,
    realize_area_sequence,
    realize_perimeter_sequence,
)
from inscribed.io import render_svg
from inscribed.sequences import admissible_words


def main(out: Path):
    out.mkdir(parents=True, exist_ok=True)
    for s in ("NUNUNUUNUNUU", "NNUNU", "NUUNU", "UUUNN"):
        print(f"{s:>14}: area {area_admissible(s)!s:5}  perimeter {perimeter_admissible(s)}")

    print("area round trips")
    for n in (5, 6, 7):
        words = admissible_words(n, "area")
        got = [min_area_inscribed(realize_area_sequence(s)).one_witness.sequence() for s in words]
        print(f"  n = {n}: {len(words)} patterns, recovered {sum(a == b for a, b in zip(words, got))}")

    s = "NUNUNUUNUNUU"
    C = realize_area_sequence(s)
    res = min_area_inscribed(C)
    print(f"  {s}: rebuilt as a {C.n}-gon, optimum pattern {res.one_witness.sequence()}")
    (out / "sequence_area.svg").write_text(render_svg(C, [res.one_witness]))

    print("perimeter round trips")
    for s in ("NUUNU", "NUUNUU", "NNNNN"):
        C = realize_perimeter_sequence(s)
        res = min_perimeter_inscribed(C)
        print(f"  {s}: optimum pattern {res.witness.sequence()}, perimeter {res.value:.6f}")
        (out / f"sequence_perimeter_{s}.svg").write_text(render_svg(C, [res.witness]))
    print(f"SVG files written to {out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("demo_output"))
    main(ap.parse_args().out)
