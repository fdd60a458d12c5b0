import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from inscribed.geometry import (
    Anchor,
    InscribedPolygon,
    midpoint_polygon,
    polygon_perimeter,
    random_convex_polygon,
    regular_polygon,
    validate_polygon,
)
from inscribed.min_perimeter import (
    build_pi_table,
    check_reflection_law,
    min_perimeter_inscribed,
    solve_all_N,
    unfold_shortest_arc,
)
from inscribed.oracles import _best_on_segment, global_min_perimeter

# Frozen from the coordinate-descent oracle on circumradius-1 polygons.
PENTAGON_MIN_PERIMETER = 4.755282581475767
HEXAGON_MIN_PERIMETER = 5.196152422706632
# Pentagon with a short, nearly flat side 1: the fold from p0 to p3 leaves
# that side and no closed billiard orbit exists.
FLAT_PENTAGON = [(0, 0), (4, 0), (4.3, 0.4), (2, 3), (-1, 1)]


def _polyline_length(C, anchors):
    pts = np.array([a.point(C) for a in anchors])
    return float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())


def test_unfold_two_step_is_a_diagonal():
    C = random_convex_polygon(8, 1)
    arc, length = unfold_shortest_arc(C, 2, 4)
    assert [a.index for a in arc] == [2, 4]
    assert length == pytest.approx(np.linalg.norm(C[4] - C[2]))


def test_unfold_regular_hexagon_matches_descent():
    H = regular_polygon(6)
    arc, length = unfold_shortest_arc(H, 0, 3)
    assert arc[1].kind == "side" and arc[1].index == 1
    tau = _best_on_segment(H[0], H[3], H[1], H[2])
    assert arc[1].tau == pytest.approx(tau, abs=1e-12)
    assert length == pytest.approx(_polyline_length(H, arc), rel=1e-12)


def test_unfold_absent_when_fold_leaves_side():
    C = validate_polygon(FLAT_PENTAGON)
    assert unfold_shortest_arc(C, 0, 3) is None
    assert unfold_shortest_arc(C, 0, 3, reverse=True) is None
    # the 1-D optimum is pinned to an endpoint of the side
    assert _best_on_segment(C[0], C[3], C[1], C[2]) in (0.0, 1.0)


@given(st.integers(5, 12), st.integers(0, 2**32 - 1), st.data())
def test_unfold_isometry_and_reverse_agreement(n, seed, data):
    C = random_convex_polygon(n, seed)
    i = data.draw(st.integers(0, n - 1))
    k = data.draw(st.integers(3, n))
    fwd = unfold_shortest_arc(C, i, i + k)
    rev = unfold_shortest_arc(C, i, i + k, reverse=True)
    assert (fwd is None) == (rev is None)
    if fwd is None:
        return
    assert fwd[1] == pytest.approx(rev[1], rel=1e-10)
    assert fwd[1] == pytest.approx(_polyline_length(C, fwd[0]), rel=1e-10)
    for a, b in zip(fwd[0], rev[0]):
        assert a.index == b.index and a.tau == pytest.approx(b.tau, abs=1e-9)


def test_pi_table_base_rows():
    C = random_convex_polygon(9, 4)
    table = build_pi_table(C)
    assert np.allclose([table(i, 1) for i in range(9)], C.side_lengths())
    assert np.allclose([table(i, 2) for i in range(9)], [np.linalg.norm(C[i + 2] - C[i]) for i in range(9)])


def test_pi_table_split_inequality(rng):
    for _ in range(10):
        C = random_convex_polygon(int(rng.integers(5, 13)), rng)
        table = build_pi_table(C)
        for _ in range(10):
            i = int(rng.integers(C.n))
            k = int(rng.integers(2, C.n + 1))
            u = int(rng.integers(1, k))
            assert table(i, k) <= table(i, u) + table((i + u) % C.n, k - u) * (1 + 1e-12)


def test_pi_table_arcs_realise_lengths(rng):
    C = random_convex_polygon(10, rng)
    table = build_pi_table(C)
    for i in range(C.n):
        for k in (3, 6, 10):
            assert _polyline_length(C, table.arc(i, k)) == pytest.approx(table(i, k), rel=1e-10)


def test_regular_pentagon_unique_midpoint():
    C = regular_polygon(5)
    sol = solve_all_N(C)
    assert sol.kind == "unique"
    assert sol.tau == pytest.approx(0.5, abs=1e-9)
    res = min_perimeter_inscribed(C)
    assert res.value == pytest.approx(PENTAGON_MIN_PERIMETER, rel=1e-12)
    assert res.witness.sequence() == "NNNNN"
    assert res.value == pytest.approx(midpoint_polygon(C).perimeter(), rel=1e-12)
    assert max(check_reflection_law(C, midpoint_polygon(C))) < 1e-12


def test_regular_hexagon_family_and_even_shortcut():
    C = regular_polygon(6)
    sol = solve_all_N(C)
    assert sol.kind == "family"
    lo, hi = sol.interval
    assert lo < 0.01 and hi > 0.99
    res = min_perimeter_inscribed(C)
    assert res.value == pytest.approx(HEXAGON_MIN_PERIMETER, rel=1e-12)
    assert res.value == pytest.approx(3 * math.sqrt(3), rel=1e-12)
    # p(C) = p1(C) for even n
    assert res.p1 == pytest.approx(res.value, rel=1e-9)


def test_flat_pentagon_has_no_orbit():
    C = validate_polygon(FLAT_PENTAGON)
    assert solve_all_N(C).kind == "none"
    res = min_perimeter_inscribed(C)
    assert res.family is None
    assert "U" in res.witness.sequence()
    value, _ = global_min_perimeter(C)
    assert res.value == pytest.approx(value, rel=1e-9)


def test_reflection_law_detects_perturbation():
    C = regular_polygon(5)
    Q = midpoint_polygon(C).replace(0, Anchor.on_side(0, 0.6))
    assert max(r for r in check_reflection_law(C, Q) if r is not None) > 1e-3


def test_vertex_anchors_are_not_applicable():
    C = regular_polygon(6)
    Q = InscribedPolygon(C, (Anchor.vertex(0), Anchor.on_side(1, 0.5), Anchor.vertex(3), Anchor.on_side(4, 0.5)))
    res = check_reflection_law(C, Q)
    assert res[0] is None and res[2] is None


@given(st.integers(5, 9), st.integers(0, 2**32 - 1))
def test_witness_local_optimality(n, seed):
    C = random_convex_polygon(n, seed)
    res = min_perimeter_inscribed(C)
    Q = res.witness
    assert res.value <= midpoint_polygon(C).perimeter() * (1 + 1e-12)
    assert Q.perimeter() == pytest.approx(res.value, rel=1e-12)
    for k, a in enumerate(Q.anchors):
        if a.is_vertex:
            continue
        assert check_reflection_law(C, Q)[k] < 1e-7
        for dt in (-1e-4, 1e-4):
            if 0 < a.tau + dt < 1:
                moved = Q.replace(k, Anchor.on_side(a.index, a.tau + dt))
                assert moved.perimeter() >= Q.perimeter() * (1 - 1e-14)


def test_family_witnesses_are_parallel():
    C = regular_polygon(6)
    sol = solve_all_N(C)
    P = [w.points() for w in sol.witnesses]
    per = [polygon_perimeter(p) for p in P]
    assert max(per) - min(per) <= 1e-10 * per[0]
    for a in P:
        for b in P:
            ea = np.roll(a, -1, axis=0) - a
            eb = np.roll(b, -1, axis=0) - b
            sin = np.abs(ea[:, 0] * eb[:, 1] - ea[:, 1] * eb[:, 0]) / (
                np.linalg.norm(ea, axis=1) * np.linalg.norm(eb, axis=1)
            )
            assert sin.max() < 1e-9
