import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import minimize_scalar

from inscribed.errors import BudgetExceeded
from inscribed.geometry import polygon_perimeter, random_convex_polygon, regular_polygon
from inscribed.min_perimeter import min_perimeter_inscribed
from inscribed.oracles import (
    OracleBudget,
    _best_on_segment,
    _best_pair,
    brute_min_area,
    global_min_perimeter,
    pairwise_diameter,
    relax_min_perimeter,
)
from inscribed.sequences import area_admissible


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=0)


def test_brute_min_area_examples():
    value, cuts = brute_min_area(regular_polygon(5))
    T = 0.5 * (2 * math.sin(math.radians(36))) ** 2 * math.sin(math.radians(108))
    assert value == pytest.approx(2.5 * math.sin(math.radians(72)) - 2 * T, rel=1e-12)
    assert len(cuts) == 5
    assert brute_min_area(regular_polygon(6))[1] == [(0, 2, 4), (1, 3, 5)]
    with pytest.raises(BudgetExceeded):
        brute_min_area(random_convex_polygon(20, 0))


def test_brute_min_area_minimizers_are_area_admissible(random_polygons):
    for C in random_polygons(50, 5, 12, seed=3):
        for cut in brute_min_area(C)[1]:
            assert area_admissible("".join("N" if i in cut else "U" for i in range(C.n)))


@given(
    st.tuples(st.floats(-5, 5), st.floats(0.1, 5)),
    st.tuples(st.floats(-5, 5), st.floats(-5, 5)),
)
def test_one_dimensional_step_matches_bounded_search(a, b):
    s0, s1 = np.array([0.0, 0.0]), np.array([1.0, 0.0])
    a, b = np.array(a), np.array(b)
    f = lambda t: np.linalg.norm(a - (s0 + t * (s1 - s0))) + np.linalg.norm(b - (s0 + t * (s1 - s0)))
    t = _best_on_segment(a, b, s0, s1)
    ref = minimize_scalar(f, bounds=(0, 1), method="bounded", options={"xatol": 1e-12})
    assert f(t) <= ref.fun + 1e-9


def test_relax_regular_pentagon_midpoints():
    value, Q = relax_min_perimeter(regular_polygon(5), "NNNNN")
    assert value == pytest.approx(5 * math.sin(math.radians(72)), rel=1e-12)
    assert all(a.tau == pytest.approx(0.5, abs=1e-9) for a in Q.anchors)


def test_relax_regular_hexagon_value_only():
    value, _ = relax_min_perimeter(regular_polygon(6), "NNNNNN")
    assert value == pytest.approx(3 * math.sqrt(3), rel=1e-9)


def test_relax_without_free_anchors():
    C = regular_polygon(6)
    value, Q = relax_min_perimeter(C, "UNUNUN")
    assert value == pytest.approx(polygon_perimeter(C.vertices[[0, 2, 4]]), rel=1e-15)


@given(st.integers(5, 9), st.integers(0, 2**32 - 1))
def test_relax_is_monotone(n, seed):
    C = random_convex_polygon(n, seed)
    trace = []
    relax_min_perimeter(C, "N" * n, trace=trace)
    assert all(b <= a + 1e-14 * a for a, b in zip(trace, trace[1:]))


def test_global_examples():
    for C in (regular_polygon(5), regular_polygon(6), random_convex_polygon(8, 42)):
        value, _ = global_min_perimeter(C)
        assert value == pytest.approx(min_perimeter_inscribed(C).value, rel=1e-6)
    with pytest.raises(BudgetExceeded):
        global_min_perimeter(random_convex_polygon(13, 0))


def test_pairwise_diameter_examples():
    value, pairs = pairwise_diameter([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert value == pytest.approx(math.sqrt(2)) and pairs == [(0, 2), (1, 3)]
    value, pairs = pairwise_diameter(regular_polygon(6).vertices)
    assert value == pytest.approx(2) and pairs == [(0, 3), (1, 4), (2, 5)]
    assert pairwise_diameter([(0, 0), (1, 0), (3, 0)]) == (3.0, [(0, 2)])


@pytest.mark.parametrize(
    "C, word",
    [
        (regular_polygon(5), "NNNUU"),  # both free anchors close on p1
        (regular_polygon(6), "NNNNNU"),  # two pairs close on p1 and p3 together
        (random_convex_polygon(8, 42), "NNUNNNNU"),  # flat middle anchor
    ],
)
def test_relax_corner_collapse_is_pinned(C, word):
    trace = []
    assert relax_min_perimeter(C, word, trace=trace) is None
    assert len(trace) < 1000


def test_best_pair_reaches_the_corner():
    H = regular_polygon(6)
    # with outer neighbours p5 and p3 the shortest path is through p1
    assert _best_pair(H[5], H[3], H[0], H[1], H[2]) == (1.0, 0.0)
