"""Extremal convex polygons inscribed in, and circumscribed about, a convex polygon."""
from .circumscribed import (
    DiameterReport,
    check_eq5,
    external_points,
    max_diameter_circumscribed,
    perimeter_profile,
    propagate_eq5,
    support_polygon,
    validate_angle_condition,
)
from .errors import *  # noqa: F401,F403
from .geometry import (
    Anchor,
    ConvexPolygon,
    InscribedPolygon,
    midpoint_polygon,
    random_convex_polygon,
    regular_polygon,
    validate_polygon,
    vertex_polygon,
)
from .min_area import MinAreaResult, SkipDecisionTree, SlideFamily, min_area_inscribed, triangle_weights
from .min_perimeter import (
    FagnanoSolution,
    MinPerimResult,
    PiTable,
    build_pi_table,
    check_reflection_law,
    min_perimeter_inscribed,
    solve_all_N,
    unfold_shortest_arc,
)
from .sequences import (
    area_admissible,
    perimeter_admissible,
    realize_area_sequence,
    realize_perimeter_sequence,
    sequence_of,
)

__version__ = "0.1.0"
