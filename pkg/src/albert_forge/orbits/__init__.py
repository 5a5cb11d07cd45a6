"""Orbit machinery: points, BFS, censuses, subspaces and closed forms."""

from .bfs import BudgetExceeded, OrbitReport, orbit_bfs
from .census import brute_force_color_census, structured_white_enumeration
from .formulas import closed_form_counts, order_identities
from .lines import LineType, line_type
from .points import ProjPoint, canonical_point
from .subspaces import pure_white, pure_white_subspaces, seventeen_space, w10_space
from .twisted import TwoE6PointType, twoE6_point_type

__all__ = [
    "BudgetExceeded",
    "LineType",
    "OrbitReport",
    "ProjPoint",
    "TwoE6PointType",
    "brute_force_color_census",
    "canonical_point",
    "closed_form_counts",
    "line_type",
    "orbit_bfs",
    "order_identities",
    "pure_white",
    "pure_white_subspaces",
    "seventeen_space",
    "structured_white_enumeration",
    "twoE6_point_type",
    "w10_space",
]
