"""Elliptic curves y^2 = x(x + alpha)(x + beta) and general short models over Q,
quadratic fields, towers K(sqrt d) and finite fields."""
from .criteria import galois_square_units, order_criteria, verify_stable_subgroup
from .curve import INFINITY, Curve, Point, WeierstrassCurve, make_curve, order_of_point
from .reduction import count_points, reduce_curve, torsion_bound
from .torsion import TorsionGroup, extension_data, torsion_subgroup, torsion_subgroup_ext

__all__ = [
    "galois_square_units", "order_criteria", "verify_stable_subgroup",
    "INFINITY", "Curve", "Point", "WeierstrassCurve", "make_curve", "order_of_point",
    "count_points", "reduce_curve", "torsion_bound",
    "TorsionGroup", "extension_data", "torsion_subgroup", "torsion_subgroup_ext",
]
