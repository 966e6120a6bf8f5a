"""Auxiliary elliptic curves, the order-3 coincidence system, pythagorean
parametrization and the curves C' and C''.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .. import poly
from ..ecurve.curve import Curve, Point, WeierstrassCurve, field_sqrt
from ..errors import DegenerateParameter, UnknownCurve
from ..qfield import QuadElem, QuadraticField

EXCLUDED_RATIOS = frozenset(Fraction(v) for v in ("-2", "-1", "-1/2", "0", "1"))


@dataclass(frozen=True)
class AuxCurve:
    name: str
    model: str
    listed_points: tuple = ()
    # unverified statements carried along as metadata
    notes: tuple = ()

    def over(self, K):
        """The curve over K (None for Q)."""
        c = (lambda v: v) if K is None else K
        if self.name == "E0":
            return Curve(c(1), c(4))
        if self.name == "E1":
            return WeierstrassCurve(c(0), c(4), c(0))
        if self.name == "E2":
            return WeierstrassCurve(c(0), c(-1), c(0))
        if self.name == "EC":
            # y^2 + 2xy + 2y = x^3 - x^2 - 2x becomes Y^2 = x^3 + 1 with Y = y + x + 1
            return WeierstrassCurve(c(0), c(0), c(1))
        raise UnknownCurve(self.name)

    def points_over(self, K):
        c = (lambda v: v) if K is None else K
        return [Point(c(x), c(y)) for x, y in self.listed_points]


AUX_CURVES = {
    "E0": AuxCurve("E0", "y^2 = x(x + 4)(x + 1) = x^3 + 5x^2 + 4x",
                   ((0, 0), (-4, 0), (-1, 0), (-2, 2), (-2, -2), (2, 6), (2, -6)),
                   ("rank 0 over Q(sqrt D) for D = -2, -7, -11, -163 (not verified here)",)),
    "E1": AuxCurve("E1", "y^2 = x^3 + 4x", ((0, 0), (2, 4), (2, -4)),
                   ("rank statements over the fields are not verified here",)),
    "E2": AuxCurve("E2", "y^2 = x^3 - x", ((0, 0), (1, 0), (-1, 0)),
                   ("rank statements over the fields are not verified here",)),
    "EC": AuxCurve("EC", "y^2 + 2xy + 2y = x^3 - x^2 - 2x", (),
                   ("rank 0 exactly for D = -1, -2, -3 (not verified here)",)),
}


def aux_curve(name: str) -> AuxCurve:
    try:
        return AUX_CURVES[name]
    except KeyError:
        raise UnknownCurve(f"unknown auxiliary curve {name!r}") from None


def ec_to_short(P: Point) -> Point:
    """(x, y) on y^2 + 2xy + 2y = x^3 - x^2 - 2x to (x, y + x + 1) on Y^2 = x^3 + 1."""
    if P.is_infinity:
        return P
    return Point(P.x, P.y + P.x + 1)


def short_to_ec(P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.x, P.y - P.x - 1)


# the coincidence system d a^3 (a + 2b) = a0^3 (a0 + 2b0) c0^2, d b^3 (b + 2a) = b0^3 (b0 + 2a0) c0^2

def _ratio_ok(a, b) -> bool:
    r = a / b
    if isinstance(r, QuadElem):
        return not (r.is_rational() and r.a in EXCLUDED_RATIOS)
    return Fraction(r) not in EXCLUDED_RATIOS


def lem3_solution_check(a, b, a0, b0, c0, d) -> bool:
    """Both equations hold, d is a non-square and neither ratio is in {-2,-1,-1/2,0,1}."""
    if not b or not b0:
        return False
    if field_sqrt(d) is not None:
        return False
    if not (_ratio_ok(a, b) and _ratio_ok(a0, b0)):
        return False
    return (d * a ** 3 * (a + 2 * b) == a0 ** 3 * (a0 + 2 * b0) * c0 * c0
            and d * b ** 3 * (b + 2 * a) == b0 ** 3 * (b0 + 2 * a0) * c0 * c0)


def solution_from_curves(E: Curve, d):
    """(a, b, a0, b0, c0, d) built from order-3 witnesses of E and of E^d, or None.

    E: alpha = a^3 (a+2b) z^2, E^d: d alpha = a0^3 (a0+2b0) z0^2, so c0 = z0 / z."""
    from ..ecurve.criteria import order_criteria
    ok, w = order_criteria(E, 3)
    okd, wd = order_criteria(E.twist(d), 3)
    if not (ok and okd):
        return None
    return (w["a"], w["b"], wd["a"], wd["b"], wd["z"] / w["z"], d)


def pythag_param(t):
    """(2t, t^2 - 1, t^2 + 1)."""
    if t == 0 or t == 1 or t == -1:
        raise DegenerateParameter("t must avoid 0, 1 and -1")
    return 2 * t, t * t - 1, t * t + 1


@dataclass(frozen=True)
class HyperellipticModel:
    name: str
    rhs: tuple                      # s^2 = rhs(t), coefficients lowest degree first
    working: tuple = ()             # y^2 = working(t) after the substitution
    substitution: str = ""
    target: str = ""
    notes: tuple = field(default_factory=tuple)

    def rhs_value(self, t):
        return poly.evaluate(list(self.rhs), t)


def _expand(*factors):
    out = [1]
    for f in factors:
        out = poly.mul(out, list(f))
    return tuple(out)


def cprime_curves(which: str) -> HyperellipticModel:
    if which in ("C'", "Cp", "C1"):
        # 4 t^3 (t + 1)^2 (t^2 - 1), sent to y^2 = x^3 - x by (t, s) -> (t, s / (2t^2 + 2t))
        rhs = _expand([0, 0, 0, 4], [1, 1], [1, 1], [-1, 0, 1])
        return HyperellipticModel("C'", rhs, (0, -1, 0, 1), "y = s / (2t^2 + 2t)", "y^2 = x^3 - x")
    if which in ("C''", "Cpp", "C2"):
        # 4 t^3 (t^2 + 1)(t^2 + 2t - 1); s = 2 t y gives y^2 = t (t^2 + 1)(t^2 + 2t - 1)
        rhs = _expand([0, 0, 0, 4], [1, 0, 1], [-1, 2, 1])
        work = _expand([0, 1], [1, 0, 1], [-1, 2, 1])
        return HyperellipticModel("C''", rhs, work, "s = 2 t y", "genus 2")
    raise UnknownCurve(f"unknown curve {which!r}")


def cprime_map(t, s):
    """(t, s) on C' to (t, s / (2t^2 + 2t)) on y^2 = x^3 - x."""
    return t, s / (2 * t * t + 2 * t)


def order8_point(u, v, w):
    """The order-8 point on E(u^4, v^4) for a pythagorean triple, x = uv(u+w)(v+w)."""
    return Point(u * v * (u + w) * (v + w), u * v * w * (u + v) * (u + w) * (v + w))
