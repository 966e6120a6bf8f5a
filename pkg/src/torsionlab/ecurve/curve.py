"""Curves y^2 = x^3 + a2 x^2 + a4 x + a6 and the model E(alpha, beta).

Coordinates can live in Q (ints / Fractions), a quadratic field, a tower
K(sqrt d) or a finite field; only field operations and `sqrt` are used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from ..errors import NotOnCurve, NotTorsion, SingularCurve, TorsionLabError
from ..qfield import QuadElem, QuadraticField, rational_sqrt
from ..tower import TowerElem


def field_sqrt(x):
    if isinstance(x, (int, Fraction)):
        return rational_sqrt(x)
    return x.sqrt()


def elem_key(x):
    if isinstance(x, (int, Fraction)):
        return (Fraction(x),)
    return x.sort_key()


def field_of(x):
    """The field object an element lives in (None for Q)."""
    if isinstance(x, QuadElem):
        return x.field
    if isinstance(x, TowerElem):
        return x.tag
    if isinstance(x, (int, Fraction)):
        return None
    return getattr(x, "field", None)


@dataclass(frozen=True)
class Point:
    x: Any = None
    y: Any = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def kind(self):
        return "infinity" if self.x is None else "affine"

    def sort_key(self):
        if self.x is None:
            return ((),)
        return (elem_key(self.x), elem_key(self.y))

    def __str__(self):
        if self.x is None:
            return "O"
        return f"({self.x}, {self.y})"

    def to_json(self):
        if self.x is None:
            return "O"
        return [str(self.x), str(self.y)]


INFINITY = Point()


class CubicModel:
    """Group law on y^2 = x^3 + a2 x^2 + a4 x + a6."""

    a2: Any
    a4: Any
    a6: Any

    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def rhs_poly(self):
        return [self.a6, self.a4, self.a2, 1]

    def cubic_disc(self):
        a, b, c = self.a2, self.a4, self.a6
        return a * a * b * b - 4 * b ** 3 - 4 * a ** 3 * c - 27 * c * c + 18 * a * b * c

    def discriminant(self):
        return 16 * self.cubic_disc()

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def check(self, P: Point):
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    def point(self, x, y) -> Point:
        return self.check(Point(x, y))

    def neg(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x, -P.y)

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return INFINITY
            return self.double(P)
        lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - self.a2 - P.x - Q.x
        return Point(x3, lam * (P.x - x3) - P.y)

    def double(self, P: Point) -> Point:
        if P.is_infinity or not P.y:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * self.a2 * P.x + self.a4) / (2 * P.y)
        x3 = lam * lam - self.a2 - 2 * P.x
        return Point(x3, lam * (P.x - x3) - P.y)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: Point) -> Point:
        if n < 0:
            return self.mul(-n, self.neg(P))
        result, base = INFINITY, P
        while n:
            if n & 1:
                result = self.add(result, base)
            n >>= 1
            if n:
                base = self.double(base)
        return result

    def order(self, P: Point, max_order: int = 1000) -> int:
        Q = P
        for k in range(1, max_order + 1):
            if Q.is_infinity:
                return k
            Q = self.add(Q, P)
        raise NotTorsion(f"{P} has order > {max_order} or infinite order")

    def map_point(self, P: Point, f) -> Point:
        if P.is_infinity:
            return P
        return Point(f(P.x), f(P.y))


@dataclass(frozen=True)
class WeierstrassCurve(CubicModel):
    a2: Any
    a4: Any
    a6: Any

    def __post_init__(self):
        if not self.cubic_disc():
            raise SingularCurve(f"{self} is singular")

    @property
    def field(self):
        for c in (self.a2, self.a4, self.a6):
            f = field_of(c)
            if f is not None:
                return f
        return None

    def twist(self, d):
        return WeierstrassCurve(d * self.a2, d * d * self.a4, d * d * d * self.a6)

    def change_field(self, f):
        return WeierstrassCurve(f(self.a2), f(self.a4), f(self.a6))

    def __str__(self):
        return f"y^2 = x^3 + ({self.a2})*x^2 + ({self.a4})*x + ({self.a6})"


@dataclass(frozen=True)
class Curve(CubicModel):
    """E(alpha, beta): y^2 = x (x + alpha) (x + beta)."""
    alpha: Any
    beta: Any

    def __post_init__(self):
        if not self.alpha or not self.beta or self.alpha == self.beta:
            raise SingularCurve(f"E({self.alpha}, {self.beta}) is singular")
        fa, fb = field_of(self.alpha), field_of(self.beta)
        if fa is not None and fb is not None and fa != fb:
            from ..errors import MixedFields
            raise MixedFields(f"alpha in {fa}, beta in {fb}")

    @property
    def a2(self):
        return self.alpha + self.beta

    @property
    def a4(self):
        return self.alpha * self.beta

    @property
    def a6(self):
        return 0 * self.alpha

    @property
    def field(self):
        return field_of(self.alpha) or field_of(self.beta)

    def discriminant(self):
        ab = self.alpha * self.beta * (self.alpha - self.beta)
        return 16 * ab * ab

    def two_torsion(self):
        z = 0 * self.alpha
        return [INFINITY, Point(z, z), Point(-self.alpha, z), Point(-self.beta, z)]

    def twist(self, d) -> "Curve":
        return Curve(d * self.alpha, d * self.beta)

    def change_field(self, f) -> "Curve":
        return Curve(f(self.alpha), f(self.beta))

    def weierstrass(self) -> WeierstrassCurve:
        return WeierstrassCurve(self.a2, self.a4, self.a6)

    def j_invariant(self):
        a, b = self.alpha, self.beta
        return 256 * (a * a - a * b + b * b) ** 3 / (a * b * (a - b)) ** 2

    def __str__(self):
        return f"E({self.alpha}, {self.beta})"

    def to_json(self):
        return {"alpha": str(self.alpha), "beta": str(self.beta),
                "D": getattr(self.field, "D", None)}


def make_curve(alpha, beta, normalize: bool = False):
    """E(alpha, beta); with normalize=True also strip a common rational square.

    Returns the curve, or (curve, z) when normalize is set, where the input
    was E(z^2 alpha', z^2 beta').
    """
    E = Curve(alpha, beta)
    if not normalize:
        return E
    z = _common_square_factor(alpha, beta)
    if z == 1:
        return E, 1
    return Curve(alpha / (z * z), beta / (z * z)), z


def _common_square_factor(alpha, beta, limit: int = 10 ** 4) -> int:
    from math import gcd
    nums = []
    for c in (alpha, beta):
        if isinstance(c, QuadElem):
            if c.den != 1:
                return 1
            nums += [c.A, c.B]
        else:
            c = Fraction(c)
            if c.denominator != 1:
                return 1
            nums.append(c.numerator)
    g = 0
    for n in nums:
        g = gcd(g, n)
    z = 1
    p = 2
    while p * p <= g and p <= limit:
        while g % (p * p) == 0:
            g //= p * p
            z *= p
        while g % p == 0:
            g //= p
        p += 1
    return z


def point_add(P, Q, E):
    return E.add(P, Q)


def point_mul(n, P, E):
    return E.mul(n, P)


def order_of_point(P, E, cap: Optional[int] = None) -> Optional[int]:
    """Least n <= cap with [n]P = O, or None.  The default cap is the
    reduction bound when E is over Q or K, else 256."""
    if cap is None:
        cap = 256
        if E.field is None or isinstance(E.field, QuadraticField):
            from .reduction import torsion_bound
            try:
                cap = torsion_bound(E)
            except TorsionLabError:
                pass
    try:
        return E.order(P, cap)
    except NotTorsion:
        return None
