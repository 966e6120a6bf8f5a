"""Square-class criteria for points of order 3, 4 and 8 on E(alpha, beta),
Galois eigenvalue sets, and Galois stability of subgroups over K(sqrt d).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import NonIntegralInput, NotOnCurve
from ..qfield import QuadElem
from .curve import INFINITY, Curve, Point, field_sqrt
from .hensel import k_roots


def _integral(x) -> bool:
    if isinstance(x, QuadElem):
        return x.is_integral()
    return Fraction(x).denominator == 1


def model_substitutions(E: Curve):
    """The three (alpha, beta) pairs obtained by moving each 2-torsion point to 0."""
    a, b = E.alpha, E.beta
    return [(a, b), (-a, b - a), (-b, a - b)]


def _order4(E):
    for i, (a, b) in enumerate(model_substitutions(E)):
        ra, rb = field_sqrt(a), field_sqrt(b)
        if ra is not None and rb is not None:
            return True, {"model": i, "alpha": a, "beta": b, "sqrt_alpha": ra, "sqrt_beta": rb}
    return False, None


def _order8(E):
    # alpha = z^2 u^4, beta = z^2 v^4, u^2 + v^2 = w^2.  Scaling v to 1 this is:
    # beta = z^2 and alpha / beta = t^2 with t = u^2 and t + 1 = w^2 both squares.
    for i, (a, b) in enumerate(model_substitutions(E)):
        z = field_sqrt(b)
        if z is None:
            continue
        r = field_sqrt(a / b)
        if r is None:
            continue
        for t in (r, -r):
            u, w = field_sqrt(t), field_sqrt(t + 1)
            if u is not None and w is not None:
                return True, {"model": i, "alpha": a, "beta": b, "z": z, "u": u, "v": 1, "w": w}
    return False, None


def _order3(E):
    # alpha = a^3 (a + 2b) z^2, beta = b^3 (b + 2a) z^2; with b = 1 and t = a
    # this is t^4 + 2t^3 - 2qt - q = 0 for q = alpha / beta and z^2 = beta / (1 + 2t).
    a, b = E.alpha, E.beta
    q = a / b
    K = E.field
    for t in k_roots([-q, -2 * q, 0, 2, 1], K):
        den = 1 + 2 * t
        if den == 0:
            continue
        z = field_sqrt(b / den)
        if z is None:
            continue
        return True, {"a": t, "b": 1, "z": z}
    return False, None


def order_criteria(E: Curve, n: int):
    """(holds, witness) for 'E(K) has a point of order n', n in {3, 4, 8}.

    The witness reproduces alpha and beta exactly (see check_witness)."""
    if not (_integral(E.alpha) and _integral(E.beta)):
        raise NonIntegralInput("alpha and beta must be integral; rescale by a square first")
    if n == 4:
        return _order4(E)
    if n == 8:
        return _order8(E)
    if n == 3:
        return _order3(E)
    raise ValueError("n must be 3, 4 or 8")


def check_witness(E: Curve, n: int, wit) -> bool:
    if n == 3:
        a, b, z = wit["a"], wit["b"], wit["z"]
        return (E.alpha == a ** 3 * (a + 2 * b) * z * z and E.beta == b ** 3 * (b + 2 * a) * z * z)
    pair = model_substitutions(E)[wit["model"]]
    if n == 4:
        return wit["sqrt_alpha"] ** 2 == pair[0] and wit["sqrt_beta"] ** 2 == pair[1]
    z, u, v, w = wit["z"], wit["u"], wit["v"], wit["w"]
    return (pair[0] == z * z * u ** 4 and pair[1] == z * z * v ** 4 and u * u + v * v == w * w)


def galois_square_units(n: int):
    """{a mod n : gcd(a, n) = 1, a^2 = 1 mod n}."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return {a for a in range(1, n) if gcd(a, n) == 1 and a * a % n == 1}


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    order: int
    cyclic: bool
    elements: tuple = ()

    def __bool__(self):
        return self.stable


def _sigma(x):
    if hasattr(x, "sigma"):
        return x.sigma()
    if hasattr(x, "conj"):
        return x.conj()
    return x


def sigma_point(P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(_sigma(P.x), _sigma(P.y))


def verify_stable_subgroup(E, d, C, cap: int = 4096) -> StabilityReport:
    """Is <C> (points of E over K(sqrt d)) closed under the conjugation of L/K?"""
    from ..qfield import QuadraticField, squarefree_part
    from ..tower import TowerTag
    K = E.field
    if K is None:
        dq = Fraction(d)
        L = QuadraticField(squarefree_part(dq.numerator * dq.denominator))
    else:
        L = TowerTag(K, d)
    EL = E.change_field(L)

    def up(c):
        return c if getattr(c, "field", getattr(c, "tag", None)) == L else L(c)

    pts = []
    for P in C:
        if not P.is_infinity:
            P = Point(up(P.x), up(P.y))
            if not EL.contains(P):
                raise NotOnCurve(f"{P} is not on {E} over {L}")
        pts.append(P)
    group = {INFINITY}
    frontier = [INFINITY]
    while frontier:
        Q = frontier.pop()
        for P in pts:
            R = EL.add(Q, P)
            if R not in group:
                group.add(R)
                frontier.append(R)
                if len(group) > cap:
                    raise ValueError("generated subgroup is larger than the cap")
    stable = all(sigma_point(P) in group for P in group)
    order = len(group)
    cyclic = any(EL.order(P, order) == order for P in group)
    elems = tuple(sorted(group, key=lambda P: P.sort_key()))
    return StabilityReport(stable, order, cyclic, elems)
