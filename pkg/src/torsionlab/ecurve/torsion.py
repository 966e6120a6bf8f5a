"""Torsion subgroups of E(alpha, beta) over K, over K(sqrt d), and of
general cubic models over K.

The 2-primary part is found by repeated halving starting from the 2-torsion;
the odd part from the K-rational roots of division polynomials.  Every result
is checked against the point-count bound and re-verified on the curve.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from ..errors import ConsistencyFailure, NotInField
from ..qfield import QuadElem, QuadraticField, squarefree_part
from ..tower import TowerElem, TowerTag
from .curve import INFINITY, Curve, CubicModel, Point, WeierstrassCurve, field_sqrt, field_of
from .divpoly import division_poly
from .hensel import k_roots
from .reduction import torsion_bound_data, vp

ODD_PRIMES = (3, 5)
MAX_TWO_EXPONENT = 6


def shape_str(m: int, n: int) -> str:
    if n == 1:
        return "0"
    if m == 1:
        return f"Z/{n}"
    return f"Z/{m} ⊕ Z/{n}"


def shape_label(m: int, n: int) -> str:
    return f"{m}x{n}"


@dataclass(frozen=True)
class TorsionGroup:
    """Z/m + Z/n with m | n; generators are (g_m, g_n), or (g_n,) when m = 1."""
    m: int
    n: int
    generators: tuple = ()

    @property
    def shape(self):
        return (self.m, self.n)

    @property
    def order(self):
        return self.m * self.n

    @property
    def label(self):
        return shape_label(self.m, self.n)

    def __str__(self):
        return shape_str(self.m, self.n)

    def to_json(self):
        return {"m": self.m, "n": self.n, "group": str(self),
                "generators": [P.to_json() for P in self.generators]}


def _sorted_points(points):
    return sorted(points, key=lambda P: P.sort_key())


def halve_point(P: Point, E: Curve):
    """All Q over the coordinate field of E with 2Q = P, sorted by x."""
    if P.is_infinity:
        return [Q for Q in _sorted_points(E.two_torsion())]
    x0 = P.x
    r1 = field_sqrt(x0)
    if r1 is None:
        return []
    r2 = field_sqrt(x0 + E.alpha)
    if r2 is None:
        return []
    r3 = field_sqrt(x0 + E.beta)
    if r3 is None:
        return []
    xs = [x0 + r1 * r2 + r1 * r3 + r2 * r3,
          x0 + r1 * r2 - r1 * r3 - r2 * r3,
          x0 - r1 * r2 + r1 * r3 - r2 * r3,
          x0 - r1 * r2 - r1 * r3 + r2 * r3]
    out = set()
    for x in xs:
        y = field_sqrt(E.rhs(x))
        if y is None:
            raise ConsistencyFailure(f"half x-coordinate {x} of {P} has no y")
        for yy in (y, -y):
            Q = Point(x, yy)
            if E.double(Q) == P:
                out.add(Q)
    if len(out) != 4:
        raise ConsistencyFailure(f"{P} has {len(out)} halves, expected 4")
    return _sorted_points(out)


def two_sylow_points(E: Curve, max_exp: int = MAX_TWO_EXPONENT):
    """Every point of 2-power order over the coordinate field of E."""
    seen = set(E.two_torsion())
    frontier = [P for P in seen if not P.is_infinity]
    limit = 1 << (2 * max_exp)
    while frontier:
        nxt = []
        for P in frontier:
            for Q in halve_point(P, E):
                if Q not in seen:
                    seen.add(Q)
                    nxt.append(Q)
        if len(seen) > limit:
            raise ConsistencyFailure(f"2-primary torsion exceeds 2^{2 * max_exp} points")
        frontier = nxt
    return seen


def closure(points, E):
    """The subgroup generated by a finite set of torsion points."""
    group = {INFINITY}
    frontier = list(points)
    while frontier:
        nxt = []
        for P in frontier:
            if P in group:
                continue
            new = [E.add(P, Q) for Q in group]
            group.add(P)
            nxt.extend(new)
            nxt.append(E.add(P, P))
        frontier = [P for P in nxt if P not in group]
        if len(group) > 4096:
            raise ConsistencyFailure("closure of torsion points is too large")
    return group


def _in_cyclic(P, G, n, E):
    Q = INFINITY
    for _ in range(n):
        if Q == P:
            return True
        Q = E.add(Q, G)
    return False


def p_group_structure(points, E, ell: int):
    """(m, n, g_m, g_n) for a finite ell-group given by all its elements."""
    size = len(points)
    k = vp(size, ell)
    if ell ** k != size:
        raise ConsistencyFailure(f"a {ell}-group of size {size}")
    if size == 1:
        return 1, 1, None, None
    pts = _sorted_points(p for p in points if not p.is_infinity)
    orders = {P: E.order(P, size) for P in pts}
    n = max(orders.values())
    m = size // n
    g_n = next(P for P in pts if orders[P] == n)
    if m == 1:
        return 1, n, None, g_n
    low_n = E.mul(n // ell, g_n)
    for P in pts:
        if orders[P] == m:
            low = E.mul(m // ell, P)
            if not _in_cyclic(low, low_n, ell, E):
                return m, n, P, g_n
    raise ConsistencyFailure("no complement generator found")


def combine_parts(parts, E) -> TorsionGroup:
    """Assemble Z/m + Z/n from the ell-primary parts (m_l, n_l, g_m, g_n)."""
    m = n = 1
    gm = gn = INFINITY
    for ml, nl, g_m, g_n in parts:
        m *= ml
        n *= nl
        if g_n is not None:
            gn = E.add(gn, g_n)
        if g_m is not None:
            gm = E.add(gm, g_m)
    if m > 1:
        gens = (gm, gn)
    elif n > 1:
        gens = (gn,)
    else:
        gens = ()
    G = TorsionGroup(m, n, gens)
    verify_group(G, E)
    return G


def verify_group(G: TorsionGroup, E) -> None:
    for P in G.generators:
        if not E.contains(P):
            raise ConsistencyFailure(f"generator {P} is not on {E}")
    if G.n > 1 and E.order(G.generators[-1], G.n) != G.n:
        raise ConsistencyFailure("g_n has the wrong order")
    if G.m > 1:
        gm, gn = G.generators
        if E.order(gm, G.m) != G.m:
            raise ConsistencyFailure("g_m has the wrong order")
        cyc = set()
        Q = INFINITY
        for _ in range(G.n):
            cyc.add(Q)
            Q = E.add(Q, gn)
        Q = gm
        for _ in range(1, G.m):
            if Q in cyc:
                raise ConsistencyFailure("generators are dependent")
            Q = E.add(Q, gm)


def group_elements(G: TorsionGroup, E):
    if G.n == 1:
        return [INFINITY]
    gn = G.generators[-1]
    cyc = [INFINITY]
    for _ in range(G.n - 1):
        cyc.append(E.add(cyc[-1], gn))
    if G.m == 1:
        return cyc
    gm = G.generators[0]
    out = []
    Q = INFINITY
    for _ in range(G.m):
        out.extend(E.add(Q, P) for P in cyc)
        Q = E.add(Q, gm)
    return out


def ell_torsion_points(E, ell: int):
    """Points of exact order ell (odd prime) with coordinates in the base field."""
    K = E.field
    if isinstance(K, TowerTag):
        raise NotInField("odd torsion over a tower goes through the twist decomposition")
    f = division_poly(E, ell)
    pts = []
    for x in k_roots(f, K):
        y = field_sqrt(E.rhs(x))
        if y is None:
            continue
        for yy in (y, -y):
            P = Point(x, yy)
            if not E.mul(ell, P).is_infinity:
                raise ConsistencyFailure(f"root of psi_{ell} gives {P} of wrong order")
            pts.append(P)
    return _sorted_points(set(pts))


def odd_torsion(E, ell: int) -> TorsionGroup:
    """E(K)[ell] for ell in {3, 5}."""
    pts = ell_torsion_points(E, ell)
    m, n, gm, gn = p_group_structure(set(pts) | {INFINITY}, E, ell)
    gens = tuple(g for g in (gm, gn) if g is not None)
    return TorsionGroup(m, n, gens)


def _two_part(E: Curve, max_exp=MAX_TWO_EXPONENT):
    pts = two_sylow_points(E, max_exp)
    return pts, p_group_structure(pts, E, 2)


def two_primary_torsion(E: Curve) -> TorsionGroup:
    _, (m, n, gm, gn) = _two_part(E)
    return TorsionGroup(m, n, tuple(g for g in (gm, gn) if g is not None))


def torsion_subgroup(E) -> TorsionGroup:
    """E(K)_tors for E over K (a quadratic field) or Q."""
    # rational-valued coefficients compare equal across fields, so the field is part of the key
    return _torsion_subgroup(E, E.field)


@lru_cache(maxsize=8192)
def _torsion_subgroup(E, field) -> TorsionGroup:
    if isinstance(E.field, TowerTag):
        raise NotInField("use torsion_subgroup_ext for curves over K(sqrt d)")
    if not isinstance(E, Curve):
        return _generic_torsion(E)
    data = torsion_bound_data(E)
    pts, two = _two_part(E)
    if vp(data.bound, 2) < vp(len(pts), 2):
        raise ConsistencyFailure(f"{len(pts)} points of 2-power order exceed bound {data.bound}")
    parts = [two]
    for ell in ODD_PRIMES:
        if vp(data.bound, ell) == 0:
            continue
        odd = ell_torsion_points(E, ell)
        parts.append(p_group_structure(set(odd) | {INFINITY}, E, ell))
    G = combine_parts(parts, E)
    if data.bound % G.order:
        raise ConsistencyFailure(f"#E(K)_tors = {G.order} does not divide bound {data.bound}")
    return G


# general cubic models --------------------------------------------------------

def _roots_in_base(f, K):
    return k_roots(f, K)


def _generic_torsion(W: WeierstrassCurve) -> TorsionGroup:
    K = W.field
    data = torsion_bound_data(W)
    roots = _roots_in_base(W.rhs_poly(), K)
    parts = []
    if len(roots) == 3:
        e1, e2, e3 = roots
        C = Curve(e1 - e2, e1 - e3)
        G = torsion_subgroup(C)
        shift = lambda P: P if P.is_infinity else Point(P.x + e1, P.y)
        gens = tuple(shift(P) for P in G.generators)
        G = TorsionGroup(G.m, G.n, gens)
        verify_group(G, W)
        return G
    if len(roots) == 1:
        pts = _two_sylow_via_splitting_field(W, roots[0])
        parts.append(p_group_structure(pts, W, 2))
    for ell in ODD_PRIMES:
        if vp(data.bound, ell) == 0:
            continue
        odd = ell_torsion_points(W, ell)
        parts.append(p_group_structure(set(odd) | {INFINITY}, W, ell))
    G = combine_parts(parts, W)
    if data.bound % G.order:
        raise ConsistencyFailure(f"#E(K)_tors = {G.order} does not divide bound {data.bound}")
    return G


def _two_sylow_via_splitting_field(W, e):
    """2-primary K-points of W when the 2-division field is quadratic over K."""
    K = W.field
    # rhs = (x - e)(x^2 + p x + q)
    p = W.a2 + e
    q = W.a4 + e * p
    delta = p * p - 4 * q
    if K is None:
        dq = Fraction(delta)
        L = QuadraticField(squarefree_part(dq.numerator * dq.denominator))
        up = lambda c: L(c)
        down = lambda c: c.a if c.is_rational() else None
    else:
        L = TowerTag(K, delta)
        up = lambda c: L(c)
        down = lambda c: c.u if c.in_base() else None
    sd = field_sqrt(up(delta))
    e2 = (up(-p) + sd) / 2
    e3 = (up(-p) - sd) / 2
    C = Curve(up(e) - e2, up(e) - e3)
    out = set()
    for P in two_sylow_points(C):
        if P.is_infinity:
            out.add(P)
            continue
        x = P.x + up(e)
        xd, yd = down(x), down(P.y)
        if xd is not None and yd is not None:
            out.add(Point(xd, yd))
    return out


# growth in K(sqrt d) -------------------------------------------------------------

def twist_point_to_L(P: Point, d, L: TowerTag) -> Point:
    """Image of P in E^d(K) under E^d -> E over L: (x, y) -> (x/d, y sqrt(d) / d^2)."""
    if P.is_infinity:
        return P
    s = L.s
    return Point(L(P.x / d), s * (P.y / (d * d)))


def point_to_L(P: Point, L: TowerTag) -> Point:
    if P.is_infinity:
        return P
    return Point(L(P.x), L(P.y))


@dataclass(frozen=True)
class ExtensionData:
    base: TorsionGroup
    twist: TorsionGroup
    ext: TorsionGroup
    tower: TowerTag
    curve_L: Curve
    twist_curve: Curve


def extension_data(E: Curve, d) -> ExtensionData:
    return _extension_data(E, d, E.field, field_of(d))


@lru_cache(maxsize=8192)
def _extension_data(E: Curve, d, field, d_field) -> ExtensionData:
    K = E.field
    L = TowerTag(K, d)
    d = L.d
    Ed = E.twist(d)
    GK = torsion_subgroup(E)
    Gd = torsion_subgroup(Ed)
    EL = E.change_field(L)
    pts = two_sylow_points(EL)
    parts = [p_group_structure(pts, EL, 2)]
    for ell in ODD_PRIMES:
        gens = []
        if GK.order % ell == 0 or Gd.order % ell == 0:
            gens += [point_to_L(P, L) for P in ell_torsion_points(E, ell)]
            gens += [twist_point_to_L(P, d, L) for P in ell_torsion_points(Ed, ell)]
        if gens:
            parts.append(p_group_structure(closure(gens, EL), EL, ell))
    GL = combine_parts(parts, EL)
    verify_group(GL, EL)
    if (GK.order * Gd.order) % GL.order:
        raise ConsistencyFailure(f"#E(L) = {GL.order} does not divide {GK.order} * {Gd.order}")
    return ExtensionData(GK, Gd, GL, L, EL, Ed)


def torsion_subgroup_ext(E: Curve, d) -> TorsionGroup:
    """E(K(sqrt d))_tors."""
    return extension_data(E, d).ext
