"""Jacobians of genus 2 curves y^2 = f(x), deg f = 5, over small finite fields.

Divisor classes are kept in Mumford form (u, v): u monic, deg v < deg u <= 2,
u | f - v^2.  Addition is Cantor's algorithm with h = 0.  Group orders come
from two independent routes: full enumeration and the zeta function.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .. import poly
from ..errors import InvalidDivisor
from ..ffield import GF, FiniteField
from ..ecurve.reduction import prime_factors, vp

# y^2 = t (t^2 + 1)(t^2 + 2t - 1), the working model of C''
F_CPP = (0, -1, 2, 0, 2, 1)


def _trim(f):
    return tuple(poly.trim(f))


@dataclass(frozen=True)
class MumfordDivisor:
    u: tuple
    v: tuple

    def degree(self) -> int:
        return len(self.u) - 1

    def is_zero(self) -> bool:
        return len(self.u) == 1


class Genus2Curve:
    def __init__(self, f, F: FiniteField):
        self.F = F
        self.f = _trim(F(c) for c in f)
        if len(self.f) != 6:
            raise ValueError("f must have degree 5")
        if poly.degree(poly.gcd(list(self.f), poly.derivative(list(self.f)))) > 0:
            raise ValueError(f"f is not squarefree over {F}")
        self.zero = MumfordDivisor((F.one,), ())

    def divisor(self, u, v) -> MumfordDivisor:
        F = self.F
        u = _trim(F(c) for c in u)
        v = _trim(F(c) for c in v)
        if not u or u[-1] != 1:
            raise InvalidDivisor("u must be monic")
        if len(u) > 3:
            raise InvalidDivisor("deg u must be at most 2")
        if len(v) >= len(u):
            raise InvalidDivisor("deg v must be less than deg u")
        if poly.trim(poly.rem(poly.sub(list(self.f), poly.mul(list(v), list(v))), list(u))):
            raise InvalidDivisor("u does not divide f - v^2")
        return MumfordDivisor(u, v)

    def point(self, x, y) -> MumfordDivisor:
        """The class of P - infinity."""
        F = self.F
        return self.divisor((-F(x), F.one), (F(y),))

    def neg(self, D: MumfordDivisor) -> MumfordDivisor:
        return MumfordDivisor(D.u, tuple(-c for c in D.v))

    def add(self, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
        f = list(self.f)
        u1, v1, u2, v2 = list(D1.u), list(D1.v), list(D2.u), list(D2.v)
        d0, e1, e2 = poly.xgcd(u1, u2)
        d, c1, s3 = poly.xgcd(d0, poly.add(v1, v2))
        s1, s2 = poly.mul(c1, e1), poly.mul(c1, e2)
        dd = poly.mul(d, d)
        u = poly.divmod_poly(poly.mul(u1, u2), dd)[0]
        num = poly.add(poly.add(poly.mul(poly.mul(s1, u1), v2), poly.mul(poly.mul(s2, u2), v1)),
                       poly.mul(s3, poly.add(poly.mul(v1, v2), f)))
        v = poly.rem(poly.divmod_poly(num, d)[0], u)
        while poly.degree(u) > 2:
            u = poly.divmod_poly(poly.sub(f, poly.mul(v, v)), u)[0]
            v = poly.rem(poly.neg(v), u)
        u = poly.monic(u)
        v = poly.rem(v, u) if poly.degree(u) > 0 else []
        # polynomial helpers may hand back plain int zeros; keep every coefficient in F
        F = self.F
        return MumfordDivisor(_trim(F(c) for c in u), _trim(F(c) for c in v))

    def mul(self, n: int, D: MumfordDivisor) -> MumfordDivisor:
        if n < 0:
            return self.mul(-n, self.neg(D))
        R, B = self.zero, D
        while n:
            if n & 1:
                R = self.add(R, B)
            B = self.add(B, B)
            n >>= 1
        return R

    def order(self, D: MumfordDivisor, bound: int) -> int:
        """Order of D, given a multiple `bound` of it."""
        n = bound
        for ell in prime_factors(bound):
            while n % ell == 0 and self.mul(n // ell, D).is_zero():
                n //= ell
        return n

    def elements(self):
        """Every reduced divisor class, by brute force over (u, v)."""
        F = self.F
        f = list(self.f)
        els = F.elements()
        one = F.one
        out = [self.zero]
        for a in els:
            fa = poly.evaluate(f, a)
            for b in els:
                if b * b == fa:
                    out.append(MumfordDivisor((-a, one), _trim((b,))))
        for u1 in els:
            for u0 in els:
                u = [u0, u1, one]
                r = poly.rem(f, u) + [F.zero, F.zero]
                r0, r1 = r[0], r[1]
                for v1 in els:
                    w = v1 * v1
                    for v0 in els:
                        # v^2 mod u = (2 v0 v1 - v1^2 u1) x + (v0^2 - v1^2 u0)
                        if v0 * v0 - w * u0 == r0 and 2 * v0 * v1 - w * u1 == r1:
                            out.append(MumfordDivisor((u0, u1, one), _trim((v0, v1))))
        return out


def count_points(f, F: FiniteField) -> int:
    """Points on the smooth model of y^2 = f(x) over F; one point at infinity for odd degree."""
    n = 1
    for x in F.elements():
        val = poly.evaluate(list(f), x)
        n += 1 if not val else (2 if val.is_square() else 0)
    return n


@dataclass(frozen=True)
class ZetaData:
    p: int
    a1: int
    a2: int

    def L(self, T: int) -> int:
        p = self.p
        return 1 + self.a1 * T + self.a2 * T * T + p * self.a1 * T ** 3 + p * p * T ** 4

    def order(self, degree: int = 1) -> int:
        """#J(F_{p^degree}) for degree 1 or 2."""
        if degree == 1:
            return self.L(1)
        if degree == 2:
            return self.L(1) * self.L(-1)
        raise ValueError("degree must be 1 or 2")


def zeta_data(f, p: int) -> ZetaData:
    F1, F2 = GF(p), GF(p, 2)
    N1 = count_points([F1(c) for c in f], F1)
    N2 = count_points([F2(c) for c in f], F2)
    a1 = N1 - p - 1
    a2 = (N2 - p * p - 1 + a1 * a1) // 2
    return ZetaData(p, a1, a2)


def zeta_order(f, q: int) -> int:
    p = prime_factors(q)[0]
    return zeta_data(f, p).order(1 if q == p else 2)


def field_of_size(q: int) -> FiniteField:
    p = prime_factors(q)[0]
    return GF(p) if q == p else GF(p, 2)


def structure_from_orders(orders) -> list:
    """Invariant factors d1 | d2 | ... of a finite abelian group from its element orders."""
    N = len(orders)
    factors = {}
    for ell in prime_factors(N):
        vals = [vp(o, ell) for o in orders]
        counts = [sum(1 for e in vals if e <= k) for k in range(max(vals) + 1)]
        # number of cyclic factors of order >= ell^k is log_ell(counts[k] / counts[k-1])
        ranks = []
        for k in range(1, len(counts)):
            r, m = 0, counts[k] // counts[k - 1]
            while m > 1:
                m //= ell
                r += 1
            ranks.append(r)
        exps = []
        for k in range(len(ranks)):
            nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
            exps += [k + 1] * (ranks[k] - nxt)
        factors[ell] = sorted(exps, reverse=True)
    width = max((len(v) for v in factors.values()), default=0)
    inv = []
    for i in range(width):
        d = 1
        for ell, exps in factors.items():
            if i < len(exps):
                d *= ell ** exps[i]
        inv.append(d)
    return sorted(inv)


@dataclass
class JacobianCount:
    q: int
    order: int
    structure: list
    zeta_order: int


def enumerate_jacobian(f, q: int) -> JacobianCount:
    F = field_of_size(q)
    J = Genus2Curve(f, F)
    els = J.elements()
    N = len(els)
    zo = zeta_order(f, q)
    orders = [J.order(D, N) for D in els]
    return JacobianCount(q, N, structure_from_orders(orders), zo)


def two_rank_over(f, D: int) -> int:
    """dim J(K)[2] for K = Q(sqrt D): one less than the number of irreducible factors of f."""
    import sympy
    x = sympy.Symbol("x")
    expr = sum(int(c) * x ** i for i, c in enumerate(f))
    _, facs = sympy.factor_list(expr, extension=sympy.sqrt(D))
    return sum(m for _, m in facs) - 1


def torsion_gcd_bound(data, two_rank: int | None = None) -> int:
    """Bound for #J(K)_tors from reductions.

    data: (residue characteristic, group structure) pairs.  The ell-part is bounded
    by the least ell-adic valuation over characteristics other than ell.  With the
    2-rank r known, the 2-part is also at most 2^(r e) for e the least 2-exponent."""
    bound = 1
    ells = set()
    for _, st in data:
        n = 1
        for c in st:
            n *= c
        ells.update(prime_factors(n))
    for ell in sorted(ells):
        vals, exps = [], []
        for p, st in data:
            if p == ell:
                continue
            n = 1
            for c in st:
                n *= c
            vals.append(vp(n, ell))
            exps.append(max((vp(c, ell) for c in st), default=0))
        if not vals:
            continue
        e = min(vals)
        if ell == 2 and two_rank is not None:
            e = min(e, two_rank * min(exps))
        bound *= ell ** e
    return bound


def order_gcd(orders) -> int:
    g = 0
    for n in orders:
        g = gcd(g, n)
    return g
