"""Reduction of curves modulo primes of K, point counts and the torsion bound."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import BadReduction, NoGoodPrime
from ..ffield import GF
from ..qfield import PrimeIdealRep, QuadElem, splitting_type


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_from(start: int = 3):
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def residue_int(x, P) -> int:
    """Image of x in F_p for a degree-one prime (or a rational prime when K = Q)."""
    if isinstance(P, int):
        x = Fraction(x)
        if x.denominator % P == 0:
            raise BadReduction(f"{x} is not integral at {P}")
        return x.numerator * pow(x.denominator, -1, P) % P
    if not isinstance(x, QuadElem):
        x = P.field(x)
    p = P.p
    if x.den % p == 0:
        raise BadReduction(f"{x} is not integral at {p}")
    inv = pow(x.den, -1, p)
    if P.kind == "split":
        return (x.A + x.B * P.root) * inv % p
    if P.kind == "ramified":
        return x.A * inv % p
    raise BadReduction("inert prime has residue degree 2")


def residue_elem(x, P):
    """Image of x in the residue field as an FFElem."""
    if isinstance(P, int) or P.kind != "inert":
        p = P if isinstance(P, int) else P.p
        return GF(p)(residue_int(x, P))
    if not isinstance(x, QuadElem):
        x = P.field(x)
    p = P.p
    if x.den % p == 0:
        raise BadReduction(f"{x} is not integral at {p}")
    inv = pow(x.den, -1, p)
    return GF(p, 2, P.field.D % p)((x.A * inv, x.B * inv))


def residue_char(P) -> int:
    return P if isinstance(P, int) else P.p


def residue_size(P) -> int:
    return P if isinstance(P, int) else P.norm


def reduce_coeffs(E, P):
    """(a2, a4, a6) mod P as residue field elements; BadReduction if not good."""
    try:
        red = [residue_elem(c, P) for c in (E.a2, E.a4, E.a6)]
    except BadReduction:
        raise
    a2, a4, a6 = red
    disc = a2 * a2 * a4 * a4 - 4 * a4 ** 3 - 4 * a2 ** 3 * a6 - 27 * a6 * a6 + 18 * a2 * a4 * a6
    if not disc:
        raise BadReduction(f"bad reduction at {residue_char(P)}")
    return red


@dataclass(frozen=True)
class FiniteCurve:
    """A curve reduced at a prime of good reduction."""
    curve: object
    prime: object

    @property
    def field(self):
        return self.curve.a2.field if hasattr(self.curve.a2, "field") else None


def reduce_curve(E, P):
    """E mod P, or None at a prime of bad reduction (BadReduction if not integral)."""
    from .curve import Curve, WeierstrassCurve
    if isinstance(E, Curve):
        a, b = residue_elem(E.alpha, P), residue_elem(E.beta, P)
        if not a or not b or a == b:
            return None
        return FiniteCurve(Curve(a, b), P)
    try:
        a2, a4, a6 = reduce_coeffs(E, P)
    except BadReduction:
        [residue_elem(c, P) for c in (E.a2, E.a4, E.a6)]
        return None
    return FiniteCurve(WeierstrassCurve(a2, a4, a6), P)


def count_points(FC: FiniteCurve) -> int:
    """#E(F_q) including the point at infinity, by a quadratic-character sum."""
    C = FC.curve
    return _count(C.a2, C.a4, C.a6)


def count_points_at(E, P) -> int:
    """#E(residue field at P), including the point at infinity."""
    return _count(*reduce_coeffs(E, P))


def count_points_naive(FC: FiniteCurve) -> int:
    """Enumerate all (x, y) pairs; used as an independent check."""
    C = FC.curve
    F = C.a2.field
    elems = F.elements()
    return 1 + sum(1 for x in elems for y in elems if y * y == C.rhs(x))


def _count(a2, a4, a6) -> int:
    F = a2.field
    if F.degree == 1:
        p = F.p
        b2, b4, b6 = a2.c0, a4.c0, a6.c0
        sq = [False] * p
        for i in range(1, p):
            sq[i * i % p] = True
        n = 1
        for x in range(p):
            v = ((x + b2) * x + b4) * x % p
            v = (v + b6) % p
            n += 1 if v == 0 else (2 if sq[v] else 0)
        return n
    n = 1
    for x in F.elements():
        v = ((x + a2) * x + a4) * x + a6
        n += 1 if not v else (2 if v.is_square() else 0)
    return n


def good_primes(E, count: int, split_only: bool = True, start: int = 3, limit: int = 5000):
    """First `count` odd primes of good reduction (split in K unless split_only is False)."""
    K = E.field
    out = []
    for p in primes_from(start):
        if p > limit:
            raise NoGoodPrime(f"only {len(out)} good primes below {limit}")
        if K is None:
            P = p
        else:
            if K.disc % p == 0:
                continue
            P = splitting_type(p, K)
            if split_only and P.kind != "split":
                continue
        try:
            reduce_coeffs(E, P)
        except BadReduction:
            continue
        out.append(P)
        if len(out) == count:
            return out


def vp(n: int, p: int) -> int:
    if n == 0:
        return 10 ** 9
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def prime_factors(n: int):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass
class BoundData:
    bound: int
    exponents: dict
    counts: list = field(default_factory=list)   # (p, residue size, count)


def torsion_bound_data(E, nprimes: int = 6) -> BoundData:
    primes = good_primes(E, nprimes)
    counts = [(residue_char(P), residue_size(P), count_points_at(E, P)) for P in primes]
    ells = set()
    for _, _, n in counts:
        ells.update(prime_factors(n))
    exps = {}
    for ell in sorted(ells):
        vals = [vp(n, ell) for p, _, n in counts if p != ell]
        if len(vals) >= 2:
            e = min(vals)
            if e:
                exps[ell] = e
    bound = 1
    for ell, e in exps.items():
        bound *= ell ** e
    return BoundData(bound, exps, counts)


def torsion_bound(E) -> int:
    """A multiple of #E(K)_tors from point counts at split primes of good reduction."""
    return torsion_bound_data(E).bound
