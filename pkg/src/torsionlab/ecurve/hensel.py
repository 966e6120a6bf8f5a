"""Roots in K (or Q) of polynomials over K by p-adic lifting at a split prime.

The polynomial is first made monic with integral coefficients (x = y / c for
the leading coefficient c), so every root y is an algebraic integer of K.
Roots mod p are Newton-lifted to p^k with p^k beyond the square of a root
height bound, then recovered by lattice reduction and checked exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional

from .. import poly
from ..errors import NoGoodPrime, PrecisionExhausted
from ..qfield import QuadElem, QuadraticField, lift_sqrt, reconstruct_from_residue, splitting_type
from .reduction import primes_from

MAX_DIGITS = 4096


def _den(c) -> int:
    if isinstance(c, QuadElem):
        return c.den
    return Fraction(c).denominator


def integral_monic(f, K: Optional[QuadraticField]):
    """(g, c) with g monic integral and f(x) = 0 iff g(c x) = 0."""
    f = poly.trim(f)
    from math import lcm
    m = 1
    for c in f:
        m = lcm(m, _den(c))
    f = [c * m for c in f]
    if K is not None:
        f = [K(c) if not isinstance(c, QuadElem) else c for c in f]
    n = len(f) - 1
    lc = f[-1]
    g = [f[i] * lc ** (n - 1 - i) for i in range(n)] + [1]
    if K is not None:
        g = [K(c) if not isinstance(c, QuadElem) else c for c in g]
        # denominators of 2 may survive when D = 1 mod 4; they are integral
    else:
        g = [Fraction(c) for c in g]
    return g, lc


def _abs_upper(c, K) -> int:
    """An integer >= |c| under any complex embedding."""
    if K is None:
        return abs(Fraction(c).numerator) // Fraction(c).denominator + 1
    n = c.norm()
    return isqrt(n.numerator // n.denominator + 1) + 1


def _iroot_up(n: int, k: int) -> int:
    """Smallest integer r >= 1 with r^k >= n."""
    if n <= 1:
        return 1
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo


def root_bound(g, K) -> int:
    """Fujiwara bound on |root| of a monic polynomial."""
    n = len(g) - 1
    best = 0
    for i in range(1, n + 1):
        c = g[n - i]
        if c == 0:
            continue
        best = max(best, _iroot_up(_abs_upper(c, K), i))
    return 2 * best + 1


def _poly_mod(g, P, p, rk, pk):
    out = []
    for c in g:
        if isinstance(c, QuadElem):
            out.append((c.A + c.B * rk) * pow(c.den, -1, pk) % pk)
        else:
            c = Fraction(c)
            out.append(c.numerator * pow(c.denominator, -1, pk) % pk)
    return out


def _eval_mod(f, x, m):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % m
    return acc


def _squarefree_mod_p(fp, p) -> bool:
    from ..ffield import GF
    F = GF(p)
    f = poly.trim([F(c) for c in fp])
    df = poly.derivative(f)
    if not df:
        return False
    return poly.degree(poly.gcd(f, df)) == 0


def choose_prime(g, K, avoid=(), start=3, limit=20000):
    for p in primes_from(start):
        if p > limit:
            raise NoGoodPrime("no suitable prime for lifting")
        if p in avoid:
            continue
        if K is not None:
            if K.disc % p == 0:
                continue
            P = splitting_type(p, K)
            if P.kind != "split":
                continue
            r = P.root
        else:
            P, r = p, 0
        if any(_den(c) % p == 0 for c in g):
            continue
        gp = _poly_mod(g, P, p, r, p)
        if _squarefree_mod_p(gp, p):
            return p, P


def k_roots(f, K: Optional[QuadraticField], avoid=()):
    """All roots of f lying in K (K = None for Q), sorted, without multiplicity."""
    f = poly.trim(f)
    if len(f) <= 1:
        return []
    # zero roots and repeated factors are removed first
    zero = False
    while f[0] == 0:
        f = f[1:]
        zero = True
    roots = [0 if K is None else K.zero] if zero else []
    if len(f) > 1:
        f = poly.squarefree_part(f)
        g, lc = integral_monic(f, K)
        for y in _monic_roots(g, K, avoid):
            roots.append(y / lc if K is not None else Fraction(y) / Fraction(lc))
    from .curve import elem_key
    return sorted(roots, key=elem_key)


def _monic_roots(g, K, avoid=()):
    n = len(g) - 1
    if n == 1:
        return [-g[0]]
    p, P = choose_prime(g, K, avoid)
    H = root_bound(g, K)
    wabs = 1 if K is None else isqrt(abs(K.D)) + 2
    target = (4 * H * (1 + wabs)) ** 2
    k = 1
    while p ** k <= target:
        k += 1
    if len(str(p ** k)) > MAX_DIGITS:
        raise PrecisionExhausted(f"root height needs p^k with {len(str(p ** k))} digits")
    pk = p ** k
    rk = lift_sqrt(K.D, P.root, p, k) if K is not None else 0
    gk = _poly_mod(g, P, p, rk, pk)
    dg = [(i * gk[i]) % pk for i in range(1, len(gk))]
    found = []
    for x0 in range(p):
        if _eval_mod(gk, x0, p):
            continue
        x, mod = x0, p
        while mod < pk:
            mod = min(mod * mod, pk)
            x = (x - _eval_mod(gk, x, mod) * pow(_eval_mod(dg, x, mod), -1, mod)) % mod
        if K is None:
            cand = x if x <= pk // 2 else x - pk
            cand = Fraction(cand)
        else:
            cand = reconstruct_from_residue(x, pk, K, H, prime=P)
            if cand is None:
                continue
        if poly.evaluate(g, cand) == 0:
            found.append(cand)
    return found
