"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients may be ints, Fractions or any of the package's field elements;
only + - * / and comparison with 0 are used.
"""
from __future__ import annotations

from fractions import Fraction


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f) -> int:
    f = trim(f)
    return len(f) - 1 if f else -1


def add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def neg(f):
    return [-c for c in f]


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    return trim([c * x for x in f])


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def power(f, e: int):
    result, base = [1], f
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def divmod_poly(f, g):
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = _inv(g[-1])
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g) and r:
        c = r[-1] * inv
        shift = len(r) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = r[shift + i] - c * b
        r.pop()
        r = trim(r)
    return trim(q), r


def rem(f, g):
    return divmod_poly(f, g)[1]


def monic(f):
    f = trim(f)
    if not f:
        return f
    inv = _inv(f[-1])
    return [c * inv for c in f]


def gcd(f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, rem(f, g)
    return monic(f)


def xgcd(f, g):
    """(d, s, t) with d = s f + t g monic."""
    r0, r1 = trim(f), trim(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = _inv(r0[-1])
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(f):
    return trim([i * f[i] for i in range(1, len(f))])


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def is_squarefree(f) -> bool:
    return degree(gcd(f, derivative(f))) == 0


def squarefree_part(f):
    g = gcd(f, derivative(f))
    return monic(divmod_poly(f, g)[0]) if degree(g) > 0 else monic(f)


def compose_linear(f, a, b):
    """f(a x + b)."""
    out = []
    lin = [b, a]
    for c in reversed(f):
        out = add(mul(out, lin), [c])
    return out


def to_str(f, var="x") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = str(c)
        if mono and cs == "1":
            cs = ""
        elif mono and cs == "-1":
            cs = "-"
        elif mono and (" " in cs):
            cs = f"({cs})"
        terms.append(f"{cs}*{mono}" if cs not in ("", "-") and mono else f"{cs}{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
