"""Exact arithmetic in imaginary (and real) quadratic fields Q(sqrt D).

Elements are stored as (A + B*sqrt(D)) / den with integers A, B, den and
gcd(A, B, den) == 1, den > 0.  The public coordinates `a`, `b` are the
rationals A/den and B/den with respect to the basis 1, w where w = sqrt(D).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

from .errors import (BadReduction, DivisionByZero, MixedFields, NotInField,
                     ParseError, UnsupportedField)

# imaginary quadratic fields of class number one
CLASS_NUMBER_ONE = (-1, -2, -3, -7, -11, -19, -43, -67, -163)
# the ones whose full-2-torsion classification is used by twistlab
SUPPORTED_S = (-2, -7, -11, -19, -43, -67, -163)


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def squarefree_part(n: int) -> int:
    """Largest square factor removed, sign kept: -20 -> -5, 12 -> 3."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    return sign * out * n


def rational_sqrt(q) -> Optional[Fraction]:
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """Smallest r in [0, p) with r^2 = a mod p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def lift_sqrt(D: int, r: int, p: int, k: int) -> int:
    """Newton lift of a simple root r of X^2 - D from mod p to mod p^k."""
    if (2 * r) % p == 0:
        raise BadReduction(f"sqrt({D}) mod {p} is not a simple root")
    mod = p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        r = (r - (r * r - D) * pow(2 * r, -1, mod)) % mod
    return r % (p ** k)


class QuadraticField:
    """Q(sqrt D) for a squarefree integer D != 0, 1."""

    def __init__(self, D: int):
        if not isinstance(D, int) or isinstance(D, bool):
            raise UnsupportedField(f"D must be an integer, got {D!r}")
        if D in (0, 1) or not is_squarefree(D):
            raise UnsupportedField(f"D = {D} is not a squarefree integer other than 0, 1")
        self.D = D

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.D == self.D

    def __hash__(self):
        return hash(("QuadraticField", self.D))

    def __repr__(self):
        return f"{type(self).__name__}({self.D})"

    def __str__(self):
        return f"Q(sqrt({self.D}))"

    @property
    def disc(self) -> int:
        return self.D if self.D % 4 == 1 else 4 * self.D

    @property
    def in_S(self) -> bool:
        return self.D in SUPPORTED_S

    def __call__(self, a=0, b=0) -> "QuadElem":
        if isinstance(a, str):
            return parse_elem(a, self)
        if isinstance(a, QuadElem):
            if a.field != self:
                raise MixedFields(f"{a} lives in {a.field}, not {self}")
            return a + QuadElem.from_rationals(0, b, self) if b else a
        return QuadElem.from_rationals(a, b, self)

    @property
    def zero(self):
        return QuadElem(0, 0, 1, self)

    @property
    def one(self):
        return QuadElem(1, 0, 1, self)

    @property
    def w(self):
        """sqrt(D)."""
        return QuadElem(0, 1, 1, self)

    @property
    def omega(self):
        """Generator of the ring of integers over Z."""
        if self.D % 4 == 1:
            return QuadElem(1, 1, 2, self)
        return self.w

    def parse(self, text: str) -> "QuadElem":
        return parse_elem(text, self)


class FieldTag(QuadraticField):
    """A field from the nine imaginary quadratic fields of class number one."""

    def __init__(self, D: int):
        if D not in CLASS_NUMBER_ONE:
            raise UnsupportedField(
                f"D = {D} is not one of {', '.join(map(str, CLASS_NUMBER_ONE))}")
        super().__init__(D)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QuadElem:
    __slots__ = ("A", "B", "den", "field")

    def __init__(self, A: int, B: int, den: int, field: QuadraticField):
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            A, B, den = -A, -B, -den
        g = gcd(gcd(A, B), den)
        if g != 1:
            A, B, den = A // g, B // g, den // g
        self.A, self.B, self.den, self.field = A, B, den, field

    @classmethod
    def from_rationals(cls, a, b, field):
        a, b = Fraction(a), Fraction(b)
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        return cls(a.numerator * (den // a.denominator),
                   b.numerator * (den // b.denominator), den, field)

    # coordinates
    @property
    def a(self) -> Fraction:
        return Fraction(self.A, self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.B, self.den)

    @property
    def tag(self):
        return self.field

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.field.D != self.field.D:
                raise MixedFields(f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return QuadElem(other, 0, 1, self.field)
        if isinstance(other, Fraction):
            return QuadElem(other.numerator, 0, other.denominator, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return QuadElem(self.A + o.A, self.B + o.B, self.den, self.field)
        return QuadElem(self.A * o.den + o.A * self.den, self.B * o.den + o.B * self.den,
                        self.den * o.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.A, -self.B, self.den, self.field)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadElem(self.A * other, self.B * other, self.den, self.field)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = self.field.D
        return QuadElem(self.A * o.A + D * self.B * o.B, self.A * o.B + self.B * o.A,
                        self.den * o.den, self.field)

    __rmul__ = __mul__

    def inverse(self):
        n = self.A * self.A - self.field.D * self.B * self.B
        if n == 0:
            raise DivisionByZero(f"division by zero in {self.field}")
        return QuadElem(self.den * self.A, -self.den * self.B, n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadElem(1, 0, 1, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return (self.field.D == other.field.D and self.A == other.A
                    and self.B == other.B and self.den == other.den)
        if isinstance(other, (int, Fraction)):
            return self.B == 0 and Fraction(self.A, self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.B == 0:
            return hash(Fraction(self.A, self.den))
        return hash((self.A, self.B, self.den, self.field.D))

    def __bool__(self):
        return self.A != 0 or self.B != 0

    def is_zero(self):
        return not self

    def is_rational(self):
        return self.B == 0

    def conj(self):
        return QuadElem(self.A, -self.B, self.den, self.field)

    def norm(self) -> Fraction:
        return Fraction(self.A * self.A - self.field.D * self.B * self.B, self.den * self.den)

    def trace(self) -> Fraction:
        return Fraction(2 * self.A, self.den)

    def is_integral(self) -> bool:
        if self.den == 1:
            return True
        return self.field.D % 4 == 1 and self.den == 2 and self.A % 2 == 1 and self.B % 2 == 1

    def denominator(self) -> int:
        """Smallest positive integer n with n*self in the ring of integers."""
        if self.field.D % 4 == 1 and self.den % 2 == 0 and (self.A - self.B) % 2 == 0:
            return self.den // 2
        return self.den

    def integral_coords(self):
        """(c0, c1) with self = c0 + c1*omega; integers iff self is integral."""
        a, b = self.a, self.b
        if self.field.D % 4 == 1:
            return a - b, 2 * b
        return a, b

    def sqrt(self) -> Optional["QuadElem"]:
        return sqrt_in_K(self)

    def canonical_sign(self):
        """self or -self, whichever has positive first nonzero coordinate."""
        if self.A < 0 or (self.A == 0 and self.B < 0):
            return -self
        return self

    def sort_key(self):
        return (self.a, self.b)

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return _frac_str(a)
        if b == 1:
            bw = "w"
        elif b == -1:
            bw = "-w"
        else:
            bw = f"{_frac_str(b)}*w"
        if a == 0:
            return bw
        if bw.startswith("-"):
            return f"{_frac_str(a)} - {bw[1:]}"
        return f"{_frac_str(a)} + {bw}"

    def __repr__(self):
        return f"QuadElem({self}, D={self.field.D})"


# module level API ---------------------------------------------------------

def field_arith(x, y, op: str):
    ops = {"+": lambda: x + y, "-": lambda: x - y, "*": lambda: x * y, "/": lambda: x / y}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op]()


def conj_norm_trace(x: QuadElem):
    return x.conj(), x.norm(), x.trace()


def is_integral(x) -> bool:
    if isinstance(x, QuadElem):
        return x.is_integral()
    return Fraction(x).denominator == 1


def sqrt_in_K(x: QuadElem) -> Optional[QuadElem]:
    """A square root of x inside its own field, sign-normalized, or None."""
    K = x.field
    if not x:
        return K.zero
    a, b = x.a, x.b
    if b == 0:
        r = rational_sqrt(a)
        if r is not None:
            return K(r)
        r = rational_sqrt(a / K.D)
        if r is not None:
            return K(0, r)
        return None
    n = rational_sqrt(a * a - K.D * b * b)
    if n is None:
        return None
    for s in (n, -n):
        p = rational_sqrt((a + s) / 2)
        if p:
            root = K(p, b / (2 * p))
            return root.canonical_sign()
    return None


def is_square(x) -> bool:
    return sqrt_in_K(x) is not None


@dataclass(frozen=True)
class PrimeIdealRep:
    """A prime of O_K above the rational prime p.

    For a split prime the ideal is (p, sqrt(D) - root); residue maps send
    sqrt(D) to `root`.  For inert primes the residue field is
    F_p[t]/(t^2 - D); for ramified odd primes sqrt(D) maps to 0.
    """
    p: int
    kind: str
    root: Optional[int]
    field: QuadraticField

    @property
    def residue_degree(self):
        return 2 if self.kind == "inert" else 1

    @property
    def norm(self):
        return self.p ** self.residue_degree


def splitting_type(p: int, tag: QuadraticField) -> PrimeIdealRep:
    D = tag.D
    if p == 2:
        if D % 4 in (2, 3):
            return PrimeIdealRep(2, "ramified", None, tag)
        return PrimeIdealRep(2, "split" if D % 8 == 1 else "inert", None, tag)
    if D % p == 0:
        return PrimeIdealRep(p, "ramified", 0, tag)
    r = sqrt_mod_prime(D, p)
    if r is None:
        return PrimeIdealRep(p, "inert", None, tag)
    return PrimeIdealRep(p, "split", r, tag)


def reduce_mod(x, P: PrimeIdealRep):
    """Image of x in the residue field O_K / P (an FFElem)."""
    from .ffield import GF
    p = P.p
    if p == 2:
        raise BadReduction("residue maps are implemented for odd primes only")
    if not isinstance(x, QuadElem):
        x = P.field(x)
    if x.den % p == 0:
        raise BadReduction(f"{x} is not integral at {p}")
    inv = pow(x.den, -1, p)
    if P.kind == "split":
        return GF(p)((x.A + x.B * P.root) * inv)
    if P.kind == "ramified":
        return GF(p)(x.A * inv)
    return GF(p, 2, P.field.D % p)((x.A * inv, x.B * inv))


def embed_mod(x: QuadElem, p: int, k: int, root_k: int) -> int:
    """Image of x in Z/p^k under sqrt(D) -> root_k."""
    pk = p ** k
    if x.den % p == 0:
        raise BadReduction(f"{x} is not integral at {p}")
    return (x.A + x.B * root_k) * pow(x.den, -1, pk) % pk


def _prime_power(n: int):
    p = 2
    while n % p:
        p += 1
        if p * p > n:
            p = n
            break
    k, m = 0, n
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{n} is not a prime power")
    return p, k


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _round_div(n: int, d: int) -> int:
    # nearest integer to n/d for d > 0
    return (2 * n + d) // (2 * d)


def gauss_reduce(u, v):
    if _dot(u, u) > _dot(v, v):
        u, v = v, u
    while True:
        m = _round_div(_dot(u, v), _dot(u, u))
        v = (v[0] - m * u[0], v[1] - m * u[1])
        if _dot(v, v) >= _dot(u, u):
            return u, v
        u, v = v, u


def reconstruct_from_residue(c: int, pk: int, tag: QuadraticField, height_bound,
                             prime: Optional[PrimeIdealRep] = None) -> Optional[QuadElem]:
    """Recover x = c0 + c1*omega with |c0|, |c1| <= height_bound from its image mod p^k.

    The embedding is the split one fixed by `prime` (default: the canonical
    root returned by splitting_type).  Returns None if no such x exists.
    """
    p, k = _prime_power(pk)
    P = prime or splitting_type(p, tag)
    if P.kind != "split":
        raise BadReduction(f"{p} does not split in {tag}")
    rk = lift_sqrt(tag.D, P.root, p, k)
    w_img = rk if tag.D % 4 != 1 else (1 + rk) * pow(2, -1, pk) % pk
    # lattice of (c0, c1) with c0 + c1*w_img = 0 mod p^k
    u, v = gauss_reduce((pk, 0), ((-w_img) % pk, 1))
    t = (c % pk, 0)
    det = u[0] * v[1] - u[1] * v[0]
    x0 = Fraction(t[0] * v[1] - t[1] * v[0], det)
    y0 = Fraction(u[0] * t[1] - u[1] * t[0], det)
    best = None
    for i in (-1, 0, 1, 2, -2):
        for j in (-1, 0, 1, 2, -2):
            m, n = round(x0) + i, round(y0) + j
            cand = (t[0] - m * u[0] - n * v[0], t[1] - m * u[1] - n * v[1])
            h = max(abs(cand[0]), abs(cand[1]))
            if best is None or h < best[0]:
                best = (h, cand)
    if best[0] > height_bound:
        return None
    c0, c1 = best[1]
    return c0 + c1 * tag.omega


# parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, field: QuadraticField):
        self.text = text
        self.field = field
        self.tokens = self._tokenize(text)
        self.i = 0

    def _tokenize(self, text):
        out = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                out.append(("num", int(text[i:j]), i))
                i = j
            elif ch == "w":
                out.append(("w", None, i))
                i += 1
            elif ch in "+-*/()":
                out.append((ch, None, i))
                i += 1
            elif ch in "−–":
                out.append(("-", None, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i, text)
        out.append(("end", None, len(text)))
        return out

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {self._show(tok)}", tok[2], self.text)
        self.i += 1
        return tok

    @staticmethod
    def _show(tok):
        return "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {self._show(tok)}", tok[2], self.text)
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[0] == "*":
                val = val * rhs
            else:
                if not rhs:
                    raise ParseError("division by zero", op[2], self.text)
                val = val / rhs
        return val

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return self.field(tok[1])
        if tok[0] == "w":
            self.take()
            return self.field.w
        if tok[0] == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected {self._show(tok)}", tok[2], self.text)


def parse_elem(text: str, tag: QuadraticField) -> QuadElem:
    return _Parser(text, tag).parse()


def parse_rational(text: str) -> Fraction:
    """Rational literal through the same grammar, rejecting any w."""
    x = parse_elem(text, QuadraticField(-1))
    if not x.is_rational():
        raise NotInField(f"{text!r} is not rational")
    return x.a
