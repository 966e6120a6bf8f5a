"""Quadratic extensions L = K(sqrt d) of a quadratic field K, with d in K."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import DivisionByZero, MixedFields, NotInSet
from .qfield import QuadElem, QuadraticField, sqrt_in_K, squarefree_part


def normalize_twist(d, K: QuadraticField) -> QuadElem:
    """Representative of d modulo squares: rational d becomes a squarefree integer."""
    d = K(d) if not isinstance(d, QuadElem) else d
    if not d:
        raise NotInSet("d = 0")
    if d.is_rational():
        q = d.a
        d = K(squarefree_part(q.numerator * q.denominator))
    else:
        n = d.denominator()
        d = d * (n * n)
    return d


class TowerTag:
    def __init__(self, base: QuadraticField, d, normalize: bool = True):
        self.base = base
        d = base(d) if not isinstance(d, QuadElem) else d
        if d.field != base:
            raise MixedFields(f"{d} is not in {base}")
        if normalize:
            d = normalize_twist(d, base)
        if sqrt_in_K(d) is not None:
            raise NotInSet(f"d = {d} is a square in {base}; K(sqrt d) = K")
        self.d = d

    def __eq__(self, other):
        return isinstance(other, TowerTag) and self.base == other.base and self.d == other.d

    def __hash__(self):
        return hash(("TowerTag", self.base.D, self.d))

    def __repr__(self):
        return f"TowerTag({self.base}, d={self.d})"

    def __str__(self):
        return f"{self.base}(sqrt({self.d}))"

    def __call__(self, u=0, v=0) -> "TowerElem":
        if isinstance(u, TowerElem):
            return u
        return TowerElem(self.base(u), self.base(v), self)

    @property
    def s(self):
        """sqrt(d)."""
        return TowerElem(self.base.zero, self.base.one, self)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)


def _show(x):
    s = str(x)
    return f"({s})" if (" " in s or s.startswith("-")) else s


class TowerElem:
    __slots__ = ("u", "v", "tag")

    def __init__(self, u: QuadElem, v: QuadElem, tag: TowerTag):
        self.u, self.v, self.tag = u, v, tag

    def _coerce(self, other):
        if isinstance(other, TowerElem):
            if other.tag is not self.tag and other.tag != self.tag:
                raise MixedFields(f"{other.tag} vs {self.tag}")
            return other
        if isinstance(other, (int, Fraction, QuadElem)):
            K = self.tag.base
            if isinstance(other, QuadElem) and other.field != K:
                raise MixedFields(f"{other} is not in {K}")
            return TowerElem(K(other), K.zero, self.tag)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElem(self.u + o.u, self.v + o.v, self.tag)

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(-self.u, -self.v, self.tag)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElem(self.u - o.u, self.v - o.v, self.tag)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, QuadElem, Fraction)):
            return TowerElem(self.u * other, self.v * other, self.tag)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.tag.d
        return TowerElem(self.u * o.u + d * self.v * o.v, self.u * o.v + self.v * o.u, self.tag)

    __rmul__ = __mul__

    def norm(self) -> QuadElem:
        return self.u * self.u - self.tag.d * self.v * self.v

    def sigma(self):
        """The nontrivial automorphism of L over K."""
        return TowerElem(self.u, -self.v, self.tag)

    conj = sigma

    def inverse(self):
        n = self.norm()
        if not n:
            raise DivisionByZero(f"division by zero in {self.tag}")
        inv = n.inverse()
        return TowerElem(self.u * inv, -self.v * inv, self.tag)

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
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.tag.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TowerElem):
            return self.tag == other.tag and self.u == other.u and self.v == other.v
        if isinstance(other, (int, Fraction, QuadElem)):
            return not self.v and self.u == other
        return NotImplemented

    def __hash__(self):
        if not self.v:
            return hash(self.u)
        return hash((self.u, self.v))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def in_base(self) -> bool:
        return not self.v

    def canonical_sign(self):
        for c in (self.u.a, self.u.b, self.v.a, self.v.b):
            if c:
                return self if c > 0 else -self
        return self

    def sqrt(self):
        return sqrt_in_L(self)

    def sort_key(self):
        return (self.u.a, self.u.b, self.v.a, self.v.b)

    def __str__(self):
        if not self.v:
            return str(self.u)
        vs = "s" if self.v == 1 else ("-s" if self.v == -1 else f"{_show(self.v)}*s")
        if not self.u:
            return vs
        if vs.startswith("-") and vs[1:] == "s":
            return f"{_show(self.u)} - s"
        return f"{_show(self.u)} + {vs}"

    def __repr__(self):
        return f"TowerElem({self}, {self.tag})"


def lift(x, tag: TowerTag) -> TowerElem:
    return tag(x)


def sqrt_in_L(x: TowerElem) -> Optional[TowerElem]:
    """A square root of x in L, sign-normalized, or None."""
    tag = x.tag
    K = tag.base
    if not x:
        return tag.zero
    if not x.v:
        r = sqrt_in_K(x.u)
        if r is not None:
            return TowerElem(r, K.zero, tag)
        r = sqrt_in_K(x.u / tag.d)
        if r is not None:
            return TowerElem(K.zero, r, tag).canonical_sign()
        return None
    n = sqrt_in_K(x.norm())
    if n is None:
        return None
    for s in (n, -n):
        p = sqrt_in_K((x.u + s) / 2)
        if p:
            return TowerElem(p, x.v / (2 * p), tag).canonical_sign()
    return None


def contains_sqrt(c, tag: TowerTag) -> bool:
    """True iff c in K becomes a square in L."""
    return sqrt_in_L(tag(c)) is not None
