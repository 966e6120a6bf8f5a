"""Finite fields F_p and F_{p^2} = F_p[t]/(t^2 - n) with n a non-residue."""
from __future__ import annotations

from functools import lru_cache

from .errors import DivisionByZero, MixedFields
from .qfield import legendre


class FiniteField:
    def __init__(self, p: int, degree: int = 1, nonresidue: int | None = None):
        if degree not in (1, 2):
            raise ValueError("only degrees 1 and 2 are supported")
        self.p = p
        self.degree = degree
        if degree == 2:
            if nonresidue is None:
                nonresidue = next(n for n in range(p - 1, 0, -1) if legendre(n, p) == -1)
            nonresidue %= p
            if legendre(nonresidue, p) != -1:
                raise ValueError(f"{nonresidue} is a square mod {p}")
        self.nonresidue = nonresidue
        self.q = p ** degree
        self._sqrt_table = None

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.degree == other.degree and self.nonresidue == other.nonresidue)

    def __hash__(self):
        return hash((self.p, self.degree, self.nonresidue))

    def __repr__(self):
        return f"GF({self.q})" if self.degree == 1 else f"GF({self.p}^2, t^2={self.nonresidue})"

    def __call__(self, v) -> "FFElem":
        if isinstance(v, FFElem):
            return v
        if isinstance(v, tuple):
            c0, c1 = v
            return FFElem(c0 % self.p, c1 % self.p, self)
        return FFElem(int(v) % self.p, 0, self)

    @property
    def zero(self):
        return FFElem(0, 0, self)

    @property
    def one(self):
        return FFElem(1, 0, self)

    def elements(self):
        p = self.p
        if self.degree == 1:
            return [FFElem(i, 0, self) for i in range(p)]
        return [FFElem(i, j, self) for j in range(p) for i in range(p)]

    def sqrt_table(self):
        if self._sqrt_table is None:
            table = {}
            for z in self.elements():
                table.setdefault(z * z, z)
            self._sqrt_table = table
        return self._sqrt_table


@lru_cache(maxsize=None)
def GF(p: int, degree: int = 1, nonresidue: int | None = None) -> FiniteField:
    return FiniteField(p, degree, nonresidue)


class FFElem:
    __slots__ = ("c0", "c1", "field")

    def __init__(self, c0, c1, field):
        self.c0, self.c1, self.field = c0, c1, field

    @property
    def value(self):
        return (self.c0, self.c1)

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field and other.field != self.field:
                raise MixedFields(f"{other.field} vs {self.field}")
            return other
        if isinstance(other, int):
            return FFElem(other % self.field.p, 0, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FFElem((self.c0 + o.c0) % p, (self.c1 + o.c1) % p, self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElem(-self.c0 % p, -self.c1 % p, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FFElem((self.c0 - o.c0) % p, (self.c1 - o.c1) % p, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        if self.field.degree == 1:
            return FFElem(self.c0 * o.c0 % p, 0, self.field)
        n = self.field.nonresidue
        return FFElem((self.c0 * o.c0 + n * self.c1 * o.c1) % p,
                      (self.c0 * o.c1 + self.c1 * o.c0) % p, self.field)

    __rmul__ = __mul__

    def inverse(self):
        p = self.field.p
        if self.field.degree == 1:
            if self.c0 == 0:
                raise DivisionByZero(f"division by zero in {self.field}")
            return FFElem(pow(self.c0, -1, p), 0, self.field)
        nrm = (self.c0 * self.c0 - self.field.nonresidue * self.c1 * self.c1) % p
        if nrm == 0:
            raise DivisionByZero(f"division by zero in {self.field}")
        inv = pow(nrm, -1, p)
        return FFElem(self.c0 * inv % p, -self.c1 * inv % p, self.field)

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
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.c0 == other.c0 and self.c1 == other.c1 and self.field == other.field
        if isinstance(other, int):
            return self.c1 == 0 and self.c0 == other % self.field.p
        return NotImplemented

    def __hash__(self):
        # prime-field values hash like their least residue, matching == with int
        if self.c1 == 0:
            return hash(self.c0)
        return hash((self.c0, self.c1, self.field.p))

    def __bool__(self):
        return self.c0 != 0 or self.c1 != 0

    def is_square(self) -> bool:
        if not self:
            return True
        if self.field.degree == 1:
            return legendre(self.c0, self.field.p) == 1
        # a norm is a square in F_p iff the element is a square in F_{p^2}
        return True if self.field.p == 2 else (self ** ((self.field.q - 1) // 2)) == 1

    def sqrt(self):
        return self.field.sqrt_table().get(self)

    def sort_key(self):
        return (self.c1, self.c0)

    def __str__(self):
        if self.field.degree == 1:
            return str(self.c0)
        if self.c1 == 0:
            return str(self.c0)
        return f"{self.c0} + {self.c1}*t"

    __repr__ = __str__
