from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from torsionlab.errors import DivisionByZero, MixedFields, NotInField, ParseError, UnsupportedField
from torsionlab.qfield import (FieldTag, QuadraticField, embed_mod, legendre, parse_rational,
                               rational_sqrt, reconstruct_from_residue, splitting_type, sqrt_in_K,
                               sqrt_mod_prime, squarefree_part)

from .strategies import field_elems


def pair(D):
    return st.tuples(field_elems(D), field_elems(D))


@given(st.sampled_from((-7, -163, 5)).flatmap(lambda D: st.tuples(field_elems(D), field_elems(D), field_elems(D))))
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(st.sampled_from((-2, -19, 13)).flatmap(pair))
def test_norm_trace_conj(xy):
    x, y = xy
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    assert (x * y).conj() == x.conj() * y.conj()
    assert x * x.conj() == x.norm()


@given(field_elems())
def test_print_parse_round_trip(x):
    assert x.field(str(x)) == x


@given(field_elems())
def test_sqrt_of_square(x):
    r = sqrt_in_K(x * x)
    assert r is not None and r * r == x * x


def _sympy_is_square(x):
    # independent route: factor t^2 - x over Q(sqrt D)
    t = sympy.Symbol("t")
    D = x.field.D
    expr = t ** 2 - (sympy.Rational(x.a.numerator, x.a.denominator)
                     + sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(D))
    _, facs = sympy.factor_list(expr, t, extension=sympy.sqrt(D))
    return sum(m for _, m in facs) > 1


@given(field_elems(den=False))
def test_sqrt_matches_sympy(x):
    if not x:
        return
    assert (sqrt_in_K(x) is not None) == _sympy_is_square(x)


def test_sqrt_examples():
    K = QuadraticField(-7)
    assert sqrt_in_K(K(-7)) == K.w or sqrt_in_K(K(-7)) == -K.w
    assert sqrt_in_K(K(-1)) is None
    assert sqrt_in_K(K("68121 - 69696")) in (15 * K.w, -15 * K.w)
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(-4) is None


def test_parse_errors_have_positions():
    K = QuadraticField(-2)
    with pytest.raises(ParseError) as e:
        K("2*w+")
    assert e.value.position == 4
    with pytest.raises(ParseError):
        K("1/0")
    with pytest.raises(NotInField):
        parse_rational("1+w")
    assert parse_rational("-3/6") == Fraction(-1, 2)


def test_field_validation():
    for bad in (0, 1, 4, 12):
        with pytest.raises(UnsupportedField):
            QuadraticField(bad)
    with pytest.raises(UnsupportedField):
        FieldTag(5)
    assert FieldTag(-163).in_S and not FieldTag(-1).in_S


def test_errors():
    K, L = QuadraticField(-7), QuadraticField(-2)
    with pytest.raises(DivisionByZero):
        K(1) / K(0)
    with pytest.raises(MixedFields):
        K(1) + L(1)


def test_squarefree_and_legendre():
    assert squarefree_part(-12) == -3 and squarefree_part(50) == 2
    for p in (3, 5, 7, 11, 13, 101):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert (legendre(a, p) == 1) == (a in squares)
            r = sqrt_mod_prime(a, p)
            assert (r is not None) == (a in squares)
            if r is not None:
                assert r * r % p == a


@pytest.mark.parametrize("D,p,kind", [(-7, 3, "inert"), (-7, 2, "split"), (-7, 7, "ramified"),
                                      (-7, 11, "split"), (-2, 3, "split"), (-2, 5, "inert"),
                                      (-19, 3, "inert"), (-19, 5, "split"), (-11, 3, "split")])
def test_splitting(D, p, kind):
    assert splitting_type(p, QuadraticField(D)).kind == kind


@given(st.integers(-300, 300), st.integers(-300, 300))
def test_reconstruct_from_residue(a, b):
    K = QuadraticField(-7)
    x = K(a) + K(b) * K.omega
    P = splitting_type(11, K)
    k = 12
    pk = 11 ** k
    # same embedding as reconstruct uses
    y = reconstruct_from_residue(embed_mod(x, 11, k, _root_k(K, P, k)), pk, K, 400, P)
    assert y == x


def _root_k(K, P, k):
    from torsionlab.qfield import lift_sqrt
    return lift_sqrt(K.D, P.root, P.p, k)
