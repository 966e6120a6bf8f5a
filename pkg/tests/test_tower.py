import pytest
from hypothesis import given, strategies as st

from torsionlab.errors import NotInSet
from torsionlab.qfield import QuadraticField, sqrt_in_K
from torsionlab.tower import TowerTag, contains_sqrt, lift, sqrt_in_L

from .strategies import field_elems

K = QuadraticField(-7)
L = TowerTag(K, K(-1))
els = st.tuples(field_elems(-7), field_elems(-7)).map(lambda uv: L(*uv))


@given(els, els, els)
def test_tower_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if x:
        assert x * x.inverse() == 1


@given(els, els)
def test_sigma_is_an_automorphism(x, y):
    assert (x * y).sigma() == x.sigma() * y.sigma()
    assert (x + y).sigma() == x.sigma() + y.sigma()
    assert x.sigma().sigma() == x
    assert (x * x.sigma()).in_base()


@given(els)
def test_sqrt_in_L_of_square(x):
    r = sqrt_in_L(x * x)
    assert r is not None and r * r == x * x


def test_contains_sqrt():
    assert contains_sqrt(-1, L)
    assert contains_sqrt(7, L)           # -7 * -1
    assert not contains_sqrt(-3, L)
    M = TowerTag(K, K(-3))
    assert contains_sqrt(21, M) and not contains_sqrt(-1, M)


def test_lift_and_base():
    x = lift(K("(1+w)/2"), L)
    assert x.in_base() and x.sigma() == x
    assert L.s * L.s == -1


def test_square_parameter_is_rejected():
    with pytest.raises(NotInSet):
        TowerTag(K, K(4))
    assert sqrt_in_K(K(-7)) is not None
    with pytest.raises(NotInSet):
        TowerTag(K, K(-7))
