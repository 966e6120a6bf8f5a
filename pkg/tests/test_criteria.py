"""Square-class criteria against direct torsion computation, Galois square units
against a CRT construction, and Galois-stable subgroups."""
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st
from sympy.ntheory import factorint
from sympy.ntheory.modular import crt

from torsionlab.errors import NonIntegralInput, SingularCurve
from torsionlab.ecurve import Curve, Point, galois_square_units, order_criteria, torsion_subgroup
from torsionlab.ecurve.criteria import check_witness, model_substitutions, sigma_point, verify_stable_subgroup
from torsionlab.ecurve.curve import WeierstrassCurve
from torsionlab.ecurve.torsion import extension_data, group_elements
from torsionlab.qfield import SUPPORTED_S, FieldTag, QuadraticField

from .strategies import integral_elem

NORM = 10 ** 4


@st.composite
def random_curve(draw, K):
    """Uniform pairs, square pairs, and the order-3 family, under a random model substitution."""
    kind = draw(st.sampled_from(("uniform", "squares", "order3")))
    if kind == "uniform":
        a, b = draw(integral_elem(K, NORM)), draw(integral_elem(K, NORM))
    elif kind == "squares":
        u, v = draw(integral_elem(K, 100)), draw(integral_elem(K, 100))
        a, b = u * u, v * v
    else:
        s, t = draw(integral_elem(K, 9)), draw(integral_elem(K, 9))
        a, b = s ** 3 * (s + 2 * t), t ** 3 * (t + 2 * s)
    assume(a and b and a != b)
    assume(abs(a.norm()) <= NORM and abs(b.norm()) <= NORM)
    i = draw(st.integers(0, 2))
    a, b = [(a, b), (-a, b - a), (-b, a - b)][i]
    return Curve(a, b)


def _agree(E):
    G = torsion_subgroup(E)
    for n in (3, 4, 8):
        ok, wit = order_criteria(E, n)
        assert ok == (G.n % n == 0), (str(E), n, str(G))
        if ok:
            assert check_witness(E, n, wit)
    return G


@pytest.mark.parametrize("D", SUPPORTED_S)
@settings(max_examples=200)
@given(data=st.data())
def test_criteria_agree_with_torsion(D, data):
    _agree(data.draw(random_curve(FieldTag(D))))


@pytest.mark.parametrize("D,a,b,G", [
    (-7, "729", "2304", (2, 8)), (-7, "(93*w + 449)/2", "24*w - 248", (2, 8)), (-2, "81", "256", (2, 8)),
    (-7, "68121", "69696", (2, 4)), (-2, "1", "4", (2, 4)),
    (-7, "(21*w - 39)/2", "(-21*w - 39)/2", (2, 6)), (-11, "-78056*w + 405752", "-27648*w + 857088", (2, 6)),
    (-2, "-25 + 32*w", "-25 - 32*w", (2, 10)), (-163, "64", "189", (2, 6)),
])
def test_criteria_on_table_curves(D, a, b, G):
    K = FieldTag(D)
    assert _agree(Curve(K(a), K(b))).shape == G


def test_order8_witness_is_a_pythagorean_triple():
    K = FieldTag(-7)
    ok, w = order_criteria(Curve(K(729), K(2304)), 8)
    assert ok and w["u"] ** 2 + w["v"] ** 2 == w["w"] ** 2


def test_non_integral_input_is_rejected():
    K = FieldTag(-19)
    E = Curve(K("(1160294229092597760*w - 755235215206514688)/806954491"), K("-215373816000*w + 140186761425"))
    with pytest.raises(NonIntegralInput):
        order_criteria(E, 4)


def test_model_substitutions_keep_the_curve():
    K = FieldTag(-7)
    E = Curve(K(3), K(5))
    js = {Curve(a, b).j_invariant() for a, b in model_substitutions(E)}
    assert js == {E.j_invariant()}


# Galois square units: brute force against CRT over prime powers

def _crt_units(n):
    parts = []
    for p, e in factorint(n).items():
        q = p ** e
        if p != 2:
            parts.append((q, {1, q - 1}))
        elif e == 1:
            parts.append((q, {1}))
        elif e == 2:
            parts.append((q, {1, 3}))
        else:
            parts.append((q, {1, q - 1, q // 2 - 1, q // 2 + 1}))
    mods = [q for q, _ in parts]
    return {int(crt(mods, list(rs))[0]) % n for rs in product(*(s for _, s in parts))} if n > 1 else set()


@pytest.mark.parametrize("n", range(2, 65))
def test_galois_square_units_brute_force(n):
    assert galois_square_units(n) == _crt_units(n)


def test_galois_square_units_examples():
    assert galois_square_units(32) == {1, 15, 17, 31}
    assert galois_square_units(16) == {1, 7, 9, 15}
    assert galois_square_units(20) == {1, 9, 11, 19}
    with pytest.raises(ValueError):
        galois_square_units(1)


# Galois-stable subgroups

def test_stable_cyclic_subgroup_of_order_15():
    # E over Q with a 3-torsion point; its twist by 5 has a 5-torsion point
    E = WeierstrassCurve(1, -1208, 19088)
    L = QuadraticField(5)
    s = L.w
    P3 = Point(L(8), L(100))
    # (-60, 2000) on E^5 maps to (-60/5, 2000 sqrt5 / 25) on E over Q(sqrt 5)
    P5 = Point(L(-12), 80 * s)
    E.change_field(L).check(P3)
    E.change_field(L).check(P5)
    rep = verify_stable_subgroup(E, 5, [P3, P5])
    assert rep.stable and rep.order == 15 and rep.cyclic


def test_unstable_order_four_subgroup():
    K = FieldTag(-2)
    E = Curve(K(-1), K(-2))
    X = extension_data(E, K(-1))
    assert X.ext.shape == (4, 4)
    EL = X.curve_L
    verdicts = []
    for P in group_elements(X.ext, EL):
        if P.is_infinity or EL.order(P, 4) != 4:
            continue
        rep = verify_stable_subgroup(E, K(-1), [P])
        direct = sigma_point(P) in {P, EL.neg(P)}
        assert rep.stable == direct and rep.order == 4 and rep.cyclic
        verdicts.append(rep.stable)
    assert False in verdicts
    assert verify_stable_subgroup(E, K(-1), list(X.ext.generators)).stable
