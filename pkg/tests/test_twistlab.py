import pytest

from torsionlab.dataset import load_dataset
from torsionlab.ecurve import Curve, torsion_subgroup
from torsionlab.ecurve.torsion import TorsionGroup
from torsionlab.errors import NotInSet, UnsupportedField, UnsupportedGroup
from torsionlab.qfield import SUPPORTED_S, FieldTag, QuadraticField, sqrt_in_K
from torsionlab.twistlab import (allowed_torsion, bounded_d_list, check_injection, classification_table,
                                 default_d_list, dedupe_mod_squares, growth_criterion,
                                 predicted_growth_groups, predicted_twist_groups, scan, shape, twist_curve)


@pytest.mark.parametrize("text,want", [("2x6", (2, 6)), ("Z/2 ⊕ Z/6", (2, 6)), ("Z/4", (1, 4)),
                                       ((4, 4), (4, 4)), (TorsionGroup(2, 8), (2, 8))])
def test_shape(text, want):
    assert shape(text) == want


def test_shape_rejects_garbage():
    with pytest.raises(UnsupportedGroup):
        shape("hello")
    with pytest.raises(UnsupportedGroup):
        predicted_twist_groups(-7, "1x5")
    with pytest.raises(UnsupportedField):
        predicted_twist_groups(-1, "2x2")


def test_tables_are_consistent():
    for D in SUPPORTED_S:
        ok = allowed_torsion(D)
        for n in range(1, 7):
            G = (2, 2 * n)
            T = predicted_twist_groups(D, G)
            if G != (2, 2):
                # twists keep full 2-torsion and live in the list for K
                assert all(t[0] == 2 and t in ok for t in T), (D, G)
            tab = classification_table(D, G)
            assert G in tab.predicted_growth or G == (2, 4) or G == (2, 2)
    assert predicted_twist_groups(-2, "2x6") == {(2, 2)}


def test_allowed_lists():
    assert (2, 10) in allowed_torsion(-2) and (2, 12) not in allowed_torsion(-2)
    assert (2, 12) in allowed_torsion(-163) and (2, 10) not in allowed_torsion(-163)
    assert (1, 15) in allowed_torsion(-7) and (1, 11) not in allowed_torsion(-11)


def test_criterion_example():
    K = FieldTag(-7)
    E = Curve(K(68121), K(69696))
    c = growth_criterion(E)
    assert c.holds and c.z in (15 * K.w, -15 * K.w)
    assert predicted_growth_groups(E) == {(4, 4), (4, 8)}
    # K(sqrt -3) is not K(i): the other list applies
    assert predicted_growth_groups(E, d=K(-3)) == {(2, 4), (2, 8)}


def test_classification_json():
    j = classification_table(QuadraticField(-19), "2x8").to_json()
    assert j["growth"] == ["Z/2 ⊕ Z/8"] and j["D"] == -19
    j = classification_table(-7, "2x4").to_json()
    assert "growth_if_alpha_minus_beta_is_pm_square" in j


def test_twist_curve_rejects_squares():
    K = FieldTag(-7)
    E = Curve(K(1), K(2))
    with pytest.raises(NotInSet):
        twist_curve(E, K(-7))
    with pytest.raises(NotInSet):
        twist_curve(E, K(9))
    assert twist_curve(E, K(-1)).alpha == -1


@pytest.mark.parametrize("D,rows", [(-2, 77), (-7, 91), (-163, 49)])
def test_default_d_list(D, rows):
    K = FieldTag(D)
    ds = default_d_list(K)
    assert len(ds) == rows
    # one representative per square class, none a square
    for i, d in enumerate(ds):
        assert sqrt_in_K(d) is None
        for e in ds[:i]:
            assert sqrt_in_K(d * e) is None


def test_dedupe_mod_squares():
    K = FieldTag(-7)
    assert len(dedupe_mod_squares([K(-1), K(-4), K(7), K(-9), K(2)], K)) == 2
    assert bounded_d_list(K, 0) == []


DATA = [e for e in load_dataset() if not e.slow]


@pytest.mark.parametrize("e", [e for e in DATA if e.rows], ids=lambda e: e.id)
def test_injection_on_table_rows(e):
    for r in e.rows:
        rep = check_injection(e.curve(), e.twist_param(r))
        assert rep.ok, rep.problems
        assert rep.image_size == rep.ext.order // rep.base.order


def test_scan_examples():
    K = FieldTag(-7)
    rep = scan(Curve(K(64), K(189)), bounded_d_list(K, 30))
    assert rep.rows and not rep.violations and not rep.errors
    assert scan(Curve(K(64), K(189)), []).rows == []
    K = FieldTag(-2)
    rep = scan(Curve(K(1), K(2)))
    row = next(r for r in rep.rows if r.d == K(-1))
    assert row.ext.shape == (4, 4)
    assert rep.to_json()["violations"] == []


# corpus properties ------------------------------------------------------------------

from functools import lru_cache

from torsionlab.ecurve.curve import INFINITY, Point
from torsionlab.ecurve.hensel import k_roots
from torsionlab.ecurve.torsion import extension_data, group_elements
from torsionlab.tower import lift, sqrt_in_L

CORPUS = [e for e in DATA if e.D in SUPPORTED_S]


@lru_cache(maxsize=None)
def corpus_scan(i):
    e = CORPUS[i]
    return scan(e.curve())


@pytest.mark.parametrize("i", range(len(CORPUS)), ids=[e.id for e in CORPUS])
def test_corpus_scan_has_no_violations(i):
    e = CORPUS[i]
    rep = corpus_scan(i)
    assert rep.rows and not rep.errors
    assert not rep.violations, rep.violations[:3]
    for r in rep.rows:
        # odd part and divisibility, recomputed here from the row groups
        odd = lambda n: n // (n & -n)
        assert odd(r.ext.order) == odd(rep.base.order) * odd(r.twist.order)
        assert (rep.base.order * r.twist.order) % r.ext.order == 0
        assert r.ext.order % rep.base.order == 0
        assert r.twist.shape in allowed_torsion(e.D)
    assert rep.base.shape in allowed_torsion(e.D)
    if rep.base.m == 2:
        assert rep.base.n // 2 <= 6


def _halves_over_K(E, P):
    """Q in E(K) with 2Q = P, from the K-roots of the duplication quartic."""
    K = E.field
    a, b = E.alpha, E.beta
    x0 = P.x
    # (x^2 - ab)^2 - 4 x0 x (x + a)(x + b)
    sq = [-a * b, K(0), K(1)]
    quart = [c for c in _pmul(sq, sq)]
    cub = _pmul([K(0), K(1)], _pmul([a, K(1)], [b, K(1)]))
    quart = [quart[i] - (4 * x0 * cub[i] if i < len(cub) else 0) for i in range(len(quart))]
    out = []
    for x in k_roots(quart, K):
        y = sqrt_in_K(E.rhs(x))
        if y is None:
            continue
        for Q in (Point(x, y), Point(x, -y)):
            if E.add(Q, Q) == P:
                out.append(Q)
    return out


def _pmul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


@pytest.mark.parametrize("e", CORPUS, ids=lambda e: e.id)
def test_halving_over_K(e):
    E = e.curve()
    G = torsion_subgroup(E)
    for P in group_elements(G, E):
        if P.is_infinity:
            continue
        cond = all(sqrt_in_K(c) is not None for c in (P.x, P.x + E.alpha, P.x + E.beta))
        assert cond == bool(_halves_over_K(E, P)), P


@pytest.mark.parametrize("e", [e for e in CORPUS if e.rows], ids=lambda e: e.id)
def test_halving_over_L(e):
    E = e.curve()
    for r in e.rows:
        X = extension_data(E, e.twist_param(r))
        EL, L = X.curve_L, X.tower
        els = group_elements(X.ext, EL)
        doubles = {EL.add(Q, Q) for Q in els}
        a, b = lift(E.alpha, L), lift(E.beta, L)
        for P in els:
            if P.is_infinity:
                continue
            cond = all(sqrt_in_L(c) is not None for c in (P.x, P.x + a, P.x + b))
            assert cond == (P in doubles), (r.d, P)
