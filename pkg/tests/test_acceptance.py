"""Acceptance suite: one PASS/FAIL line per criterion, printed even under capture.

Tolerances are pinned here: every group comparison is exact, and the time
limits are 60 s (fast rows), 900 s (slow rows) and 120 s (Jacobians).
"""
import random
import time
from math import gcd, isqrt

import pytest

from torsionlab.auxlab import maps
from torsionlab.dataset import load_dataset
from torsionlab.ecurve import Curve, galois_square_units, order_criteria, torsion_subgroup
from torsionlab.ecurve.criteria import check_witness
from torsionlab.ecurve.torsion import extension_data
from torsionlab.qfield import SUPPORTED_S, FieldTag
from torsionlab.twistlab import allowed_torsion, growth_criterion, scan
from torsionlab.verify import verify

FAST_LIMIT, SLOW_LIMIT, JAC_LIMIT = 60.0, 900.0, 120.0
CURVES_PER_FIELD = 200
NORM = 10 ** 4
SEED = 20261018


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def _rows_match(rows):
    bad = []
    for D, a, b, d, twist, ext in rows:
        K = FieldTag(D)
        X = extension_data(Curve(K(a), K(b)), K(d))
        if (twist is not None and X.twist.shape != twist) or X.ext.shape != ext:
            bad.append(f"D={D} E({a}, {b}) d={d}: twist {X.twist}, ext {X.ext}")
    return bad


FAST_ROWS = [
    (-7, "(42525*w - 44415)/2", "(-42525*w - 44415)/2", "-15", (2, 8), (2, 16)),
    (-2, "-1", "-2", "-1", None, (4, 4)),
    (-2, "3600", "3645", "-5", None, (2, 8)),
    (-7, "68121", "69696", "-1", (2, 4), (4, 4)),
    (-7, "(21*w - 39)/2", "(-21*w - 39)/2", "-3", (2, 6), (6, 6)),
    (-11, "-78056*w + 405752", "-27648*w + 857088", "-3", (2, 6), (6, 6)),
] + [(D, "64", "189", "21", (2, 2), (2, 12)) for D in SUPPORTED_S] + [
    (-7, "729", "2304", "-1", None, (4, 8)),
    (-7, "(93*w + 449)/2", "24*w - 248", "-15", None, (2, 16)),
]


def test_1_fast_table_rows(capsys):
    t0 = time.perf_counter()
    bad = _rows_match(FAST_ROWS)
    dt = time.perf_counter() - t0
    report(capsys, 1, not bad and dt < FAST_LIMIT,
           f"{len(FAST_ROWS) - len(bad)}/{len(FAST_ROWS)} rows exact in {dt:.1f}s" + ("; " + "; ".join(bad) if bad else ""))


def test_2_slow_table_rows(capsys):
    slow = [e for e in load_dataset() if e.slow]
    rows = [(e.D, e.alpha, e.beta, r.d, r.twist, r.ext) for e in slow for r in e.rows]
    t0 = time.perf_counter()
    bad = _rows_match(rows)
    base_ok = all(torsion_subgroup(e.curve()).shape == e.G for e in slow)
    dt = time.perf_counter() - t0
    report(capsys, 2, len(rows) == 2 and not bad and base_ok and dt < SLOW_LIMIT,
           f"{len(rows) - len(bad)}/{len(rows)} rows over Q(sqrt -19) exact in {dt:.1f}s" + ("; " + "; ".join(bad) if bad else ""))


def _table(name):
    rep = verify([name])
    fails = [f"{r.name}: {r.detail}" for r in rep.results if r.status == "fail"]
    return rep, fails


def test_3_auxiliary_curves(capsys):
    rep, fails = _table("aux")
    report(capsys, 3, not fails, f"{rep.count('pass')} checks pass" + ("; " + "; ".join(fails) if fails else ""))


def test_4_phi_preimage_table(capsys):
    t = maps.verify_phi_inverse_table()
    ident = maps.identity_check()
    norm = lambda pts: sorted({tuple(str(c) for c in maps.normalize(P)) for P in pts})
    phi_ok = norm(maps.base_locus(maps.phi())) == norm(maps.PHI_NONREGULAR_STATED)
    psi_got = norm(maps.base_locus(maps.psi()))
    psi_ok = psi_got == norm(maps.PSI_NONREGULAR_STATED)
    problems = []
    if len(t.rows) != 16:
        problems.append(f"the table has {len(t.rows)} rows, not 16")
    problems += [f"row {r.index + 1}: {'; '.join(r.notes)}" for r in t.failures]
    if not t.empty_row_verified:
        problems.append("empty row has a regular preimage")
    if not ident.true_identity:
        problems.append("cleared polynomial is not (y - x) times the curve")
    if not phi_ok:
        problems.append("phi non-regular list differs")
    if not psi_ok:
        problems.append(f"psi non-regular points are {psi_got}; the stated list also has [0, 0, 1], where psi is regular"
                        if ("0", "0", "1") not in psi_got else f"psi non-regular points are {psi_got}")
    ok = not problems
    report(capsys, 4, ok, f"identity holds (sign {ident.sign}); {len(t.rows) - len(t.failures)}/{len(t.rows)} rows verify"
           + ("; " + "; ".join(problems) if problems else ""))


def test_5_jacobians(capsys):
    t0 = time.perf_counter()
    rep, fails = _table("jacobians")
    dt = time.perf_counter() - t0
    report(capsys, 5, not fails and rep.count("pass") == 7 and dt < JAC_LIMIT,
           f"{rep.count('pass')} checks pass, {rep.count('skip')} skipped (q=25 enumeration, zeta used) in {dt:.1f}s"
           + ("; " + "; ".join(fails) if fails else ""))


def test_6_modular_curves(capsys):
    rep, fails = _table("modcurve")
    report(capsys, 6, not fails and rep.count("pass") == 8,
           f"{rep.count('pass')} checks pass" + ("; " + "; ".join(fails) if fails else ""))


def _random_integral(rng, K, bound):
    """a + b*omega, nonzero, drawn inside the ellipse Norm <= bound."""
    D = abs(K.D)
    while True:
        if K.D % 4 == 1:
            bmax = isqrt(4 * bound // D)
            b = rng.randint(-bmax, bmax)
            R = isqrt(4 * bound - D * b * b)
            a = rng.randint(-((b + R) // 2), (R - b) // 2)
        else:
            bmax = isqrt(bound // D)
            b = rng.randint(-bmax, bmax)
            R = isqrt(bound - D * b * b)
            a = rng.randint(-R, R)
        if a or b:
            return K(a) + K(b) * K.omega


def _random_curve(rng, K):
    while True:
        kind = rng.choice(("uniform", "squares", "order3"))
        if kind == "uniform":
            a, b = _random_integral(rng, K, NORM), _random_integral(rng, K, NORM)
        elif kind == "squares":
            u, v = _random_integral(rng, K, 100), _random_integral(rng, K, 100)
            a, b = u * u, v * v
        else:
            s, t = _random_integral(rng, K, 9), _random_integral(rng, K, 9)
            a, b = s ** 3 * (s + 2 * t), t ** 3 * (t + 2 * s)
        if not (a and b and a != b and abs(a.norm()) <= NORM and abs(b.norm()) <= NORM):
            continue
        a, b = rng.choice([(a, b), (-a, b - a), (-b, a - b)])
        return Curve(a, b)


def test_7_property_suites(capsys):
    rng = random.Random(SEED)
    problems, n8_failures, curves = [], 0, 0
    for D in SUPPORTED_S:
        K = FieldTag(D)
        for _ in range(CURVES_PER_FIELD):
            E = _random_curve(rng, K)
            curves += 1
            G = torsion_subgroup(E)
            if G.shape not in allowed_torsion(D):
                problems.append(f"{E}: {G} not allowed over K")
            if G.m == 2 and G.n // 2 > 6:
                problems.append(f"{E}: full 2-torsion group {G} too large")
            for n in (3, 4, 8):
                try:
                    ok, wit = order_criteria(E, n)
                except Exception as exc:   # factorization trouble is reported, not passed
                    if n == 8:
                        n8_failures += 1
                        continue
                    raise
                if ok != (G.n % n == 0) or (ok and not check_witness(E, n, wit)):
                    problems.append(f"{E}: criterion n={n} says {ok}, torsion {G}")
    units_bad = [n for n in range(2, 65) if galois_square_units(n) != {
        a for a in range(1, n) if gcd(a, n) == 1 and a * a % n == 1}]
    if units_bad:
        problems.append(f"square roots of 1 differ for n in {units_bad}")
    if galois_square_units(20) != {1, 9, 11, 19}:
        problems.append("n = 20 set is not {1, 9, 11, 19}")
    # decomposition, divisibility and the halving biconditional over the corpus
    from . import test_twistlab as T
    for i, e in enumerate(T.CORPUS):
        rep = T.corpus_scan(i)
        if rep.violations or rep.errors:
            problems.append(f"{e.id}: {rep.violations[:2]} {rep.errors[:2]}")
        try:
            T.test_halving_over_K(e)
            if e.rows:
                T.test_halving_over_L(e)
        except AssertionError as exc:
            problems.append(f"{e.id}: halving {exc}")
    report(capsys, 7, not problems,
           f"{curves} random curves, criteria n=3,4,8 agree ({n8_failures} n=8 factorization failures); "
           f"units n<=64; {len(T.CORPUS)} corpus curves scanned" + ("; " + "; ".join(problems[:5]) if problems else ""))


EXTRA_CORPUS = [(-19, "256", "81"), (-163, "1", "4"), (-43, "-1", "-2"), (-67, "3600", "3645")]


def test_8_classification_containment(capsys):
    entries = load_dataset()
    curves = [(e.id, e.curve()) for e in entries]
    curves += [(f"D={D} E({a},{b})", Curve(FieldTag(D)(a), FieldTag(D)(b))) for D, a, b in EXTRA_CORPUS]
    viol, rows = [], 0
    for name, E in curves:
        rep = scan(E)
        rows += len(rep.rows)
        viol += [f"{name}: {v}" for v in rep.violations + rep.errors]
    K = FieldTag(-7)
    c = growth_criterion(Curve(K(68121), K(69696)))
    wit_ok = c.holds and c.z in (15 * K.w, -15 * K.w) and c.sign * (c.alpha - c.beta) == c.z * c.z
    report(capsys, 8, not viol and wit_ok,
           f"{len(curves)} curves, {rows} scan rows, {len(viol)} violations; z = {c.z}" + ("; " + "; ".join(viol[:5]) if viol else ""))
