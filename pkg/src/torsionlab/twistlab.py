"""Quadratic twists, the predicted twist and growth sets for curves with full
2-torsion over the seven fields of SUPPORTED_S, and scans over many d.

Predicted sets are literal tables keyed by (D, G); the only curve-dependent
choice (for G = Z/2 + Z/4) is isolated in growth_criterion.
"""
from __future__ import annotations

import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .ecurve.criteria import order_criteria
from .ecurve.curve import Curve, Point
from .ecurve.torsion import TorsionGroup, extension_data, group_elements, shape_str, torsion_subgroup
from .errors import NotInSet, TorsionLabError, UnsupportedField, UnsupportedGroup
from .qfield import SUPPORTED_S, QuadElem, QuadraticField, squarefree_part, sqrt_in_K
from .tower import TowerTag, contains_sqrt, normalize_twist

ALL_D = SUPPORTED_S
BIG_D = (-19, -43, -67, -163)


def shape(G):
    """(m, n) from a TorsionGroup, a pair, 'mxn' or 'Z/m ⊕ Z/n'."""
    if isinstance(G, TorsionGroup):
        return G.shape
    if isinstance(G, tuple):
        return tuple(G)
    if isinstance(G, str):
        m = re.fullmatch(r"\s*(\d+)\s*x\s*(\d+)\s*", G)
        if m:
            return int(m[1]), int(m[2])
        nums = [int(t) for t in re.findall(r"Z/(\d+)", G)]
        if len(nums) == 2:
            return tuple(nums)
        if len(nums) == 1:
            return (1, nums[0])
        if G.strip() == "0":
            return (1, 1)
    raise UnsupportedGroup(f"cannot read a group shape from {G!r}")


def _set(*labels):
    return frozenset(shape(t) for t in labels)


def _check_field(D: int):
    if D not in SUPPORTED_S:
        raise UnsupportedField(f"predictions are tabulated for D in {SUPPORTED_S}, not {D}")


def _check_group(G):
    G = shape(G)
    if G[0] != 2 or G[1] % 2 or not 1 <= G[1] // 2 <= 6:
        raise UnsupportedGroup(f"{shape_str(*G)} is not Z/2 + Z/2n with 1 <= n <= 6")
    return G


# twists of a curve with torsion G ------------------------------------------------

TWIST_TABLE = {
    (2, 12): {D: _set("2x2", "2x4") for D in ALL_D},
    (2, 10): {D: _set("2x2") for D in ALL_D},
    (2, 8): {D: _set("2x2", "2x4", "2x8") if D == -7 else _set("2x2") for D in ALL_D},
    (2, 6): {D: (_set("2x2") if D == -2 else
                 _set("2x2", "2x6") if D in (-7, -11) else
                 _set("2x2", "2x4", "2x6")) for D in ALL_D},
    (2, 4): {D: (_set("2x2", "2x4") if D in (-2, -11) else
                 _set("2x2", "2x4", "2x8") if D == -7 else
                 _set("2x2", "2x4", "2x6")) for D in ALL_D},
    (2, 2): {D: _set("2x2", "2x4", "2x6", "2x8", "2x10", "2x12") for D in ALL_D},
}

# groups for which the table above (and the growth table) is only an upper bound
UPPER_BOUND_ONLY = {(2, 2)}

GROWTH_TABLE = {
    (2, 12): {D: _set("2x12") for D in ALL_D},
    (2, 10): {D: _set("2x10") for D in ALL_D},
    (2, 8): {D: _set("2x8", "4x8", "2x16") if D == -7 else _set("2x8") for D in ALL_D},
    (2, 6): {D: _set("2x6", "2x12") if D == -2 else _set("2x6", "2x12", "6x6") for D in ALL_D},
    (2, 2): {D: _set("2x2", "2x4", "2x6", "2x8", "2x10", "2x12", "2x16", "4x4") for D in ALL_D},
}

# G = Z/2 + Z/4: with and without alpha - beta = +-z^2
GROWTH_2x4_CRITERION = {D: _set("4x4", "4x8") if D == -7 else _set("4x4") for D in ALL_D}
GROWTH_2x4_OTHERWISE = {D: _set("2x4", "2x8", "2x12") if D in BIG_D else _set("2x4", "2x8")
                        for D in ALL_D}


MAZUR_GROUPS = frozenset([(1, n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)]
                          + [(2, 2 * n) for n in (1, 2, 3, 4)])
EXTRA_GROUPS = {
    -2: _set("1x11", "2x10"),
    -7: _set("1x11", "1x14", "1x15"),
    -11: _set("1x14", "1x15", "2x10"),
    -19: _set("1x11", "2x10", "2x12"),
    -43: _set("1x11", "1x14", "1x15", "2x12"),
    -67: _set("1x14", "1x15", "2x12"),
    -163: _set("1x14", "1x15", "2x12"),
}


def allowed_torsion(D: int) -> frozenset:
    """Every group that occurs as E(K)_tors over K = Q(sqrt D) in SUPPORTED_S."""
    _check_field(D)
    return MAZUR_GROUPS | EXTRA_GROUPS[D]


def predicted_twist_groups(tag, G):
    """The set of twist torsion groups E^d(K)_tors possible when E(K)_tors = G."""
    D = tag.D if hasattr(tag, "D") else int(tag)
    _check_field(D)
    return set(TWIST_TABLE[_check_group(G)][D])


@dataclass(frozen=True)
class GrowthCriterion:
    holds: bool
    z: Optional[QuadElem] = None
    sign: int = 0
    alpha: Optional[QuadElem] = None
    beta: Optional[QuadElem] = None


def growth_criterion(E: Curve) -> GrowthCriterion:
    """alpha - beta = +-z^2, read on the model in which alpha, beta are squares."""
    pair = (E.alpha, E.beta)
    try:
        ok, wit = order_criteria(E, 4)
    except TorsionLabError:
        ok, wit = False, None
    if ok:
        pair = (wit["alpha"], wit["beta"])
    a, b = pair
    for sign in (1, -1):
        z = sqrt_in_K(sign * (a - b))
        if z is not None:
            return GrowthCriterion(True, z, sign, a, b)
    return GrowthCriterion(False, None, 0, a, b)


def is_minus_one_class(d, K: QuadraticField) -> bool:
    """d = -1 modulo squares of K, i.e. K(sqrt d) = K(i)."""
    return sqrt_in_K(-K(d)) is not None


def predicted_growth_groups(E: Curve, G=None, d=None):
    """Possible E(K(sqrt d))_tors other than G itself.

    For G = Z/2 + Z/4 the answer depends on the curve through growth_criterion;
    when the criterion holds and d is given but K(sqrt d) != K(i), the
    non-Z/4+Z/4 list applies (Z/4 + Z/4 needs i in L)."""
    K = E.field
    _check_field(K.D)
    if G is None:
        G = torsion_subgroup(E)
    G = _check_group(G)
    if G != (2, 4):
        return set(GROWTH_TABLE[G][K.D])
    crit = growth_criterion(E)
    if crit.holds and (d is None or is_minus_one_class(d, K)):
        return set(GROWTH_2x4_CRITERION[K.D])
    return set(GROWTH_2x4_OTHERWISE[K.D])


@dataclass(frozen=True)
class ClassificationTable:
    field: QuadraticField
    G: tuple
    predicted_twists: frozenset
    predicted_growth: frozenset
    growth_with_criterion: frozenset = frozenset()
    upper_bound: bool = False

    def to_json(self):
        show = lambda S: sorted(shape_str(*g) for g in S)
        out = {"D": self.field.D, "G": shape_str(*self.G), "twists": show(self.predicted_twists),
               "growth": show(self.predicted_growth), "upper_bound": self.upper_bound}
        if self.growth_with_criterion:
            out["growth_if_alpha_minus_beta_is_pm_square"] = show(self.growth_with_criterion)
        return out


def classification_table(tag, G) -> ClassificationTable:
    D = tag.D if hasattr(tag, "D") else int(tag)
    _check_field(D)
    G = _check_group(G)
    K = QuadraticField(D)
    if G == (2, 4):
        return ClassificationTable(K, G, TWIST_TABLE[G][D], GROWTH_2x4_OTHERWISE[D],
                                   GROWTH_2x4_CRITERION[D])
    return ClassificationTable(K, G, TWIST_TABLE[G][D], GROWTH_TABLE[G][D],
                               upper_bound=G in UPPER_BOUND_ONLY)


# twists and the injection E(L)/E(K) -> E^d(K) ------------------------------------

def twist_curve(E: Curve, d) -> Curve:
    """E^d : y^2 = x(x + d alpha)(x + d beta); raises NotInSet when d is a square."""
    K = E.field
    if K is None:
        from fractions import Fraction
        from .qfield import rational_sqrt
        if rational_sqrt(Fraction(d)) is not None:
            raise NotInSet(f"d = {d} is a square")
    elif sqrt_in_K(K(d)) is not None:
        raise NotInSet(f"d = {d} is a square in {K}")
    return E.twist(d)


@dataclass
class InjectionReport:
    ok: bool
    base: TorsionGroup
    twist: TorsionGroup
    ext: TorsionGroup
    image_size: int
    problems: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_injection(E: Curve, d) -> InjectionReport:
    """Check that P -> P - sigma(P) induces E(L)_tors / E(K)_tors -> E^d(K)_tors injectively.

    h(P) = (X, v*s) with X, v in K; on E^d it is (d X, d^2 v)."""
    X = extension_data(E, d)
    L, EL, Ed = X.tower, X.curve_L, X.twist_curve
    dd = L.d
    problems = []
    if X.ext.order % X.base.order:
        problems.append("|E(K)| does not divide |E(L)|")
    q = X.ext.order // X.base.order
    if X.twist.order % q:
        problems.append(f"|E(L)|/|E(K)| = {q} does not divide |E^d(K)| = {X.twist.order}")
    twist_pts = set(group_elements(X.twist, Ed))
    images = set()
    for P in group_elements(X.ext, EL):
        sP = P if P.is_infinity else Point(P.x.sigma(), P.y.sigma())
        h = EL.sub(P, sP)
        if h.is_infinity:
            img = h
        else:
            if h.x.v or h.y.u:
                problems.append(f"h({P}) is not of the form (K, K*s)")
                continue
            img = Point(dd * h.x.u, dd * dd * h.y.v)
        if img not in twist_pts:
            problems.append(f"h({P}) = {img} is not in E^d(K)_tors")
        images.add(img)
    if len(images) != q:
        problems.append(f"image has {len(images)} elements, expected {q}")
    return InjectionReport(not problems, X.base, X.twist, X.ext, len(images), problems)


# scans --------------------------------------------------------------------------

TABLE_TWISTS = (-1, -3, -5, -15, 21)


def _square_class_key(d: QuadElem):
    return (d.norm(), str(d))


def default_d_list(K: QuadraticField, rational_bound: int = 30, norm_bound: int = 50):
    """Square-free integers |d| <= 30, integral non-rational d of norm <= 50, and
    the twist parameters of the tables; one representative per square class."""
    cands = []
    for n in range(-rational_bound, rational_bound + 1):
        if n not in (0, 1) and squarefree_part(n) == n:
            cands.append(K(n))
    cands += [K(n) for n in TABLE_TWISTS]
    # a + b*omega with b != 0 and norm <= norm_bound
    gen = K.omega if K.D % 4 == 1 else K.w
    b = 1
    while b * b * abs(K.D) <= 4 * norm_bound:
        for sb in (b, -b):
            for a in range(-2 * norm_bound, 2 * norm_bound + 1):
                x = K(a) + K(sb) * gen
                if x.norm() <= norm_bound:
                    cands.append(x)
        b += 1
    return dedupe_mod_squares(cands, K)


def dedupe_mod_squares(ds, K: QuadraticField):
    reps = []
    for d in ds:
        d = K(d) if not isinstance(d, QuadElem) else d
        if not d or sqrt_in_K(d) is not None:
            continue
        d = normalize_twist(d, K)
        if any(sqrt_in_K(d * r) is not None for r in reps):
            continue
        reps.append(d)
    return sorted(reps, key=_square_class_key)


@dataclass
class ScanRow:
    d: QuadElem
    twist: Optional[TorsionGroup] = None
    ext: Optional[TorsionGroup] = None
    violations: list = field(default_factory=list)
    error: Optional[str] = None

    def to_json(self):
        return {"d": str(self.d), "twist": str(self.twist) if self.twist else None,
                "ext": str(self.ext) if self.ext else None,
                "violations": list(self.violations), "error": self.error}


@dataclass
class ScanReport:
    curve: str
    D: int
    base: TorsionGroup
    rows: list = field(default_factory=list)
    predicted: bool = True

    @property
    def violations(self):
        return [f"d={r.d}: {v}" for r in self.rows for v in r.violations]

    @property
    def errors(self):
        return [f"d={r.d}: {r.error}" for r in self.rows if r.error]

    def to_json(self):
        return {"curve": self.curve, "D": self.D, "base": str(self.base),
                "predicted": self.predicted, "rows": [r.to_json() for r in self.rows],
                "violations": self.violations}


def _odd(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def row_checks(E: Curve, G: TorsionGroup, d, twist: TorsionGroup, ext: TorsionGroup,
               L: TowerTag, predict: bool):
    out = []
    K = E.field
    if predict:
        T = predicted_twist_groups(K, G)
        if twist.shape not in T:
            out.append(f"twist group {twist} not in predicted twists")
        P = predicted_growth_groups(E, G, d)
        if ext.shape not in P | {G.shape}:
            out.append(f"extension group {ext} not in predicted growth")
    if K.D in SUPPORTED_S and twist.shape not in allowed_torsion(K.D):
        out.append(f"twist group {twist} is not a torsion group over K")
    if _odd(ext.order) != _odd(G.order) * _odd(twist.order):
        out.append("odd part of E(L) is not the product of the odd parts over K")
    if (G.order * twist.order) % ext.order or ext.order % G.order:
        out.append("|E(L)| / |E(K)| does not divide |E^d(K)|")
    if ext.m % 4 == 0 and not contains_sqrt(-1, L):
        out.append("Z/4 + Z/4 inside E(L) but -1 is not a square in L")
    if ext.m % 3 == 0 and not contains_sqrt(-3, L):
        out.append("Z/3 + Z/3 inside E(L) but -3 is not a square in L")
    if ext.m % 4 == 0 and K.D in SUPPORTED_S:
        if not growth_criterion(E).holds or not is_minus_one_class(d, K):
            out.append("Z/4 + Z/4 growth without alpha - beta = +-z^2 and L = K(i)")
    return out


def _scan_one(E, G, d, predict):
    row = ScanRow(d)
    try:
        X = extension_data(E, d)
        row.twist, row.ext = X.twist, X.ext
        row.violations = row_checks(E, G, X.tower.d, X.twist, X.ext, X.tower, predict)
    except TorsionLabError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TORSIONLAB_THREADS", "1")))
    except ValueError:
        return 1


def scan(E: Curve, d_list=None) -> ScanReport:
    """Twist and extension torsion for each d, checked against the predictions."""
    K = E.field
    G = torsion_subgroup(E)
    predict = K.D in SUPPORTED_S
    ds = default_d_list(K) if d_list is None else dedupe_mod_squares(d_list, K)
    n = _threads()
    if n > 1 and len(ds) > 1:
        with ThreadPoolExecutor(n) as pool:
            rows = list(pool.map(lambda d: _scan_one(E, G, d, predict), ds))
    else:
        rows = [_scan_one(E, G, d, predict) for d in ds]
    return ScanReport(str(E), K.D, G, rows, predict)


def bounded_d_list(K: QuadraticField, bound: int):
    """Square-free integers with |d| <= bound and integral a + b*omega (b != 0) of norm <= bound."""
    if bound <= 0:
        return []
    cands = [K(n) for n in range(-bound, bound + 1) if n not in (0, 1) and squarefree_part(n) == n]
    gen = K.omega if K.D % 4 == 1 else K.w
    b = 1
    while b * b * abs(K.D) <= 4 * bound:
        for sb in (b, -b):
            for a in range(-2 * bound, 2 * bound + 1):
                x = K(a) + K(sb) * gen
                if x.norm() <= bound:
                    cands.append(x)
        b += 1
    return dedupe_mod_squares(cands, K)
