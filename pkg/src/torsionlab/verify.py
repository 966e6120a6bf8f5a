"""The verification harness: every reproducible claim as a named check.

A check is (table, name, thunk, slow).  The thunk returns (ok, detail) or
raises; exceptions from the engine are recorded as failures with the stage
named.  Results come back in registration order whatever the worker count.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import TorsionLabError

TABLES = ("growth", "classify", "aux", "phi-table", "jacobians", "modcurve", "galois")


@dataclass
class Check:
    table: str
    name: str
    run: Callable
    slow: bool = False


@dataclass
class CheckResult:
    table: str
    name: str
    status: str                    # pass, fail, skip
    detail: str = ""
    reason: Optional[str] = None   # skip reason
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"table": self.table, "check": self.name, "status": self.status, "detail": self.detail}
        if self.reason:
            out["reason"] = self.reason
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    results: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def ok(self) -> bool:
        return self.count("fail") == 0

    def summary(self) -> dict:
        return {"pass": self.count("pass"), "fail": self.count("fail"), "skip": self.count("skip")}


# growth tables -------------------------------------------------------------------

def _growth_checks(entries):
    from .ecurve.torsion import extension_data, torsion_subgroup
    from .ecurve.torsion import shape_str
    from .twistlab import check_injection
    out = []
    for e in entries:
        def base(e=e):
            G = torsion_subgroup(e.curve())
            return G.shape == e.G, f"E(K) = {G}, expected {shape_str(*e.G)}"
        out.append(Check("growth", f"{e.id}/base", base, e.slow))
        for r in e.rows:
            def row(e=e, r=r):
                X = extension_data(e.curve(), e.twist_param(r))
                ok = X.twist.shape == r.twist and X.ext.shape == r.ext
                return ok, (f"E^d(K) = {X.twist}, E(K(sqrt d)) = {X.ext}; "
                            f"expected {shape_str(*r.twist)}, {shape_str(*r.ext)}")

            def inj(e=e, r=r):
                rep = check_injection(e.curve(), e.twist_param(r))
                return rep.ok, f"image of size {rep.image_size}" + (
                    "; " + "; ".join(rep.problems[:3]) if rep.problems else "")
            out.append(Check("growth", f"{e.id}/d={r.d}", row, e.slow))
            out.append(Check("growth", f"{e.id}/d={r.d}/injection", inj, e.slow))
    return out


def _classify_checks(entries):
    from .ecurve.torsion import shape_str
    from .twistlab import growth_criterion, predicted_growth_groups
    out = []
    for e in entries:
        if e.G != (2, 4) or e.source != "table":
            continue

        def crit(e=e):
            E = e.curve()
            c = growth_criterion(E)
            K = e.field
            want = {(4, 4), (4, 8)}
            P = predicted_growth_groups(E, e.G)
            ok = c.holds and c.z is not None and c.sign * (c.alpha - c.beta) == c.z * c.z
            if K.D == -7 and e.alpha == "68121":
                ok = ok and c.z in (15 * K.w, -15 * K.w) and want <= P
            return ok, f"criterion {c.holds}, z = {c.z}, predicted {sorted(shape_str(*g) for g in P)}"
        out.append(Check("classify", f"{e.id}/criterion", crit))
    return out


# auxiliary curves ----------------------------------------------------------------

def _aux_checks():
    from .auxlab.aux import aux_curve, short_to_ec, solution_from_curves, lem3_solution_check
    from .auxlab.maps import PHI_INVERSE_TABLE
    from .ecurve.curve import INFINITY, Point
    from .ecurve.torsion import group_elements, torsion_subgroup
    from .qfield import SUPPORTED_S, FieldTag
    out = []
    for D in SUPPORTED_S:
        def e0(D=D):
            K = FieldTag(D)
            A = aux_curve("E0")
            E = A.over(K)
            G = torsion_subgroup(E)
            pts = set(group_elements(G, E))
            listed = set(A.points_over(K))
            if D in (-2, -7, -11, -163):
                ok = G.shape == (2, 4) and pts - {INFINITY} == listed
            else:
                ok = G.m % 2 == 0 and G.n % 4 == 0 and listed <= pts
            return ok, f"E0(K) = {G}, {len(pts)} points"
        out.append(Check("aux", f"E0/D={D}", e0))
        if D == -7:
            continue
        for name, want in (("E1", (1, 4)), ("E2", (2, 2))):
            def ek(D=D, name=name, want=want):
                G = torsion_subgroup(aux_curve(name).over(FieldTag(D)))
                return G.shape == want, f"{name}(K) = {G}"
            out.append(Check("aux", f"{name}/D={D}", ek))

    def ec3():
        K = FieldTag(-3)
        E = aux_curve("EC").over(K)
        G = torsion_subgroup(E)
        pts = {short_to_ec(P) for P in group_elements(G, E)}
        table = set()
        for row in PHI_INVERSE_TABLE:
            if row["D"] != -3:
                continue
            x, y, z = (K(c) for c in row["P"])
            table.add(INFINITY if z == 0 else Point(x / z, y / z))
        return G.shape == (2, 6) and pts == table, f"E_C(Q(sqrt -3)) = {G}; table lists {len(table)} points"
    out.append(Check("aux", "EC/D=-3/table-points", ec3))

    def lem3():
        from .ecurve.curve import Curve
        K = FieldTag(-7)
        E = Curve(K("(21*w - 39)/2"), K("(-21*w - 39)/2"))
        sol = solution_from_curves(E, K(-3))
        return sol is not None and lem3_solution_check(*sol), \
            "solution " + ("none" if sol is None else ", ".join(str(s) for s in sol))
    out.append(Check("aux", "order-3-system/D=-7/d=-3", lem3))
    return out


# the map phi and its table ---------------------------------------------------------

def _phi_checks():
    from .auxlab import maps
    out = []
    ident = {}

    def _id():
        if not ident:
            ident["r"] = maps.identity_check()
        return ident["r"]

    out.append(Check("phi-table", "identity/cleared-equals-(y-x)*C",
                     lambda: (_id().true_identity and _id().sign == -1, f"sign {_id().sign}")))
    out.append(Check("phi-table", "identity/printed-expansion",
                     lambda: (_id().printed_expansion_matches,
                              f"true minus printed = {_id().difference_from_printed}")))
    out.append(Check("phi-table", "identity/printed-factor-(x-y)",
                     lambda: (_id().printed_factorization_matches, "printed expansion is not (x - y) * C")))
    out.append(Check("phi-table", "phi/first-coordinate-as-printed",
                     lambda: (_id().printed_phi1_same_polynomial,
                              "printed first coordinate repeats the x^2 z^2 term; with it the D=-7 point "
                              + ("lands" if maps.printed_phi_lands_on_EC() else "does not land") + " on E_C")))

    def locus(which, stated):
        def run():
            M = maps.phi() if which == "phi" else maps.psi()
            got = [tuple(str(c) for c in P) for P in maps.base_locus(M)]
            want = sorted({tuple(str(c) for c in maps.normalize(P)) for P in stated})
            got_n = sorted({tuple(str(c) for c in maps.normalize(P)) for P in maps.base_locus(M)})
            return got_n == want, f"computed {got}"
        return run
    out.append(Check("phi-table", "non-regular/phi", locus("phi", maps.PHI_NONREGULAR_STATED)))
    out.append(Check("phi-table", "non-regular/psi", locus("psi", maps.PSI_NONREGULAR_STATED)))

    for i, row in enumerate(maps.PHI_INVERSE_TABLE):
        def one(i=i, row=row):
            r = maps.check_row(i, row)
            return r.ok, f"D={r.D} P={r.P} status={r.status} excluded={r.excluded}" + (
                "; " + "; ".join(r.notes) if r.notes else "")
        out.append(Check("phi-table", f"row-{i + 1}", one))
        if row.get("corrected_Q"):
            def fixed(i=i, row=row):
                r = maps.check_row(i, row, use_correction=True)
                return r.ok, f"with Q = {r.Q}" + ("; " + "; ".join(r.notes) if r.notes else "")
            out.append(Check("phi-table", f"row-{i + 1}/corrected-preimage", fixed))

    def empty():
        rep = maps.verify_phi_inverse_table()
        return rep.empty_row_verified, f"{len(maps.empty_row_preimages())} solutions, all base points of phi"
    out.append(Check("phi-table", "empty-row", empty))
    return out


# Jacobians -------------------------------------------------------------------------

STATED_STRUCTURES = {3: [2, 10], 5: [2, 2, 10], 9: [2, 2, 2, 10], 25: [2, 2, 4, 40]}


def residue_sizes(D: int, primes=(3, 5)):
    from .qfield import QuadraticField, splitting_type
    K = QuadraticField(D)
    return [p if splitting_type(p, K).kind != "inert" else p * p for p in primes]


def _jacobian_checks():
    from .auxlab import jacobian as J
    out = []
    cache = {}

    def count(q):
        if q not in cache:
            cache[q] = J.enumerate_jacobian(J.F_CPP, q)
        return cache[q]

    for q in (3, 5, 9, 25):
        def enum(q=q):
            c = count(q)
            ok = c.structure == STATED_STRUCTURES[q] and c.order == c.zeta_order
            return ok, f"#J = {c.order} (zeta {c.zeta_order}), structure {c.structure}"
        out.append(Check("jacobians", f"q={q}/enumeration", enum, slow=(q == 25)))

    out.append(Check("jacobians", "q=25/zeta-order",
                     lambda: (J.zeta_order(J.F_CPP, 25) == 640, f"#J = {J.zeta_order(J.F_CPP, 25)}")))

    for D in (-11, -2, -19):
        def bound(D=D):
            qs = residue_sizes(D)
            data = []
            for q in qs:
                p = q if q in (3, 5) else int(q ** 0.5)
                st = count(q).structure if q != 25 else [J.zeta_order(J.F_CPP, 25)]
                data.append((p, st))
            plain = J.torsion_gcd_bound(data)
            r = J.two_rank_over(J.F_CPP, D)
            capped = J.torsion_gcd_bound(data, r)
            return capped == 20, f"fields of size {qs}: gcd bound {plain}, with 2-rank {r}: {capped}"
        out.append(Check("jacobians", f"torsion-bound/D={D}", bound))
    return out


# modular curves ---------------------------------------------------------------------

def _modcurve_checks():
    from . import modcurve as M
    out = [
        Check("modcurve", "X0(30)/g^2+4h=f", lambda: (M.long_form_consistent(M.MODELS[30]), "")),
        Check("modcurve", "X0(40)/real-roots", lambda: (M.sturm_real_roots(M.F40) == 0,
                                                       f"{M.sturm_real_roots(M.F40)} real roots")),
        Check("modcurve", "X0(48)/real-roots", lambda: (M.sturm_real_roots(M.F48) == 0,
                                                       f"{M.sturm_real_roots(M.F48)} real roots")),
        Check("modcurve", "X0(40)/positive", lambda: (M.positive_on_reals(M.F40), "")),
        Check("modcurve", "X0(48)/positive", lambda: (M.positive_on_reals(M.F48), "")),
    ]
    for N in (30, 40, 48):
        def audit(N=N):
            rep = M.quad_point_audit(N)
            ok = rep.ok
            if N in (40, 48):
                ok = ok and rep.fields == [-1]
            if N == 48:
                ok = ok and all(r.record.annotation == "cuspidal" for r in rep.results)
            return ok, f"{len(rep.results)} records, fields {rep.fields}"
        out.append(Check("modcurve", f"X0({N})/points", audit))
    return out


def _galois_checks():
    from math import gcd
    from .ecurve.criteria import galois_square_units

    def mod20():
        got = galois_square_units(20)
        brute = {a for a in range(20) if gcd(a, 20) == 1 and a * a % 20 == 1}
        return got == brute == {1, 9, 11, 19}, \
            f"computed {sorted(got)}; 7 is not in it since 7^2 = 9 mod 20"
    return [Check("galois", "mod-20/square-roots-of-1", mod20)]


# running ---------------------------------------------------------------------------

def collect(tables=None, dataset_path=None):
    from .dataset import load_dataset
    tables = TABLES if not tables else tables
    for t in tables:
        if t not in TABLES:
            raise ValueError(f"unknown table {t!r}; choose from {', '.join(TABLES)}")
    checks = []
    entries = None
    if "growth" in tables or "classify" in tables:
        entries = load_dataset(dataset_path)
    if "growth" in tables:
        checks += _growth_checks(entries)
    if "classify" in tables:
        checks += _classify_checks(entries)
    if "aux" in tables:
        checks += _aux_checks()
    if "phi-table" in tables:
        checks += _phi_checks()
    if "jacobians" in tables:
        checks += _jacobian_checks()
    if "modcurve" in tables:
        checks += _modcurve_checks()
    if "galois" in tables:
        checks += _galois_checks()
    return checks


def run_check(c: Check, slow: bool) -> CheckResult:
    if c.slow and not slow:
        return CheckResult(c.table, c.name, "skip", reason="slow")
    t0 = time.perf_counter()
    try:
        ok, detail = c.run()
        status = "pass" if ok else "fail"
    except TorsionLabError as exc:
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return CheckResult(c.table, c.name, status, detail, seconds=time.perf_counter() - t0)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TORSIONLAB_THREADS", "1")))
    except ValueError:
        return 1


def verify(tables=None, slow: bool = False, dataset_path=None) -> Report:
    checks = collect(tables, dataset_path)
    n = _threads()
    if n > 1:
        with ThreadPoolExecutor(n) as pool:
            results = list(pool.map(lambda c: run_check(c, slow), checks))
    else:
        results = [run_check(c, slow) for c in checks]
    return Report(results, {"tables": list(tables or TABLES), "slow": slow})
