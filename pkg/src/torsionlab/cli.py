"""Command line: torsion, classify, scan and verify-paper.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 engine error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import NotInSet, ParseError, SingularCurve, TorsionLabError, UnsupportedField

EXIT_FAIL, EXIT_INPUT, EXIT_ENGINE = 1, 2, 3
INPUT_ERRORS = (ParseError, UnsupportedField, SingularCurve, NotInSet)


class StageError(Exception):
    def __init__(self, stage, exc):
        self.stage, self.exc = stage, exc
        super().__init__(f"{stage}: {type(exc).__name__}: {exc}")


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except TorsionLabError as exc:
        raise StageError(name, exc) from exc


def _field(D):
    from .qfield import FieldTag
    return FieldTag(D)


def _curve(K, text):
    from .ecurve.curve import Curve
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError("a curve is written 'alpha;beta'", text=text)
    return Curve(K(parts[0].strip()), K(parts[1].strip()))


def _twist_param(K, text):
    from .qfield import sqrt_in_K
    d = K(text)
    if not d or sqrt_in_K(d) is not None:
        raise NotInSet(f"d = {text} is a square in {K}")
    return d


def _setup(args, need_d=False):
    K = _stage("field", _field, args.field)
    E = _stage("parse", _curve, K, args.curve)
    d = None
    if getattr(args, "twist_param", None) is not None:
        d = _stage("parse", _twist_param, K, args.twist_param)
    return K, E, d


def _emit(args, rec, text):
    if args.format == "json-lines":
        print(json.dumps(rec, sort_keys=True))
    else:
        print(text)


def _gens(G):
    return ", ".join(str(P) for P in G.generators) or "none"


def cmd_torsion(args) -> int:
    from .ecurve.torsion import extension_data, torsion_subgroup
    K, E, d = _setup(args)
    G = _stage("torsion", torsion_subgroup, E)
    _emit(args, {"kind": "torsion", "which": "base", "D": K.D, "curve": str(E), **G.to_json()},
          f"E(K)_tors = {G}  generators: {_gens(G)}")
    if d is None:
        if args.ext or args.twist:
            raise StageError("parse", ParseError("--ext and --twist need -d"))
        return 0
    X = _stage("extension", extension_data, E, d)
    show_twist = args.twist or not args.ext
    show_ext = args.ext or not args.twist
    if show_twist:
        _emit(args, {"kind": "torsion", "which": "twist", "d": str(d), **X.twist.to_json()},
              f"E^d(K)_tors = {X.twist}  (d = {d})  generators: {_gens(X.twist)}")
    if show_ext:
        _emit(args, {"kind": "torsion", "which": "ext", "d": str(d), **X.ext.to_json()},
              f"E(K(sqrt d))_tors = {X.ext}  (d = {d})  generators: {_gens(X.ext)}")
    return 0


def cmd_classify(args) -> int:
    from .ecurve.torsion import shape_str, torsion_subgroup
    from .twistlab import classification_table, growth_criterion, predicted_growth_groups
    K, E, _ = _setup(args)
    if K.D not in (-2, -7, -11, -19, -43, -67, -163):
        raise StageError("classify", UnsupportedField(f"no classification for D = {K.D}"))
    G = _stage("torsion", torsion_subgroup, E)
    T = _stage("classify", classification_table, K, G)
    show = lambda S: sorted(shape_str(*g) for g in S)
    rec = {"kind": "classify", "D": K.D, "curve": str(E), "G": str(G), **{
        k: v for k, v in T.to_json().items() if k not in ("D", "G")}}
    lines = [f"G = {G}", f"twists:  {', '.join(show(T.predicted_twists))}"]
    if G.shape == (2, 4):
        c = growth_criterion(E)
        growth = predicted_growth_groups(E, G)
        rec["criterion"] = {"holds": c.holds, "z": str(c.z) if c.z is not None else None,
                            "sign": c.sign}
        rec["growth"] = show(growth)
        lines.append(f"alpha - beta = +-z^2: {c.holds}" + (f"  (z = {c.z}, sign {c.sign:+d})" if c.holds else ""))
        lines.append(f"growth:  {', '.join(show(growth))}")
    else:
        lines.append(f"growth:  {', '.join(show(T.predicted_growth))}"
                     + ("  (upper bound)" if T.upper_bound else ""))
    _emit(args, rec, "\n".join(lines))
    return 0


def cmd_scan(args) -> int:
    from .twistlab import bounded_d_list, default_d_list, scan
    K, E, _ = _setup(args)
    ds = default_d_list(K) if args.bound is None else bounded_d_list(K, args.bound)
    rep = _stage("scan", scan, E, ds)
    if args.format == "json-lines":
        for r in rep.rows:
            print(json.dumps({"kind": "scan-row", **r.to_json()}, sort_keys=True))
        print(json.dumps({"kind": "scan-summary", "curve": rep.curve, "D": rep.D,
                          "base": str(rep.base), "rows": len(rep.rows),
                          "violations": rep.violations, "errors": rep.errors}, sort_keys=True))
    else:
        print(f"{rep.curve} over Q(sqrt {rep.D}), E(K)_tors = {rep.base}, {len(rep.rows)} values of d")
        for r in rep.rows:
            flag = "!!" if r.violations or r.error else "  "
            tail = r.error or "; ".join(r.violations)
            print(f"{flag} d = {str(r.d):<14} twist {str(r.twist):<14} ext {str(r.ext):<14} {tail}")
        print(f"{len(rep.violations)} violations, {len(rep.errors)} errors")
    if rep.errors:
        return EXIT_ENGINE
    return EXIT_FAIL if rep.violations else 0


def cmd_verify(args) -> int:
    from .verify import verify
    tables = None
    if args.table:
        tables = [t for arg in args.table for t in arg.split(",") if t]
    try:
        rep = verify(tables, slow=args.slow, dataset_path=args.dataset)
    except ValueError as exc:
        raise StageError("parse", ParseError(str(exc))) from exc
    if args.format == "json-lines":
        for r in rep.results:
            print(json.dumps({"kind": "check", **r.to_json(args.timings)}, sort_keys=True))
        print(json.dumps({"kind": "summary", **rep.summary()}, sort_keys=True))
    else:
        for r in rep.results:
            status = r.status.upper() if r.status != "skip" else f"SKIP({r.reason})"
            t = f"  [{r.seconds:.2f}s]" if args.timings else ""
            print(f"{status:<10} {r.table:<10} {r.name:<40} {r.detail}{t}")
        s = rep.summary()
        print(f"{s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
    return 0 if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torsionlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, curve=True):
        sp.add_argument("--format", choices=("text", "json-lines"), default="text")
        if curve:
            sp.add_argument("-D", "--field", type=int, required=True, help="K = Q(sqrt D)")
            sp.add_argument("-c", "--curve", required=True, help="'alpha;beta' for y^2 = x(x+alpha)(x+beta)")

    t = sub.add_parser("torsion", help="E(K)_tors, and with -d the twist and the extension")
    common(t)
    t.add_argument("-d", "--twist-param", dest="twist_param")
    t.add_argument("--ext", action="store_true", help="print E(K(sqrt d))_tors")
    t.add_argument("--twist", action="store_true", help="print E^d(K)_tors")
    t.set_defaults(func=cmd_torsion)

    c = sub.add_parser("classify", help="predicted twist and growth groups")
    common(c)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("scan", help="twist and extension torsion over many d")
    common(s)
    s.add_argument("--bound", type=int, default=None,
                   help="|d| and norm bound (default: the built-in list)")
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify-paper", help="run every reproducibility check")
    common(v, curve=False)
    v.add_argument("--table", action="append", help="growth, classify, aux, phi-table, jacobians, modcurve, galois")
    v.add_argument("--slow", action="store_true", help="include the slow rows")
    v.add_argument("--dataset", default=None, help="dataset file instead of the shipped one")
    v.add_argument("--timings", action="store_true", help="include per-check timings")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT if isinstance(err.exc, INPUT_ERRORS) else EXIT_ENGINE
    except TorsionLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT if isinstance(exc, INPUT_ERRORS) else EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
