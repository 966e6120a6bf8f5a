"""Hyperelliptic models of X0(30), X0(40), X0(48), exact real-root counting,
and an audit of the shipped quadratic points."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from . import poly
from .errors import PointNotOnModel, RecordMismatch, UnsupportedField, ZeroPolynomial
from .qfield import QuadElem, QuadraticField

# lowest degree first
G30 = (0, 0, -1, -1, -1)
H30 = (4, 28, 79, 121, 110, 60, 19, 3)
F30 = (16, 112, 316, 484, 441, 242, 79, 14, 1)
F40 = (1, 0, 8, 0, -2, 0, 8, 0, 1)
F48 = (1, 0, 0, 0, 14, 0, 0, 0, 1)


@dataclass(frozen=True)
class HyperModel:
    N: int
    f: tuple                       # y^2 = f(x)
    g: Optional[tuple] = None      # long form y^2 + g(x) y = h(x)
    h: Optional[tuple] = None
    cusps: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.g is not None and not long_form_consistent(self):
            raise ValueError(f"g^2 + 4h != f for N = {self.N}")

    @property
    def has_long(self) -> bool:
        return self.g is not None


def long_form_consistent(M: HyperModel) -> bool:
    g, h = list(M.g), list(M.h)
    return poly.trim(poly.sub(poly.add(poly.mul(g, g), poly.scale(h, 4)), list(M.f))) == []


MODELS = {
    30: HyperModel(30, F30, G30, H30, {"inf+": (1, 1, 0), "inf-": (1, 0, 0)}),
    40: HyperModel(40, F40),
    48: HyperModel(48, F48),
}


def model(N: int) -> HyperModel:
    try:
        return MODELS[N]
    except KeyError:
        raise ValueError(f"no model for N = {N}") from None


def _check_coords(P):
    for c in P:
        if not isinstance(c, (int, Fraction, QuadElem)):
            raise UnsupportedField(f"unsupported coordinate {c!r}")


def model_eval(N: int, P, form: str = "auto"):
    """Residual rhs - lhs of the defining equation at P = (x, y); zero means on the curve.

    form is 'long', 'short' or 'auto' (long when the model has one)."""
    _check_coords(P)
    M = model(N)
    x, y = P
    if form == "auto":
        form = "long" if M.has_long else "short"
    if form == "long":
        if not M.has_long:
            raise ValueError(f"X0({N}) has no long model here")
        return poly.evaluate(list(M.h), x) - y * y - poly.evaluate(list(M.g), x) * y
    if form == "short":
        return poly.evaluate(list(M.f), x) - y * y
    raise ValueError(f"unknown form {form!r}")


def long_to_short(P, N: int = 30):
    """(x, y) on y^2 + g y = h to (x, 2y + g(x)) on y^2 = f."""
    M = model(N)
    if not M.has_long:
        raise ValueError(f"X0({N}) has no long model here")
    if model_eval(N, P, "long") != 0:
        raise PointNotOnModel(f"{P} is not on the long model of X0({N})")
    x, y = P
    return x, 2 * y + poly.evaluate(list(M.g), x)


# real roots

def _sign_at_inf(f, neg: bool) -> int:
    lead = f[-1]
    s = 1 if lead > 0 else -1
    if neg and (len(f) - 1) % 2:
        s = -s
    return s


def sturm_chain(f):
    f = [Fraction(c) for c in poly.trim(f)]
    chain = [f, poly.derivative(f)]
    while poly.trim(chain[-1]):
        r = poly.rem(chain[-2], chain[-1])
        if not poly.trim(r):
            break
        chain.append(poly.neg(r))
    return [poly.trim(c) for c in chain if poly.trim(c)]


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_roots(f) -> int:
    """Number of distinct real roots of f, from Sturm sign variations at -inf and +inf."""
    f = poly.trim([Fraction(c) for c in f])
    if not f:
        raise ZeroPolynomial("the zero polynomial has no finite root count")
    f = poly.squarefree_part(f)
    if len(f) == 1:
        return 0
    chain = sturm_chain(f)
    lo = _variations([_sign_at_inf(c, True) for c in chain])
    hi = _variations([_sign_at_inf(c, False) for c in chain])
    return lo - hi


def positive_on_reals(f, samples=(0, 1, -1)) -> bool:
    """No real roots, positive leading coefficient, and a positive sample value."""
    f = poly.trim([Fraction(c) for c in f])
    return (sturm_real_roots(f) == 0 and f[-1] > 0
            and all(poly.evaluate(f, Fraction(s)) > 0 for s in samples))


# shipped quadratic points

@dataclass(frozen=True)
class QuadPointRecord:
    N: int
    D: int
    x: str
    y: str
    model: str
    source: str
    annotation: str = ""

    def point(self):
        K = QuadraticField(self.D)
        return K(self.x), K(self.y)


@dataclass
class RecordResult:
    record: QuadPointRecord
    long_residual: Optional[str]
    short_residual: str
    satisfies: tuple
    generates_field: bool

    @property
    def ok(self) -> bool:
        return self.record.model in self.satisfies and self.generates_field


@dataclass
class AuditReport:
    N: int
    results: list
    notes: list

    @property
    def ok(self) -> bool:
        return bool(self.results) and all(r.ok for r in self.results)

    @property
    def fields(self):
        return sorted({r.record.D for r in self.results})

    def to_json(self) -> dict:
        return {
            "N": self.N, "ok": self.ok, "fields": self.fields,
            "records": [{"x": r.record.x, "y": r.record.y, "D": r.record.D,
                         "model": r.record.model, "satisfies": list(r.satisfies),
                         "generates_field": r.generates_field, "ok": r.ok,
                         "annotation": r.record.annotation, "source": r.record.source}
                        for r in self.results],
            "notes": self.notes,
        }


def load_points(path=None):
    if path is None:
        text = resources.files("torsionlab").joinpath("data/modcurve_points.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    doc = json.loads(text)
    recs = [QuadPointRecord(r["N"], r["D"], r["x"], r["y"], r["model"], r["source"],
                            r.get("annotation", "")) for r in doc["points"]]
    return recs, doc.get("notes", [])


def check_record(rec: QuadPointRecord) -> RecordResult:
    x, y = rec.point()
    M = model(rec.N)
    long_res = model_eval(rec.N, (x, y), "long") if M.has_long else None
    short_res = model_eval(rec.N, (x, y), "short")
    sat = []
    if long_res is not None and long_res == 0:
        sat.append("long")
    if short_res == 0:
        sat.append("short")
    # the point is quadratic: some coordinate is irrational
    gen = not (x.is_rational() and y.is_rational())
    return RecordResult(rec, None if long_res is None else str(long_res), str(short_res),
                        tuple(sat), gen)


def quad_point_audit(N: int, path=None) -> AuditReport:
    recs, notes = load_points(path)
    results = [check_record(r) for r in recs if r.N == N]
    return AuditReport(N, results, [n for n in notes if f"X0({N})" in n or (N == 30 and "J0" in n)])


def require_audit(N: int, path=None) -> AuditReport:
    rep = quad_point_audit(N, path)
    bad = [r for r in rep.results if not r.ok]
    if bad or not rep.results:
        raise RecordMismatch(f"X0({N}): {len(bad)} of {len(rep.results)} records fail")
    return rep


@dataclass
class ModcurveReport:
    identity: bool
    real_roots: dict
    positive: dict
    audits: dict

    @property
    def ok(self) -> bool:
        return (self.identity and all(v == 0 for v in self.real_roots.values())
                and all(self.positive.values()) and all(a.ok for a in self.audits.values()))


def modcurve_checks(path=None) -> ModcurveReport:
    return ModcurveReport(
        long_form_consistent(MODELS[30]),
        {40: sturm_real_roots(F40), 48: sturm_real_roots(F48)},
        {40: positive_on_reals(F40), 48: positive_on_reals(F48)},
        {N: quad_point_audit(N, path) for N in (30, 40, 48)},
    )
