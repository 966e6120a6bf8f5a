"""The shipped dataset of table curves and search examples."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .ecurve.curve import Curve
from .errors import ParseError
from .qfield import FieldTag, QuadElem
from .twistlab import shape


@dataclass(frozen=True)
class DatasetRow:
    d: str
    twist: tuple
    ext: tuple


@dataclass(frozen=True)
class DatasetEntry:
    id: str
    D: int
    alpha: str
    beta: str
    G: tuple
    source: str
    rows: tuple = ()
    slow: bool = False
    caption: str = ""
    caption_G: tuple = ()
    dual_purpose: bool = False
    note: str = ""

    @property
    def field(self) -> FieldTag:
        return FieldTag(self.D)

    def curve(self) -> Curve:
        K = self.field
        return Curve(K(self.alpha), K(self.beta))

    def twist_param(self, row: DatasetRow) -> QuadElem:
        return self.field(row.d)


def _parse_shape(text, where):
    try:
        m, n = shape(text)
    except Exception as exc:
        raise ParseError(f"{where}: bad group {text!r} ({exc})") from None
    if n % m:
        raise ParseError(f"{where}: {m} does not divide {n}")
    return (m, n)


def _entry(rec) -> DatasetEntry:
    where = rec.get("id", "?")
    rows = tuple(DatasetRow(r["d"], _parse_shape(r["twist"], where), _parse_shape(r["ext"], where))
                 for r in rec.get("rows", []))
    cg = rec.get("caption_G")
    e = DatasetEntry(rec["id"], int(rec["D"]), rec["alpha"], rec["beta"],
                     _parse_shape(rec["G"], where), rec.get("source", "table"), rows,
                     bool(rec.get("slow", False)), rec.get("caption", ""),
                     _parse_shape(cg, where) if cg else (), bool(rec.get("dual_purpose", False)),
                     rec.get("note", ""))
    # every string must parse under the field grammar
    e.curve()
    for r in rows:
        e.twist_param(r)
    return e


def load_dataset(path=None) -> list:
    if path is None:
        text = resources.files("torsionlab").joinpath("data/dataset.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"dataset is not valid JSON: {exc.msg}", exc.pos) from None
    entries = [_entry(r) for r in doc["curves"]]
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate dataset ids")
    return entries


def round_trip(e: DatasetEntry) -> bool:
    """Printing the parsed coefficients and parsing again gives the same elements."""
    K = e.field
    vals = [K(e.alpha), K(e.beta)] + [K(r.d) for r in e.rows]
    return all(K(str(v)) == v for v in vals)
