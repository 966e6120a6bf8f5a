import json

import pytest

from torsionlab.dataset import load_dataset, round_trip
from torsionlab.ecurve import torsion_subgroup
from torsionlab.errors import ParseError


def test_loads_and_round_trips():
    es = load_dataset()
    assert len(es) == 22
    assert all(round_trip(e) for e in es)
    assert all(e.G[1] % e.G[0] == 0 for e in es)
    assert len({e.id for e in es}) == len(es)


@pytest.mark.parametrize("e", [e for e in load_dataset() if not e.slow], ids=lambda e: e.id)
def test_base_group(e):
    assert torsion_subgroup(e.curve()).shape == e.G


def _write(tmp_path, doc):
    p = tmp_path / "ds.json"
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def test_rejects_bad_files(tmp_path):
    with pytest.raises(ParseError):
        load_dataset(_write(tmp_path, "{not json"))
    base = {"id": "x", "D": -7, "alpha": "1", "beta": "2", "G": "2x2"}
    with pytest.raises(ParseError):
        load_dataset(_write(tmp_path, {"curves": [base, base]}))
    with pytest.raises(ParseError):
        load_dataset(_write(tmp_path, {"curves": [dict(base, G="3x4")]}))
    with pytest.raises(ParseError):
        load_dataset(_write(tmp_path, {"curves": [dict(base, alpha="1 +* w")]}))
    assert load_dataset(_write(tmp_path, {"curves": [base]}))[0].G == (2, 2)
