import json

import pytest

from echelons import gabrielov as gb
from echelons.division import echelon_divide
from echelons.io import (
    SchemaError,
    division_doc,
    division_from_doc,
    dumps,
    echelon_doc,
    echelon_from_doc,
    load_echelon,
    series_doc,
)


def test_echelon_round_trip():
    p = gb.gabrielov_echelon(8)
    doc = echelon_doc(p)
    q = echelon_from_doc(json.loads(dumps(doc)))
    assert q == p and q.names == p.names
    assert dumps(echelon_doc(q)) == dumps(doc)


def test_generator_by_path_and_prec_cap(tmp_path):
    g2 = gb.g_closed(2, 10)
    (tmp_path / "g2.json").write_text(dumps(series_doc(g2, gb.NAMES)))
    doc = echelon_doc(gb.gabrielov_echelon(10))
    doc["generators"].append({"series": {"path": "g2.json"}, "scope": 2})
    doc["prec"] = 8
    (tmp_path / "e.json").write_text(dumps(doc))
    p = load_echelon(tmp_path / "e.json")
    assert len(p.generators) == 4 and p.prec == 8
    assert p.generators[3].series == g2.truncate(8)


def test_division_round_trip():
    p = gb.gabrielov_echelon(8)
    res = echelon_divide(gb.s_combination_with_h(gb.GabrielovContext(8).g), p, scope=2)
    doc = division_doc(res, p.names)
    assert doc["min_witness"] == [1, 1, 2] and doc["remainder_scope"] == 2
    assert division_from_doc(json.loads(dumps(doc))) == res


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d["generators"][0].update(scope="2"), "generators/0/scope"),
        (lambda d: d["generators"][1]["series"]["terms"][0].update(c="0.5"), "generators/1/series"),
        (lambda d: d["order"].update(kind="revlex"), "order/kind"),
        (lambda d: d.update(extra=1), "<root>"),
    ],
)
def test_schema_errors_name_the_path(mutate, where):
    doc = json.loads(dumps(echelon_doc(gb.gabrielov_echelon(4))))
    mutate(doc)
    with pytest.raises(SchemaError, match=where):
        echelon_from_doc(doc)


def test_semantic_errors():
    doc = json.loads(dumps(echelon_doc(gb.gabrielov_echelon(4))))
    doc["generators"][0]["scope"] = 4
    with pytest.raises(SchemaError, match="scope"):
        echelon_from_doc(doc)
    doc = json.loads(dumps(echelon_doc(gb.gabrielov_echelon(4))))
    doc["generators"][0]["series"]["terms"][0]["e"] = [0, 0]
    with pytest.raises(SchemaError, match="terms/0/e"):
        echelon_from_doc(doc)
