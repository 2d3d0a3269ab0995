import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthocell.crystal import torus_group
from orthocell.io import (
    MalformedDocument,
    complex_from_document,
    document_from_complex,
    document_from_quotient,
    format_rational,
    from_json,
    parse_rational,
    to_json,
    to_off,
)
from orthocell.lattes import build_quotient_complexes
from orthocell.symmetric import build_K, build_K_subdivided, cube_structure


@given(st.fractions(max_denominator=10 ** 6))
def test_rational_strings_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_rational_strings_are_strict():
    assert format_rational(Fraction(3)) == "3/1"
    for bad in ("2/4", "1/0", "0.5", "1", 1, "1/-2"):
        with pytest.raises(MalformedDocument):
            parse_rational(bad)


@pytest.mark.parametrize("D", [build_K(1), build_K(2), cube_structure(3), build_K_subdivided(2, 2)])
def test_json_round_trip(D):
    text = to_json(document_from_complex(D, {"note": "x"}))
    back = complex_from_document(from_json(text))
    assert back == D
    assert set(back.space_pieces()) == set(D.space_pieces())
    assert to_json(document_from_complex(back, {"note": "x"})) == text


def test_incidence_lists_facets():
    doc = document_from_complex(build_K(1))
    by_id = {c["id"]: c for c in doc.cells}
    assert len(doc.incidence) == 4
    assert all(by_id[a]["dim"] == by_id[b]["dim"] + 1 for a, b in doc.incidence)


def test_quotient_document():
    D0, _ = build_quotient_complexes(torus_group(2), 2)
    doc = document_from_quotient(D0)
    assert doc.metadata["quotient"] is True
    assert len(doc.cells) == 24
    assert all("orbit_key" in c for c in doc.cells)


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    json.dumps({"schema_version": 1}),
    json.dumps({"schema_version": 9, "ambient_dim": 1, "cells": [], "incidence": [], "metadata": {}}),
    json.dumps({"schema_version": 1, "ambient_dim": 1, "cells": [{"id": 0, "dim": 0, "vertices": [["0.5"]]}],
                "incidence": [], "metadata": {}}),
    json.dumps({"schema_version": 1, "ambient_dim": -1, "cells": [], "incidence": [], "metadata": {}}),
])
def test_malformed_documents_are_rejected(text):
    with pytest.raises(MalformedDocument):
        from_json(text)


def test_inconsistent_cells_are_rejected():
    raw = {"schema_version": 1, "ambient_dim": 1, "incidence": [], "metadata": {},
           "cells": [{"id": 0, "dim": 0, "vertices": [["0/1"], ["1/1"]]}]}
    with pytest.raises(MalformedDocument):
        complex_from_document(from_json(json.dumps(raw)))
    raw["cells"] = [{"id": 0, "dim": 1, "vertices": [["0/1"], ["1/2"], ["1/1"]]}]
    with pytest.raises(MalformedDocument):
        complex_from_document(from_json(json.dumps(raw)))


def test_off_export_of_K3():
    off = to_off(build_K(3)).splitlines()
    assert off[0] == "OFF"
    assert off[1] == "27 48 98"
    assert len(off) == 2 + 27 + 48
    assert all(line.startswith("4 ") for line in off[2 + 27:])


def test_off_pads_and_rounds():
    off = to_off(build_K_subdivided(1, 3), precision=3).splitlines()
    assert off[1] == "7 6 6"
    assert "-0.333 0.000 0.000" in off
    with pytest.raises(ValueError):
        to_off(build_K(1), precision=-1)
