"""Algebra file round trips, canonical form, fingerprints, parse errors."""

import json

import pytest

from liebialg.algebra import BasisElement, Bialgebra, GradedLie
from liebialg.catalog import catalog
from liebialg.serialize import (AlgebraFileError, bialgebra_from_dict,
                                bialgebra_to_dict, canonical_json, dumps,
                                fingerprint, load, loads, save)

BOREL11_FINGERPRINT = \
    "249d3aee9c049da7955960135e62bed503e00e3d53b1f9c559f62b4be600b61b"


def minimal_doc(**overrides):
    doc = {
        "format": 1,
        "name": "tiny",
        "shift_n": 0,
        "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 1}],
        "brackets": [[1, 2, 2, "1"], [2, 1, 2, "-1"]],
        "cobrackets": [],
    }
    doc.update(overrides)
    return doc


class TestRoundTrip:
    def test_catalog_round_trips(self, built):
        for key, b in built.items():
            again = loads(dumps(b))
            assert bialgebra_to_dict(again) == bialgebra_to_dict(b), key
            assert fingerprint(again) == fingerprint(b), key

    def test_emit_parse_emit_byte_stable(self, built):
        for b in built.values():
            text = dumps(b)
            assert dumps(loads(text)) == text

    def test_file_round_trip(self, built, tmp_path):
        path = tmp_path / "algebra.json"
        b = built["gl2"]
        save(b, path)
        assert bialgebra_to_dict(load(path)) == bialgebra_to_dict(b)

    def test_empty_basis(self):
        b = Bialgebra(GradedLie("nothing", (), ()), 0, ())
        assert bialgebra_to_dict(loads(dumps(b))) == bialgebra_to_dict(b)

    def test_zero_coefficients_dropped(self):
        b = bialgebra_from_dict(minimal_doc(brackets=[[1, 2, 2, "0"]]))
        assert b.algebra.bracket == ()

    def test_structural_parse_allows_broken_identities(self):
        # parses fine; jacobi is the validators' business
        doc = minimal_doc(brackets=[[1, 1, 2, "1"]])
        bialgebra_from_dict(doc)


class TestCanonicalForm:
    def test_document_shape(self, built):
        doc = bialgebra_to_dict(built["borel11"])
        assert doc["format"] == 1
        assert doc["shift_n"] == 0
        assert [e["name"] for e in doc["basis"]] == ["t", "x"]
        assert all(isinstance(row[3], str) for row in doc["brackets"])

    def test_one_based_indices(self, built):
        doc = bialgebra_to_dict(built["borel11"])
        for row in doc["brackets"] + doc["cobrackets"]:
            assert all(i >= 1 for i in row[:3])

    def test_entries_sorted_and_merged(self):
        g = GradedLie("tiny",
                      tuple(BasisElement(n, 0) for n in ("a", "b", "c")),
                      ((1, 0, 2, 1), (0, 1, 2, 1), (0, 1, 2, 1)))
        doc = bialgebra_to_dict(Bialgebra(g, 0, ()))
        assert doc["brackets"] == [[1, 2, 3, "2"], [2, 1, 3, "1"]]

    def test_canonical_json_key_order_insensitive(self):
        a = canonical_json({"b": 1, "a": [1, 2]})
        b = canonical_json({"a": [1, 2], "b": 1})
        assert a == b == '{"a":[1,2],"b":1}'

    def test_frozen_fingerprint(self, built):
        assert fingerprint(built["borel11"]) == BOREL11_FINGERPRINT

    def test_fingerprint_sensitive_to_content(self, built):
        b = built["borel11"]
        other = Bialgebra(b.algebra, b.shift, (), form=b.form,
                          rmatrix=b.rmatrix)
        assert fingerprint(other) != fingerprint(b)


class TestParseErrors:
    def check(self, doc, fragment):
        with pytest.raises(AlgebraFileError) as err:
            bialgebra_from_dict(doc)
        assert fragment in str(err.value)

    def test_not_json(self):
        with pytest.raises(AlgebraFileError):
            loads("{not json")

    def test_top_level_not_object(self):
        self.check([1, 2], "top level")

    def test_unsupported_format(self):
        self.check(minimal_doc(format=2), "unsupported format")

    def test_missing_field(self):
        doc = minimal_doc()
        del doc["basis"]
        self.check(doc, "missing field 'basis'")

    def test_wrong_type(self):
        self.check(minimal_doc(shift_n="0"), "wrong type")

    def test_bool_is_not_an_int(self):
        self.check(minimal_doc(shift_n=True), "wrong type")

    def test_duplicate_basis_name(self):
        doc = minimal_doc(basis=[{"name": "a", "degree": 0},
                                 {"name": "a", "degree": 1}])
        self.check(doc, "duplicate basis name")

    def test_bad_weight_array(self):
        doc = minimal_doc(basis=[{"name": "a", "degree": 0,
                                  "weight": [1, "x"]},
                                 {"name": "b", "degree": 1}])
        self.check(doc, "integer array")

    def test_index_out_of_range(self):
        self.check(minimal_doc(brackets=[[1, 3, 2, "1"]]), "out of range")

    def test_zero_index_rejected(self):
        self.check(minimal_doc(brackets=[[0, 1, 2, "1"]]), "out of range")

    def test_duplicate_triple(self):
        doc = minimal_doc(brackets=[[1, 2, 2, "1"], [1, 2, 2, "2"]])
        self.check(doc, "duplicate index triple")

    def test_bad_rational(self):
        self.check(minimal_doc(brackets=[[1, 2, 2, "1/0"]]), "bad rational")

    def test_coefficient_not_string(self):
        self.check(minimal_doc(brackets=[[1, 2, 2, 1]]), "must be a string")

    def test_malformed_row(self):
        self.check(minimal_doc(cobrackets=[[1, 2, "1"]]),
                   "entries are [i, j, k, coeff]")

    def test_duplicate_form_pair(self):
        doc = minimal_doc(form=[[1, 2, "1"], [1, 2, "1"]])
        self.check(doc, "duplicate index pair")

    def test_missing_file(self, tmp_path):
        with pytest.raises(AlgebraFileError):
            load(tmp_path / "absent.json")


class TestWeightsSurvive:
    def test_weight_round_trip(self, built):
        b = built["gl12"]
        again = loads(dumps(b))
        assert [e.weight for e in again.algebra.basis] == \
            [e.weight for e in b.algebra.basis]
        doc = bialgebra_to_dict(b)
        assert all("weight" in item for item in doc["basis"])
        assert isinstance(json.loads(dumps(b)), dict)
