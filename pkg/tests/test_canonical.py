import json

import pytest

from egovsearch.errors import ParseError, SchemaError
from egovsearch.ontology import (
    empty_ontology,
    export_canonical,
    import_canonical,
    merge,
)


def doc(**overrides):
    base = {
        "format_version": "1",
        "sector": "customs",
        "reference_language": "fr",
        "concepts": [],
        "expressions": [],
        "variants": [],
    }
    base.update(overrides)
    return json.dumps(base)


def test_empty_round_trip():
    exported = export_canonical(empty_ontology())
    data = json.loads(exported)
    assert data["concepts"] == [] and data["expressions"] == [] and data["variants"] == []
    assert data["reference_language"] == "fr"
    assert import_canonical(exported) == empty_ontology()


def test_fixture_round_trip(customs_ontology, tourism_ontology, mother_ontology):
    for ontology in (customs_ontology, tourism_ontology, mother_ontology):
        again = import_canonical(export_canonical(ontology))
        assert again == ontology
        # structural identity, spelled out
        assert set(again.concepts) == set(ontology.concepts)
        assert set(again.expressions) == set(ontology.expressions)
        for eid, expr in ontology.expressions.items():
            assert again.expressions[eid].synonyms == expr.synonyms
            assert again.expressions[eid].translations == expr.translations


def test_export_is_byte_stable(customs_ontology):
    assert export_canonical(customs_ontology) == export_canonical(customs_ontology)
    again = import_canonical(export_canonical(customs_ontology))
    assert export_canonical(again) == export_canonical(customs_ontology)


def test_unknown_top_level_key():
    with pytest.raises(SchemaError) as exc:
        import_canonical(doc(bogus=1))
    assert "bogus" in str(exc.value)


def test_unknown_nested_key():
    with pytest.raises(SchemaError) as exc:
        import_canonical(doc(concepts=[{"id": "customs:a", "color": "red"}]))
    assert "color" in str(exc.value)


def test_malformed_json_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        import_canonical("{not json")
    assert exc.value.line == 1


def test_missing_format_version():
    with pytest.raises(SchemaError) as exc:
        import_canonical(json.dumps({"sector": "x"}))
    assert "format_version" in str(exc.value)


def test_wrong_format_version():
    with pytest.raises(SchemaError):
        import_canonical(doc(format_version="2"))


def test_bad_cardinality_rejected():
    bad = doc(
        concepts=[{"id": "customs:a", "relations": [{"name": "r", "target": "customs:a", "cardinality": "5..9"}]}]
    )
    with pytest.raises(SchemaError) as exc:
        import_canonical(bad)
    assert "cardinality" in str(exc.value)


def test_bad_variant_kind_rejected():
    bad = doc(
        expressions=[{"id": "fr:customs:x", "language": "fr", "lemma": "x"}],
        variants=[{"expression": "fr:customs:x", "form": "y", "kind": "weird"}],
    )
    with pytest.raises(SchemaError):
        import_canonical(bad)


def test_sectors_key_requires_merged_sector():
    with pytest.raises(SchemaError):
        import_canonical(doc(sectors=["customs"]))


def test_symmetry_closure_on_load():
    one_way = doc(
        concepts=[{"id": "customs:c"}],
        expressions=[
            {"id": "fr:customs:a", "language": "fr", "lemma": "un", "concepts": ["customs:c"],
             "synonyms": ["fr:customs:b"]},
            {"id": "fr:customs:b", "language": "fr", "lemma": "deux", "concepts": ["customs:c"]},
            {"id": "en:customs:c", "language": "en", "lemma": "three", "concepts": ["customs:c"],
             "translations": ["fr:customs:a"]},
        ],
    )
    o = import_canonical(one_way)
    assert "fr:customs:a" in o.expressions["fr:customs:b"].synonyms
    assert "en:customs:c" in o.expressions["fr:customs:a"].translations


def test_duplicate_ids_survive_to_validation():
    from egovsearch.ontology import validate

    duplicated = doc(
        expressions=[
            {"id": "fr:customs:a", "language": "fr", "lemma": "un"},
            {"id": "fr:customs:a", "language": "fr", "lemma": "bis"},
        ]
    )
    o = import_canonical(duplicated)
    assert o.duplicate_ids == ("fr:customs:a",)
    assert "duplicate-id" in [i.code for i in validate(o).errors]


def test_merged_export_carries_sector_list(customs_ontology, tourism_ontology):
    mother = merge([customs_ontology, tourism_ontology])
    data = json.loads(export_canonical(mother))
    assert data["sector"] == "__merged__"
    assert data["sectors"] == ["customs", "tourism"]
