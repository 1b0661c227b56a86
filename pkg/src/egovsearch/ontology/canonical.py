"""Canonical on-disk format: a strict UTF-8 JSON document.

The schema is strict on purpose: an unknown key anywhere is a SchemaError,
which protects round-trip fidelity (nothing silently dropped). Optional
collections may be omitted and default to empty; export always writes the
full canonical shape with ids in sorted order so output is byte-stable.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from ..errors import ParseError, SchemaError
from .model import (
    CARDINALITIES,
    MERGED_SECTOR_TAG,
    PROPERTY_VALUE_TYPES,
    REFERENCE_LANGUAGE,
    VARIANT_KINDS,
    Concept,
    ConceptProperty,
    Expression,
    ExpressionVariant,
    Ontology,
    SemanticRelation,
    build_ontology,
)

FORMAT_VERSION = "1"

_TOP_KEYS = {"format_version", "sector", "sectors", "reference_language", "concepts", "expressions", "variants"}
_CONCEPT_KEYS = {"id", "glosses", "parents", "properties", "relations"}
_PROPERTY_KEYS = {"name", "description", "value_type"}
_RELATION_KEYS = {"name", "target", "cardinality"}
_EXPRESSION_KEYS = {"id", "language", "lemma", "concepts", "synonyms", "translations", "acronym_of"}
_VARIANT_KEYS = {"expression", "form", "kind"}


def _check_keys(obj: Mapping[str, Any], allowed: set[str], where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"unknown key {key!r} in {where}", field=key)


def _require(obj: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise SchemaError(f"missing required key {key!r} in {where}", field=key)
    return obj[key]


def _string(value: Any, field: str, *, allow_empty: bool = False) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"field {field!r} must be a string", field=field)
    if not allow_empty and not value.strip():
        raise SchemaError(f"field {field!r} must be non-empty", field=field)
    return value


def _string_list(value: Any, field: str) -> list[str]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise SchemaError(f"field {field!r} must be a list of strings", field=field)
    return value


def _string_map(value: Any, field: str) -> dict[str, str]:
    if not isinstance(value, dict) or any(
        not isinstance(k, str) or not isinstance(v, str) for k, v in value.items()
    ):
        raise SchemaError(f"field {field!r} must map strings to strings", field=field)
    return value


def _enum(value: str, field: str, allowed: tuple[str, ...]) -> str:
    if value not in allowed:
        raise SchemaError(f"field {field!r} must be one of {allowed}, got {value!r}", field=field)
    return value


def _parse_concept(obj: Any, position: int) -> Concept:
    where = f"concepts[{position}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object", field="concepts")
    _check_keys(obj, _CONCEPT_KEYS, where)
    cid = _string(_require(obj, "id", where), "id")
    properties = []
    for i, p in enumerate(obj.get("properties", [])):
        pwhere = f"{where}.properties[{i}]"
        if not isinstance(p, dict):
            raise SchemaError(f"{pwhere} must be an object", field="properties")
        _check_keys(p, _PROPERTY_KEYS, pwhere)
        properties.append(
            ConceptProperty(
                name=_string(_require(p, "name", pwhere), "name"),
                description=_string(p.get("description", ""), "description", allow_empty=True),
                value_type=_enum(_string(p.get("value_type", "text"), "value_type"), "value_type", PROPERTY_VALUE_TYPES),
            )
        )
    relations = []
    for i, r in enumerate(obj.get("relations", [])):
        rwhere = f"{where}.relations[{i}]"
        if not isinstance(r, dict):
            raise SchemaError(f"{rwhere} must be an object", field="relations")
        _check_keys(r, _RELATION_KEYS, rwhere)
        relations.append(
            SemanticRelation(
                name=_string(_require(r, "name", rwhere), "name"),
                source=cid,
                target=_string(_require(r, "target", rwhere), "target"),
                cardinality=_enum(_string(r.get("cardinality", "0..n"), "cardinality"), "cardinality", CARDINALITIES),
            )
        )
    return Concept(
        id=cid,
        glosses=dict(sorted(_string_map(obj.get("glosses", {}), "glosses").items())),
        parents=frozenset(_string_list(obj.get("parents", []), "parents")),
        properties=tuple(properties),
        relations=tuple(relations),
    )


def _parse_expression(obj: Any, position: int) -> Expression:
    where = f"expressions[{position}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object", field="expressions")
    _check_keys(obj, _EXPRESSION_KEYS, where)
    acronym_of = obj.get("acronym_of")
    if acronym_of is not None:
        acronym_of = _string(acronym_of, "acronym_of")
    return Expression(
        id=_string(_require(obj, "id", where), "id"),
        language=_string(_require(obj, "language", where), "language"),
        lemma=_string(_require(obj, "lemma", where), "lemma"),
        concepts=frozenset(_string_list(obj.get("concepts", []), "concepts")),
        synonyms=frozenset(_string_list(obj.get("synonyms", []), "synonyms")),
        translations=frozenset(_string_list(obj.get("translations", []), "translations")),
        acronym_of=acronym_of,
    )


def _parse_variant(obj: Any, position: int) -> ExpressionVariant:
    where = f"variants[{position}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object", field="variants")
    _check_keys(obj, _VARIANT_KEYS, where)
    return ExpressionVariant(
        expression=_string(_require(obj, "expression", where), "expression"),
        form=_string(_require(obj, "form", where), "form"),
        kind=_enum(_string(_require(obj, "kind", where), "kind"), "kind", VARIANT_KINDS),
    )


def import_canonical(document: str) -> Ontology:
    """Parse a canonical document into an immutable ontology.

    Semantic violations (dangling references, language rule breaks,
    duplicate ids) do not fail the import; they are kept visible so
    ``validate`` can report all of them at once. Only structural problems
    raise: ParseError for malformed JSON, SchemaError for schema breaks.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
        ) from exc
    if not isinstance(data, dict):
        raise SchemaError("top-level value must be an object")
    _check_keys(data, _TOP_KEYS, "document")

    version = _string(_require(data, "format_version", "document"), "format_version")
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {version!r}", field="format_version")

    sector = _string(_require(data, "sector", "document"), "sector")
    if sector == MERGED_SECTOR_TAG:
        sectors = frozenset(_string_list(data.get("sectors", []), "sectors"))
    else:
        if "sectors" in data:
            raise SchemaError("key 'sectors' is only valid on merged documents", field="sectors")
        sectors = frozenset({sector})

    reference_language = _string(data.get("reference_language", REFERENCE_LANGUAGE), "reference_language")

    raw_concepts = data.get("concepts", [])
    raw_expressions = data.get("expressions", [])
    raw_variants = data.get("variants", [])
    for name, raw in (("concepts", raw_concepts), ("expressions", raw_expressions), ("variants", raw_variants)):
        if not isinstance(raw, list):
            raise SchemaError(f"field {name!r} must be a list", field=name)

    concepts = [_parse_concept(c, i) for i, c in enumerate(raw_concepts)]
    expressions = [_parse_expression(e, i) for i, e in enumerate(raw_expressions)]
    variants = [_parse_variant(v, i) for i, v in enumerate(raw_variants)]

    duplicates = []
    seen: set[str] = set()
    for entity_id in [c.id for c in concepts] + [e.id for e in expressions]:
        if entity_id in seen:
            duplicates.append(entity_id)
        seen.add(entity_id)

    return build_ontology(
        sectors=sectors,
        reference_language=reference_language,
        concepts=concepts,
        expressions=expressions,
        variants=variants,
        duplicate_ids=duplicates,
    )


def export_canonical(ontology: Ontology) -> str:
    """Serialize to the canonical document, ids sorted, byte-stable."""
    if len(ontology.sectors) == 1:
        sector = next(iter(ontology.sectors))
        doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "sector": sector}
    else:
        doc = {
            "format_version": FORMAT_VERSION,
            "sector": MERGED_SECTOR_TAG,
            "sectors": sorted(ontology.sectors),
        }
    doc["reference_language"] = ontology.reference_language
    doc["concepts"] = [
        {
            "id": c.id,
            "glosses": dict(sorted(c.glosses.items())),
            "parents": sorted(c.parents),
            "properties": [
                {"name": p.name, "description": p.description, "value_type": p.value_type}
                for p in sorted(c.properties, key=lambda p: p.name)
            ],
            "relations": [
                {"name": r.name, "target": r.target, "cardinality": r.cardinality}
                for r in sorted(c.relations, key=lambda r: (r.name, r.target))
            ],
        }
        for c in (ontology.concepts[cid] for cid in sorted(ontology.concepts))
    ]
    doc["expressions"] = [
        {
            "id": e.id,
            "language": e.language,
            "lemma": e.lemma,
            "concepts": sorted(e.concepts),
            "synonyms": sorted(e.synonyms),
            "translations": sorted(e.translations),
            **({"acronym_of": e.acronym_of} if e.acronym_of is not None else {}),
        }
        for e in (ontology.expressions[eid] for eid in sorted(ontology.expressions))
    ]
    doc["variants"] = [
        {"expression": v.expression, "form": v.form, "kind": v.kind} for v in ontology.variants
    ]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
