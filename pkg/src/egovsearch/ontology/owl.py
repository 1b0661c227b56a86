"""One-way OWL export as deterministic Turtle.

Concepts map to OWL classes (parents as subclass axioms, glosses as
language-tagged comments, lemmas of lexicalizing expressions as
language-tagged labels). Expressions map to named individuals carrying
their lexical links as annotation triples. Concept properties become
datatype properties, semantic relations become object properties with the
cardinality kept as an annotation.

Subjects are emitted in sorted order with a fixed predicate order, so the
same ontology always serializes to the same bytes (UTF-8, LF endings).
"""

from __future__ import annotations

from urllib.parse import quote

from .model import Ontology, split_concept_id, split_expression_id

BASE_IRI = "http://example.org/egov/"

_XSD_BY_VALUE_TYPE = {
    "text": "xsd:string",
    "number": "xsd:decimal",
    "boolean": "xsd:boolean",
    "date": "xsd:date",
}

_PREAMBLE = """@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix ego: <http://example.org/egov/schema#> .
"""

_SCHEMA_TRIPLES = """<http://example.org/egov/schema#lexicalizes> a owl:AnnotationProperty .
<http://example.org/egov/schema#synonymOf> a owl:AnnotationProperty .
<http://example.org/egov/schema#translationOf> a owl:AnnotationProperty .
<http://example.org/egov/schema#acronymOf> a owl:AnnotationProperty .
<http://example.org/egov/schema#variantForm> a owl:AnnotationProperty .
<http://example.org/egov/schema#cardinality> a owl:AnnotationProperty .
"""


def _segment(token: str) -> str:
    return quote(token, safe="")


def concept_iri(concept_id: str) -> str:
    sector, local = split_concept_id(concept_id)
    return f"<{BASE_IRI}concept/{_segment(sector)}/{_segment(local)}>"


def expression_iri(expression_id: str) -> str:
    lang, sector, local = split_expression_id(expression_id)
    return f"<{BASE_IRI}expression/{_segment(lang)}/{_segment(sector)}/{_segment(local)}>"


def _literal(text: str, language: str | None = None) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\r", "\\r")
    return f'"{escaped}"@{language}' if language else f'"{escaped}"'


def export_owl(ontology: Ontology) -> str:
    lines: list[str] = [_PREAMBLE]
    lines.append(f"<{BASE_IRI}ontology> a owl:Ontology .")
    lines.append("")
    if not ontology.concepts and not ontology.expressions:
        return "\n".join(lines) + "\n"

    lines.append(_SCHEMA_TRIPLES)

    # Labels on a class: lemmas of every expression that lexicalizes it.
    labels_by_concept: dict[str, list[tuple[str, str]]] = {}
    for eid in sorted(ontology.expressions):
        expr = ontology.expressions[eid]
        for cid in expr.concepts:
            labels_by_concept.setdefault(cid, []).append((expr.language, expr.lemma))

    for cid in sorted(ontology.concepts):
        concept = ontology.concepts[cid]
        subject = concept_iri(cid)
        predicates: list[str] = ["a owl:Class"]
        for parent in sorted(concept.parents):
            if parent in ontology.concepts:
                predicates.append(f"rdfs:subClassOf {concept_iri(parent)}")
        for language, lemma in sorted(labels_by_concept.get(cid, [])):
            predicates.append(f"rdfs:label {_literal(lemma, language)}")
        for language in sorted(concept.glosses):
            predicates.append(f"rdfs:comment {_literal(concept.glosses[language], language)}")
        lines.append(subject + " " + " ;\n    ".join(predicates) + " .")
        lines.append("")

        sector, local = split_concept_id(cid)
        for prop in sorted(concept.properties, key=lambda p: p.name):
            prop_iri = f"<{BASE_IRI}property/{_segment(sector)}/{_segment(local)}/{_segment(prop.name)}>"
            preds = [
                "a owl:DatatypeProperty",
                f"rdfs:domain {subject}",
                f"rdfs:range {_XSD_BY_VALUE_TYPE[prop.value_type]}",
                f"rdfs:label {_literal(prop.name)}",
            ]
            if prop.description:
                preds.append(f"rdfs:comment {_literal(prop.description)}")
            lines.append(prop_iri + " " + " ;\n    ".join(preds) + " .")
            lines.append("")
        for rel in sorted(concept.relations, key=lambda r: (r.name, r.target)):
            if rel.target not in ontology.concepts:
                continue
            rel_iri = f"<{BASE_IRI}relation/{_segment(sector)}/{_segment(local)}/{_segment(rel.name)}>"
            preds = [
                "a owl:ObjectProperty",
                f"rdfs:domain {subject}",
                f"rdfs:range {concept_iri(rel.target)}",
                f"rdfs:label {_literal(rel.name)}",
                f"ego:cardinality {_literal(rel.cardinality)}",
            ]
            lines.append(rel_iri + " " + " ;\n    ".join(preds) + " .")
            lines.append("")

    variant_forms: dict[str, list[str]] = {}
    for variant in ontology.variants:
        expr = ontology.expressions.get(variant.expression)
        if expr is not None:
            variant_forms.setdefault(variant.expression, []).append(variant.form)

    for eid in sorted(ontology.expressions):
        expr = ontology.expressions[eid]
        subject = expression_iri(eid)
        predicates = ["a owl:NamedIndividual", f"rdfs:label {_literal(expr.lemma, expr.language)}"]
        for cid in sorted(expr.concepts):
            if cid in ontology.concepts:
                predicates.append(f"ego:lexicalizes {concept_iri(cid)}")
        for sid in sorted(expr.synonyms):
            if sid in ontology.expressions:
                predicates.append(f"ego:synonymOf {expression_iri(sid)}")
        for tid in sorted(expr.translations):
            if tid in ontology.expressions:
                predicates.append(f"ego:translationOf {expression_iri(tid)}")
        if expr.acronym_of is not None and expr.acronym_of in ontology.expressions:
            predicates.append(f"ego:acronymOf {expression_iri(expr.acronym_of)}")
        for form in sorted(variant_forms.get(eid, [])):
            predicates.append(f"ego:variantForm {_literal(form, expr.language)}")
        lines.append(subject + " " + " ;\n    ".join(predicates) + " .")
        lines.append("")

    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"
