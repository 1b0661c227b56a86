"""Structural validation of a loaded ontology.

The report is the output: validation never raises. Errors are violations
that make downstream behaviour undefined (dangling references, language
rule breaks on lexical links, hierarchy cycles, duplicate ids); warnings
flag suspicious but workable content (an expression lexicalizing nothing,
an unknown language code, a concept with no lemma in the reference
language).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..textnorm import SHIPPED_LANGUAGES, is_valid_language, normalize_form
from .model import (
    CARDINALITIES,
    PROPERTY_VALUE_TYPES,
    VARIANT_KINDS,
    Ontology,
    split_concept_id,
    split_expression_id,
)

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class ValidationIssue:
    severity: str
    code: str
    message: str
    subject: str

    def __str__(self) -> str:
        return f"{self.severity}[{self.code}] {self.subject}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def errors(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity == ERROR)

    @property
    def warnings(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity == WARNING)

    def ok(self) -> bool:
        return not self.errors

    def __iter__(self):
        return iter(self.issues)

    def __len__(self) -> int:
        return len(self.issues)


class _Collector:
    def __init__(self) -> None:
        self.issues: list[ValidationIssue] = []

    def error(self, code: str, subject: str, message: str) -> None:
        self.issues.append(ValidationIssue(ERROR, code, message, subject))

    def warning(self, code: str, subject: str, message: str) -> None:
        self.issues.append(ValidationIssue(WARNING, code, message, subject))


def _hierarchy_cycles(ontology: Ontology) -> list[list[str]]:
    """Strongly connected components of the parent graph with >1 node or a
    self-loop; each component is one reported cycle."""
    index_counter = 0
    stack: list[str] = []
    on_stack: set[str] = set()
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    cycles: list[list[str]] = []

    def edges(cid: str) -> list[str]:
        concept = ontology.concepts.get(cid)
        if concept is None:
            return []
        return sorted(p for p in concept.parents if p in ontology.concepts)

    def strongconnect(v: str) -> None:
        nonlocal index_counter
        # Iterative Tarjan: (node, iterator state) frames.
        work = [(v, iter(edges(v)))]
        index[v] = lowlink[v] = index_counter
        index_counter += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = index_counter
                    index_counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges(w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[node] = min(lowlink[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == node:
                        break
                concept = ontology.concepts.get(node)
                has_self_loop = concept is not None and node in concept.parents
                if len(component) > 1 or has_self_loop:
                    cycles.append(sorted(component))

    for cid in sorted(ontology.concepts):
        if cid not in index:
            strongconnect(cid)
    return cycles


def validate(ontology: Ontology) -> ValidationReport:
    out = _Collector()

    for dup in ontology.duplicate_ids:
        out.error("duplicate-id", dup, "id defined more than once in the source document")

    if not is_valid_language(ontology.reference_language):
        out.error(
            "invalid-language",
            ontology.reference_language,
            "reference language must be two lowercase ASCII letters",
        )

    for cid in sorted(ontology.concepts):
        concept = ontology.concepts[cid]
        try:
            sector, _ = split_concept_id(cid)
        except ValueError:
            out.error("malformed-id", cid, "concept id must render as sector:local")
            sector = None
        if sector is not None and ontology.sectors and sector not in ontology.sectors:
            out.error("sector-mismatch", cid, f"sector {sector!r} is not a sector of this ontology")

        for parent in sorted(concept.parents):
            if parent not in ontology.concepts:
                out.error("dangling-reference", cid, f"parent {parent!r} does not resolve")

        seen_props: set[str] = set()
        for prop in concept.properties:
            if not prop.name:
                out.error("empty-field", cid, "property name must be non-empty")
            if prop.name in seen_props:
                out.error("duplicate-property", cid, f"property {prop.name!r} declared twice")
            seen_props.add(prop.name)
            if prop.value_type not in PROPERTY_VALUE_TYPES:
                out.error(
                    "invalid-value-type",
                    cid,
                    f"property {prop.name!r} has value_type {prop.value_type!r}",
                )

        for rel in concept.relations:
            if not rel.name:
                out.error("empty-field", cid, "relation name must be non-empty")
            if rel.source not in ontology.concepts:
                out.error("dangling-reference", cid, f"relation source {rel.source!r} does not resolve")
            if rel.target not in ontology.concepts:
                out.error("dangling-reference", cid, f"relation target {rel.target!r} does not resolve")
            if rel.cardinality not in CARDINALITIES:
                out.error("invalid-cardinality", cid, f"relation {rel.name!r} has cardinality {rel.cardinality!r}")
            if rel.name == "is-a" and rel.source == rel.target:
                out.error("isa-self-loop", cid, "is-a self-loop; the hierarchy lives in parents")

        for lang in sorted(concept.glosses):
            if not is_valid_language(lang):
                out.error("invalid-language", cid, f"gloss language {lang!r} is malformed")

    for cycle in _hierarchy_cycles(ontology):
        out.error("hierarchy-cycle", cycle[0], "parent cycle: " + " -> ".join(cycle + [cycle[0]]))

    for eid in sorted(ontology.expressions):
        expr = ontology.expressions[eid]
        try:
            id_lang, sector, _ = split_expression_id(eid)
        except ValueError:
            out.error("malformed-id", eid, "expression id must render as lang:sector:local")
            id_lang, sector = expr.language, None
        if sector is not None and ontology.sectors and sector not in ontology.sectors:
            out.error("sector-mismatch", eid, f"sector {sector!r} is not a sector of this ontology")
        if id_lang != expr.language:
            out.error("id-language-mismatch", eid, f"id says {id_lang!r}, expression says {expr.language!r}")

        if not is_valid_language(expr.language):
            out.error("invalid-language", eid, f"language {expr.language!r} is malformed")
        elif expr.language not in SHIPPED_LANGUAGES:
            out.warning("unknown-language", eid, f"language {expr.language!r} is not among the shipped languages")

        if not expr.lemma.strip():
            out.error("empty-field", eid, "lemma must be non-empty")

        for cid in sorted(expr.concepts):
            if cid not in ontology.concepts:
                out.error("dangling-reference", eid, f"concept {cid!r} does not resolve")
        if not expr.concepts:
            out.warning("orphan-expression", eid, "expression lexicalizes no concept")

        for sid in sorted(expr.synonyms):
            other = ontology.expressions.get(sid)
            if other is None:
                out.error("dangling-reference", eid, f"synonym {sid!r} does not resolve")
            elif other.language != expr.language:
                out.error(
                    "cross-language-violation",
                    eid,
                    f"synonym link to {sid!r} crosses languages ({expr.language} vs {other.language})",
                )
        for tid in sorted(expr.translations):
            other = ontology.expressions.get(tid)
            if other is None:
                out.error("dangling-reference", eid, f"translation {tid!r} does not resolve")
            elif other.language == expr.language:
                out.error(
                    "cross-language-violation",
                    eid,
                    f"translation link to {tid!r} stays within language {expr.language}",
                )
        if expr.acronym_of is not None and expr.acronym_of not in ontology.expressions:
            out.error("dangling-reference", eid, f"acronym_of {expr.acronym_of!r} does not resolve")

    seen_forms: set[tuple[str, str]] = set()
    for variant in ontology.variants:
        subject = f"{variant.expression}#{variant.form}"
        expr = ontology.expressions.get(variant.expression)
        if expr is None:
            out.error("dangling-reference", subject, f"variant expression {variant.expression!r} does not resolve")
            continue
        if not variant.form.strip():
            out.error("empty-field", subject, "variant form must be non-empty")
            continue
        if variant.kind not in VARIANT_KINDS:
            out.error("invalid-variant-kind", subject, f"kind {variant.kind!r} is not a variant kind")
        key = (variant.expression, normalize_form(variant.form, expr.language))
        if key in seen_forms:
            out.error("duplicate-variant", subject, "same normalized form declared twice for this expression")
        seen_forms.add(key)

    # Reference-language coverage: concepts should be lexicalized in the pivot.
    covered: set[str] = set()
    for expr in ontology.expressions.values():
        if expr.language == ontology.reference_language:
            covered.update(expr.concepts)
    for cid in sorted(ontology.concepts):
        if cid not in covered:
            out.warning(
                "missing-reference-expression",
                cid,
                f"no expression in reference language {ontology.reference_language!r}",
            )

    return ValidationReport(tuple(out.issues))
