"""Three-level multilingual ontology model.

Level 1: concepts, the language-independent meanings. They carry the is-a
hierarchy (``parents``), typed properties and named semantic relations, but
no surface text beyond optional per-language glosses.

Level 2: expressions, the language-specific lexical entries. An expression
has one lemma, links to the concepts it lexicalizes, intra-language synonym
links and cross-language translation links.

Level 3: variants, alternate surface forms of an expression (inflection,
spelling, abbreviation, acronym). A variant is not a lexicon entry of its
own; it only maps a form back to its expression.

Identifiers are sector-namespaced strings: concepts render as
``sector:local`` and expressions as ``lang:sector:local``, which makes the
union of independently built sectoral ontologies collision-free.

An :class:`Ontology` is immutable once built; every query operation is a
pure read. Construction (import, merge) happens through the builder
functions which symmetrize lexical links and derive the lexicon.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from ..errors import UnknownExpression
from ..textnorm import normalize_form

REFERENCE_LANGUAGE = "fr"
MERGED_SECTOR_TAG = "__merged__"

CARDINALITIES = ("1..1", "0..1", "1..n", "0..n")
PROPERTY_VALUE_TYPES = ("text", "number", "boolean", "date")
VARIANT_KINDS = ("inflection", "spelling", "abbreviation", "acronym")


def split_concept_id(concept_id: str) -> tuple[str, str]:
    """Split ``sector:local``; raises ValueError on malformed ids."""
    sector, sep, local = concept_id.partition(":")
    if not sep or not sector or not local:
        raise ValueError(f"malformed concept id {concept_id!r} (want sector:local)")
    return sector, local


def split_expression_id(expression_id: str) -> tuple[str, str, str]:
    """Split ``lang:sector:local``; raises ValueError on malformed ids."""
    parts = expression_id.split(":", 2)
    if len(parts) != 3 or not all(parts):
        raise ValueError(f"malformed expression id {expression_id!r} (want lang:sector:local)")
    return parts[0], parts[1], parts[2]


@dataclass(frozen=True)
class ConceptProperty:
    """A typed attribute declared on a concept."""

    name: str
    description: str = ""
    value_type: str = "text"


@dataclass(frozen=True)
class SemanticRelation:
    """A named directed relation between two concepts with a cardinality tag.

    The is-a hierarchy does NOT live here; it lives in ``Concept.parents``.
    """

    name: str
    source: str
    target: str
    cardinality: str = "0..n"


@dataclass(frozen=True)
class Concept:
    id: str
    glosses: Mapping[str, str] = dc_field(default_factory=dict)
    parents: frozenset[str] = frozenset()
    properties: tuple[ConceptProperty, ...] = ()
    relations: tuple[SemanticRelation, ...] = ()

    @property
    def sector(self) -> str:
        return split_concept_id(self.id)[0]


@dataclass(frozen=True)
class Expression:
    id: str
    language: str
    lemma: str
    concepts: frozenset[str] = frozenset()
    synonyms: frozenset[str] = frozenset()
    translations: frozenset[str] = frozenset()
    acronym_of: str | None = None


@dataclass(frozen=True)
class ExpressionVariant:
    expression: str
    form: str
    kind: str


@dataclass(frozen=True)
class ExpansionPolicy:
    """Bounds for ontology-based term expansion.

    Deliberately conservative defaults: enrichment that overreaches inserts
    incorrect terms and drags irrelevant services into the results. Depth
    is meant to stay small (1-3): expansion explores simple paths, whose
    count grows steeply with depth on densely lexicalized concepts.
    """

    weight_synonym: float = 0.8
    weight_translation: float = 0.8
    weight_hierarchy: float = 0.5
    max_added_per_term: int = 8
    max_total_terms: int = 64
    depth: int = 1

    def __post_init__(self) -> None:
        for name in ("weight_synonym", "weight_translation", "weight_hierarchy"):
            w = getattr(self, name)
            if not (0.0 <= w <= 1.0):
                raise ValueError(f"{name} must be in [0, 1], got {w}")
        if self.max_added_per_term < 0:
            raise ValueError("max_added_per_term must be >= 0")
        if self.max_total_terms < 1:
            raise ValueError("max_total_terms must be >= 1")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")


@dataclass(frozen=True)
class Ontology:
    """Immutable ontology snapshot with a derived surface-form lexicon.

    ``lexicon`` maps (language, normalized form) to the expression ids whose
    lemma or variant normalizes to that form. ``duplicate_ids`` records ids
    that appeared more than once in the source document; the collision is
    kept out of the maps but surfaced by validation.
    """

    sectors: frozenset[str] = frozenset()
    reference_language: str = REFERENCE_LANGUAGE
    concepts: Mapping[str, Concept] = dc_field(default_factory=dict)
    expressions: Mapping[str, Expression] = dc_field(default_factory=dict)
    variants: tuple[ExpressionVariant, ...] = ()
    duplicate_ids: tuple[str, ...] = ()
    lexicon: Mapping[tuple[str, str], frozenset[str]] = dc_field(default_factory=dict)
    concept_expressions: Mapping[str, frozenset[str]] = dc_field(default_factory=dict)
    concept_children: Mapping[str, frozenset[str]] = dc_field(default_factory=dict)
    expression_variants: Mapping[str, tuple[ExpressionVariant, ...]] = dc_field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        # Derived maps follow from the core collections, no need to compare.
        return (
            self.sectors == other.sectors
            and self.reference_language == other.reference_language
            and dict(self.concepts) == dict(other.concepts)
            and dict(self.expressions) == dict(other.expressions)
            and tuple(sorted(self.variants, key=_variant_sort_key))
            == tuple(sorted(other.variants, key=_variant_sort_key))
        )


def _variant_sort_key(v: ExpressionVariant) -> tuple[str, str, str]:
    return (v.expression, v.form, v.kind)


def build_lexicon(
    expressions: Mapping[str, Expression], variants: Iterable[ExpressionVariant]
) -> dict[tuple[str, str], frozenset[str]]:
    """Index every lemma and variant form under its normalized shape."""
    acc: dict[tuple[str, str], set[str]] = {}
    for expr in expressions.values():
        form = normalize_form(expr.lemma, expr.language)
        if form:
            acc.setdefault((expr.language, form), set()).add(expr.id)
    for variant in variants:
        expr = expressions.get(variant.expression)
        if expr is None:
            continue  # dangling variant; validation reports it
        form = normalize_form(variant.form, expr.language)
        if form:
            acc.setdefault((expr.language, form), set()).add(expr.id)
    return {key: frozenset(ids) for key, ids in acc.items()}


def build_ontology(
    *,
    sectors: Iterable[str],
    reference_language: str = REFERENCE_LANGUAGE,
    concepts: Iterable[Concept] = (),
    expressions: Iterable[Expression] = (),
    variants: Iterable[ExpressionVariant] = (),
    duplicate_ids: Iterable[str] = (),
) -> Ontology:
    """Assemble an immutable ontology: symmetrize links, derive the indexes.

    Synonym and translation links are closed under symmetry for every pair
    of resolvable ids; unresolvable ids are preserved so validation can
    report them as dangling references.
    """
    concept_map = {c.id: c for c in concepts}
    expr_list = list(expressions)
    expr_map = {e.id: e for e in expr_list}

    syn: dict[str, set[str]] = {e.id: set(e.synonyms) for e in expr_list}
    trans: dict[str, set[str]] = {e.id: set(e.translations) for e in expr_list}
    for eid in list(syn):
        for other in list(syn[eid]):
            if other in syn:
                syn[other].add(eid)
        for other in list(trans[eid]):
            if other in trans:
                trans[other].add(eid)

    final_exprs = {
        eid: Expression(
            id=e.id,
            language=e.language,
            lemma=e.lemma,
            concepts=frozenset(e.concepts),
            synonyms=frozenset(syn[eid] - {eid}),
            translations=frozenset(trans[eid] - {eid}),
            acronym_of=e.acronym_of,
        )
        for eid, e in expr_map.items()
    }

    sorted_variants = tuple(sorted(variants, key=_variant_sort_key))

    concept_exprs: dict[str, set[str]] = {}
    for e in final_exprs.values():
        for cid in e.concepts:
            concept_exprs.setdefault(cid, set()).add(e.id)

    children: dict[str, set[str]] = {}
    for c in concept_map.values():
        for parent in c.parents:
            children.setdefault(parent, set()).add(c.id)

    by_expr: dict[str, list[ExpressionVariant]] = {}
    for v in sorted_variants:
        by_expr.setdefault(v.expression, []).append(v)

    return Ontology(
        sectors=frozenset(sectors),
        reference_language=reference_language,
        concepts=concept_map,
        expressions=final_exprs,
        variants=sorted_variants,
        duplicate_ids=tuple(sorted(set(duplicate_ids))),
        lexicon=build_lexicon(final_exprs, sorted_variants),
        concept_expressions={cid: frozenset(ids) for cid, ids in concept_exprs.items()},
        concept_children={cid: frozenset(ids) for cid, ids in children.items()},
        expression_variants={eid: tuple(vs) for eid, vs in by_expr.items()},
    )


def empty_ontology(reference_language: str = REFERENCE_LANGUAGE) -> Ontology:
    return build_ontology(sectors=(), reference_language=reference_language)


def lookup_surface(ontology: Ontology, form: str, language: str) -> frozenset[str]:
    """All expressions whose lemma or any variant normalizes to this form."""
    normalized = normalize_form(form, language)
    if not normalized:
        return frozenset()
    return ontology.lexicon.get((language, normalized), frozenset())


def expression_or_raise(ontology: Ontology, expression_id: str) -> Expression:
    expr = ontology.expressions.get(expression_id)
    if expr is None:
        raise UnknownExpression(f"unknown expression id {expression_id!r}")
    return expr
