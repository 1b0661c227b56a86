"""Multilingual three-level ontology: model, validation, merge, expansion,
canonical JSON persistence and one-way OWL export."""

from .canonical import export_canonical, import_canonical
from .expand import (
    Expansion,
    PROVENANCE_HIERARCHY,
    PROVENANCE_ORIGINAL,
    PROVENANCE_SYNONYM,
    PROVENANCE_TRANSLATION,
    build_edges,
    expand,
)
from .merge import merge
from .model import (
    CARDINALITIES,
    MERGED_SECTOR_TAG,
    PROPERTY_VALUE_TYPES,
    REFERENCE_LANGUAGE,
    VARIANT_KINDS,
    Concept,
    ConceptProperty,
    ExpansionPolicy,
    Expression,
    ExpressionVariant,
    Ontology,
    SemanticRelation,
    build_lexicon,
    build_ontology,
    empty_ontology,
    lookup_surface,
    split_concept_id,
    split_expression_id,
)
from .owl import export_owl
from .validate import ValidationIssue, ValidationReport, validate

__all__ = [
    "CARDINALITIES",
    "Concept",
    "ConceptProperty",
    "ExpansionPolicy",
    "Expansion",
    "Expression",
    "ExpressionVariant",
    "MERGED_SECTOR_TAG",
    "Ontology",
    "PROPERTY_VALUE_TYPES",
    "PROVENANCE_HIERARCHY",
    "PROVENANCE_ORIGINAL",
    "PROVENANCE_SYNONYM",
    "PROVENANCE_TRANSLATION",
    "REFERENCE_LANGUAGE",
    "SemanticRelation",
    "VARIANT_KINDS",
    "ValidationIssue",
    "ValidationReport",
    "build_edges",
    "build_lexicon",
    "build_ontology",
    "empty_ontology",
    "expand",
    "export_canonical",
    "export_owl",
    "import_canonical",
    "lookup_surface",
    "merge",
    "split_concept_id",
    "split_expression_id",
    "validate",
]
