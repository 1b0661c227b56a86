"""Merging sectoral ontologies into the mother ontology.

Sectoral ontologies are built independently, each under its own sector
tag; because every id is sector-namespaced, the merge is a plain disjoint
union with the lexicon rebuilt from scratch. Duplicate lemmas across
sectors simply coexist as distinct expressions under the same lexicon key.
"""

from __future__ import annotations

from typing import Iterable

from ..errors import DuplicateSector, InvalidInput
from .model import REFERENCE_LANGUAGE, Ontology, build_ontology
from .validate import validate


def merge(sectorals: Iterable[Ontology], reference_language: str = REFERENCE_LANGUAGE) -> Ontology:
    """Union of independently valid sectoral ontologies.

    Raises DuplicateSector when two inputs share a sector tag and
    InvalidInput when any input carries validation errors.
    """
    inputs = list(sectorals)

    seen_sectors: set[str] = set()
    for ontology in inputs:
        overlap = seen_sectors & ontology.sectors
        if overlap:
            raise DuplicateSector(f"sector tag(s) {sorted(overlap)} appear in more than one input")
        seen_sectors |= ontology.sectors

    for ontology in inputs:
        report = validate(ontology)
        if not report.ok():
            first = report.errors[0]
            raise InvalidInput(
                f"input for sector(s) {sorted(ontology.sectors)} has {len(report.errors)} "
                f"validation error(s); first: {first}"
            )

    concepts = []
    expressions = []
    variants = []
    duplicates: list[str] = []
    for ontology in inputs:
        concepts.extend(ontology.concepts.values())
        expressions.extend(ontology.expressions.values())
        variants.extend(ontology.variants)
        duplicates.extend(ontology.duplicate_ids)

    return build_ontology(
        sectors=seen_sectors,
        reference_language=reference_language,
        concepts=concepts,
        expressions=expressions,
        variants=variants,
        duplicate_ids=duplicates,
    )
