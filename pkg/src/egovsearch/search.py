"""Scoring, personalized ranking and result explanation.

The base score of a service is a sum over the distinct enriched terms that
hit it: term weight x the best field weight among its hits x idf, with
idf(t) = ln(1 + N / df(t)). A text term hits a service when some single
field contains every token of its form (the index keeps no positions, so
field-level co-occurrence is the phrase notion); a concept term hits only
annotation postings. There is no term-frequency component: service texts
are short and tf would mostly add noise.

Personalization multiplies the base by (1 + alpha x interest), so it can
reorder genuinely relevant services but can never resurrect a zero-base
one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .indexing import FIELD_ANNOTATION, ServiceIndex
from .profile import UserProfile, interest
from .reformulate import EnrichedQuery

DEFAULT_ALPHA = 0.25
DEFAULT_K = 10


@dataclass(frozen=True)
class FieldWeights:
    annotation: float = 1.0
    title: float = 0.7
    keyword: float = 0.6
    description: float = 0.4

    def of(self, field: str) -> float:
        return getattr(self, field)


@dataclass(frozen=True)
class TermHit:
    key: str
    weight: float
    provenance: str
    field: str
    idf: float


@dataclass(frozen=True)
class SearchResult:
    service_id: str
    score: float
    matched_terms: tuple[TermHit, ...]
    personalization_factor: float = 1.0


def _best_field(weights: FieldWeights, fields: frozenset[str]) -> tuple[float, str]:
    best_weight = -1.0
    best_name = ""
    for name in sorted(fields):
        w = weights.of(name)
        if w > best_weight:
            best_weight, best_name = w, name
    return best_weight, best_name


def _term_hits(query: EnrichedQuery, index: ServiceIndex, weights: FieldWeights):
    """Per term: (term, df, {service id -> (field weight, field name)})."""
    out = []
    for term in query.terms:
        if term.kind == "concept":
            sids = index.concept_hits(term.concept or "")
            if not sids:
                continue
            per_service = {sid: (weights.annotation, FIELD_ANNOTATION) for sid in sids}
            out.append((term, len(sids), per_service))
        else:
            tokens = (term.form or "").split(" ")
            hits = index.text_hits(term.language or "", tokens)
            if not hits:
                continue
            per_service = {sid: _best_field(weights, fields) for sid, fields in hits.items()}
            out.append((term, len(hits), per_service))
    return out


def score(
    query: EnrichedQuery,
    service_id: str,
    index: ServiceIndex,
    weights: FieldWeights | None = None,
) -> tuple[float, tuple[TermHit, ...]]:
    """Base score and per-term hits for one service."""
    weights = weights or FieldWeights()
    base = 0.0
    hits: list[TermHit] = []
    for term, df, per_service in _term_hits(query, index, weights):
        entry = per_service.get(service_id)
        if entry is None:
            continue
        field_weight, field_name = entry
        idf = math.log(1.0 + index.doc_count / df)
        base += term.weight * field_weight * idf
        hits.append(TermHit(term.key, term.weight, term.provenance, field_name, idf))
    hits.sort(key=lambda h: h.key)
    return base, tuple(hits)


def rank(
    query: EnrichedQuery,
    index: ServiceIndex,
    profile: UserProfile | None = None,
    k: int = DEFAULT_K,
    alpha: float = DEFAULT_ALPHA,
    weights: FieldWeights | None = None,
) -> list[SearchResult]:
    """Ranked results: base x (1 + alpha x interest), zero-base excluded,
    sorted by final score descending then service id ascending, top k."""
    weights = weights or FieldWeights()
    if k <= 0:
        return []

    term_hits = _term_hits(query, index, weights)
    base_scores: dict[str, float] = {}
    hit_lists: dict[str, list[TermHit]] = {}
    for term, df, per_service in term_hits:
        idf = math.log(1.0 + index.doc_count / df)
        for sid, (field_weight, field_name) in per_service.items():
            base_scores[sid] = base_scores.get(sid, 0.0) + term.weight * field_weight * idf
            hit_lists.setdefault(sid, []).append(TermHit(term.key, term.weight, term.provenance, field_name, idf))

    results = []
    for sid, base in base_scores.items():
        if base <= 0.0:
            continue
        factor = 1.0
        if profile is not None and alpha != 0.0:
            factor = 1.0 + alpha * interest(profile, sid, index.catalog)
        hits = sorted(hit_lists[sid], key=lambda h: h.key)
        results.append(SearchResult(sid, base * factor, tuple(hits), factor))

    results.sort(key=lambda r: (-r.score, r.service_id))
    return results[:k]


def explain(result: SearchResult) -> dict:
    """Human-readable account of why a result scored what it did."""
    return {
        "service_id": result.service_id,
        "score": result.score,
        "personalization_factor": result.personalization_factor,
        "terms": [
            {
                "key": hit.key,
                "provenance": hit.provenance,
                "weight": hit.weight,
                "field": hit.field,
                "idf": hit.idf,
            }
            for hit in result.matched_terms
        ],
    }
