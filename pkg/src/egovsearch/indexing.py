"""Inverted index over service texts and concept annotations.

Text postings are keyed by (language, token) and record, per service and
field, how many times the token occurred. Titles and descriptions are
tokenized under their own language; keywords carry no language, so each
keyword is indexed under every shipped language's normalization and can be
hit from any of them. Concept annotations get their own posting space,
keyed by concept id under the reserved "annotation" field.

Stopwords are deliberately NOT removed here: they are a query-side
concern, and keeping them indexed means the index survives stopword list
changes. Incremental updates must land on exactly the same index a full
rebuild would produce; both paths funnel through the same per-record
posting generator to keep that invariant cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .catalog import Catalog, ServiceRecord
from .ontology.model import Ontology
from .textnorm import SHIPPED_LANGUAGES, tokenize

FIELD_TITLE = "title"
FIELD_DESCRIPTION = "description"
FIELD_KEYWORD = "keyword"
FIELD_ANNOTATION = "annotation"

TEXT_FIELDS = (FIELD_TITLE, FIELD_DESCRIPTION, FIELD_KEYWORD)

# postings shapes:
#   text:     (language, token) -> service id -> field -> occurrence count
#   concepts: concept id        -> service id -> occurrence count
_TextPostings = dict[tuple[str, str], dict[str, dict[str, int]]]
_ConceptPostings = dict[str, dict[str, int]]


def _record_text_postings(record: ServiceRecord) -> dict[tuple[str, str], dict[str, int]]:
    """(language, token) -> field -> count, for one record."""
    acc: dict[tuple[str, str], dict[str, int]] = {}

    def bump(lang: str, token: str, field_tag: str) -> None:
        per_field = acc.setdefault((lang, token), {})
        per_field[field_tag] = per_field.get(field_tag, 0) + 1

    for lang, text in record.titles.items():
        for token in tokenize(text, lang):
            bump(lang, token, FIELD_TITLE)
    for lang, text in record.descriptions.items():
        for token in tokenize(text, lang):
            bump(lang, token, FIELD_DESCRIPTION)
    for keyword in record.keywords:
        for lang in SHIPPED_LANGUAGES:
            for token in tokenize(keyword, lang):
                bump(lang, token, FIELD_KEYWORD)
    return acc


@dataclass(frozen=True)
class ServiceIndex:
    catalog: Catalog
    text: _TextPostings = field(default_factory=dict)
    concepts: _ConceptPostings = field(default_factory=dict)
    doc_count: int = 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ServiceIndex):
            return NotImplemented
        return self.text == other.text and self.concepts == other.concepts and self.doc_count == other.doc_count

    def text_hits(self, language: str, tokens: list[str]) -> dict[str, frozenset[str]]:
        """Services where every token occurs, mapped to the fields where
        ALL of the tokens co-occur. Empty dict when any token is unknown."""
        if not tokens:
            return {}
        per_token = []
        for token in tokens:
            postings = self.text.get((language, token))
            if not postings:
                return {}
            per_token.append(postings)
        candidates = set(per_token[0])
        for postings in per_token[1:]:
            candidates &= set(postings)
        hits: dict[str, frozenset[str]] = {}
        for sid in candidates:
            fields = set(per_token[0][sid])
            for postings in per_token[1:]:
                fields &= set(postings[sid])
            if fields:
                hits[sid] = frozenset(fields)
        return hits

    def concept_hits(self, concept_id: str) -> frozenset[str]:
        return frozenset(self.concepts.get(concept_id, {}))


def build_index(catalog: Catalog, ontology: Ontology | None = None) -> ServiceIndex:
    """Index every record of the catalog from scratch.

    The ontology is accepted for interface symmetry with the query side
    (both must share one normalizer); it contributes nothing else here.
    """
    del ontology
    text: _TextPostings = {}
    concepts: _ConceptPostings = {}
    for sid, record in catalog.services.items():
        for key, per_field in _record_text_postings(record).items():
            text.setdefault(key, {})[sid] = dict(per_field)
        for cid in record.concepts:
            concepts.setdefault(cid, {})[sid] = 1
    return ServiceIndex(catalog=catalog, text=text, concepts=concepts, doc_count=len(catalog))


def _without_service(index: ServiceIndex, service_id: str) -> tuple[_TextPostings, _ConceptPostings]:
    text: _TextPostings = {}
    for key, postings in index.text.items():
        remaining = {sid: dict(fields) for sid, fields in postings.items() if sid != service_id}
        if remaining:
            text[key] = remaining
    concepts: _ConceptPostings = {}
    for cid, postings in index.concepts.items():
        remaining_c = {sid: count for sid, count in postings.items() if sid != service_id}
        if remaining_c:
            concepts[cid] = remaining_c
    return text, concepts


def apply_upsert(index: ServiceIndex, record: ServiceRecord, new_catalog: Catalog) -> ServiceIndex:
    """Index state after upserting one record; equals a full rebuild."""
    existed = record.id in index.catalog
    text, concepts = _without_service(index, record.id)
    for key, per_field in _record_text_postings(record).items():
        text.setdefault(key, {})[record.id] = dict(per_field)
    for cid in record.concepts:
        concepts.setdefault(cid, {})[record.id] = 1
    return ServiceIndex(
        catalog=new_catalog,
        text=text,
        concepts=concepts,
        doc_count=index.doc_count + (0 if existed else 1),
    )


def apply_remove(index: ServiceIndex, service_id: str, new_catalog: Catalog) -> ServiceIndex:
    """Index state after removing one record; equals a full rebuild."""
    text, concepts = _without_service(index, service_id)
    return ServiceIndex(catalog=new_catalog, text=text, concepts=concepts, doc_count=index.doc_count - 1)


def index_to_json(index: ServiceIndex) -> str:
    """Deterministic serialization (sorted keys throughout)."""
    payload = {
        "doc_count": index.doc_count,
        "text": {
            f"{lang}:{token}": {sid: dict(sorted(fields.items())) for sid, fields in sorted(postings.items())}
            for (lang, token), postings in sorted(index.text.items())
        },
        "concepts": {
            cid: dict(sorted(postings.items())) for cid, postings in sorted(index.concepts.items())
        },
    }
    return json.dumps(payload, ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def index_from_json(document: str, catalog: Catalog) -> ServiceIndex:
    payload = json.loads(document)
    text: _TextPostings = {}
    for key, postings in payload["text"].items():
        lang, _, token = key.partition(":")
        text[(lang, token)] = {sid: dict(fields) for sid, fields in postings.items()}
    concepts: _ConceptPostings = {cid: dict(p) for cid, p in payload["concepts"].items()}
    return ServiceIndex(catalog=catalog, text=text, concepts=concepts, doc_count=payload["doc_count"])
