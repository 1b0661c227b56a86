"""Descriptive catalog of administrative e-services.

A record holds the per-language texts of one service, the administration
that owns it, its URL and its concept annotations. Services may exist in a
single language; that is the normal case this engine is built around, so
the only hard text requirement is one title in some language. The catalog
is a value: upsert and remove return a new catalog.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .errors import DuplicateServiceId, ParseError, SchemaError, UnknownServiceId
from .ontology.model import Ontology
from .ontology.validate import ValidationIssue, ValidationReport, WARNING
from .textnorm import is_valid_language

_RECORD_KEYS = {"id", "sector", "administration", "url", "titles", "descriptions", "keywords", "concepts"}
_CSV_COLUMNS = [
    "id",
    "sector",
    "administration",
    "url",
    "title_fr",
    "title_ar",
    "title_en",
    "desc_fr",
    "desc_ar",
    "desc_en",
    "keywords",
    "concepts",
]


@dataclass(frozen=True)
class ServiceRecord:
    id: str
    sector: str
    administration: str
    url: str
    titles: Mapping[str, str]
    descriptions: Mapping[str, str] = field(default_factory=dict)
    keywords: tuple[str, ...] = ()
    concepts: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.id.strip():
            raise SchemaError("service id must be non-empty", field="id")
        if not self.titles:
            raise SchemaError(f"service {self.id!r} needs at least one title", field="titles")
        for lang in list(self.titles) + list(self.descriptions):
            if not is_valid_language(lang):
                raise SchemaError(f"service {self.id!r} uses malformed language code {lang!r}", field="titles")


@dataclass(frozen=True)
class Catalog:
    services: Mapping[str, ServiceRecord] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.services)

    def __contains__(self, service_id: str) -> bool:
        return service_id in self.services

    def get(self, service_id: str) -> ServiceRecord | None:
        return self.services.get(service_id)

    def ids(self) -> list[str]:
        return sorted(self.services)


def record_from_obj(obj: Any, where: str = "record") -> ServiceRecord:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object")
    for key in obj:
        if key not in _RECORD_KEYS:
            raise SchemaError(f"unknown key {key!r} in {where}", field=key)

    def text(key: str, required: bool = True) -> str:
        value = obj.get(key, "" if not required else None)
        if value is None:
            raise SchemaError(f"missing required key {key!r} in {where}", field=key)
        if not isinstance(value, str):
            raise SchemaError(f"field {key!r} must be a string in {where}", field=key)
        return value

    titles = obj.get("titles", {})
    descriptions = obj.get("descriptions", {})
    for name, mapping in (("titles", titles), ("descriptions", descriptions)):
        if not isinstance(mapping, dict) or any(
            not isinstance(k, str) or not isinstance(v, str) for k, v in mapping.items()
        ):
            raise SchemaError(f"field {name!r} must map language codes to text in {where}", field=name)
    keywords = obj.get("keywords", [])
    concepts = obj.get("concepts", [])
    for name, seq in (("keywords", keywords), ("concepts", concepts)):
        if not isinstance(seq, list) or any(not isinstance(v, str) for v in seq):
            raise SchemaError(f"field {name!r} must be a list of strings in {where}", field=name)

    return ServiceRecord(
        id=text("id"),
        sector=text("sector", required=False),
        administration=text("administration", required=False),
        url=text("url", required=False),
        titles=dict(sorted(titles.items())),
        descriptions=dict(sorted(descriptions.items())),
        keywords=tuple(keywords),
        concepts=frozenset(concepts),
    )


def record_to_obj(record: ServiceRecord) -> dict[str, Any]:
    return {
        "id": record.id,
        "sector": record.sector,
        "administration": record.administration,
        "url": record.url,
        "titles": dict(sorted(record.titles.items())),
        "descriptions": dict(sorted(record.descriptions.items())),
        "keywords": list(record.keywords),
        "concepts": sorted(record.concepts),
    }


def _records_from_csv(document: str) -> list[ServiceRecord]:
    reader = csv.DictReader(io.StringIO(document))
    if reader.fieldnames is None:
        return []
    unknown = set(reader.fieldnames) - set(_CSV_COLUMNS)
    if unknown:
        raise SchemaError(f"unknown CSV column(s) {sorted(unknown)}", field=sorted(unknown)[0])
    records = []
    for line_no, row in enumerate(reader, start=2):
        titles = {lang: row[f"title_{lang}"].strip() for lang in ("fr", "ar", "en") if row.get(f"title_{lang}", "").strip()}
        descriptions = {lang: row[f"desc_{lang}"].strip() for lang in ("fr", "ar", "en") if row.get(f"desc_{lang}", "").strip()}
        keywords = tuple(k.strip() for k in (row.get("keywords") or "").split(";") if k.strip())
        concepts = frozenset(c.strip() for c in (row.get("concepts") or "").split(";") if c.strip())
        try:
            records.append(
                ServiceRecord(
                    id=(row.get("id") or "").strip(),
                    sector=(row.get("sector") or "").strip(),
                    administration=(row.get("administration") or "").strip(),
                    url=(row.get("url") or "").strip(),
                    titles=titles,
                    descriptions=descriptions,
                    keywords=keywords,
                    concepts=concepts,
                )
            )
        except SchemaError as exc:
            raise ParseError(f"CSV line {line_no}: {exc}", line=line_no) from exc
    return records


def ingest(document: str) -> Catalog:
    """Load a catalog document: a JSON array of records, or the CSV layout.

    Format is sniffed from the first non-blank character ('[' means JSON).
    """
    stripped = document.lstrip("﻿ \t\r\n")
    if stripped.startswith("["):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                line=exc.lineno,
                column=exc.colno,
            ) from exc
        if not isinstance(data, list):
            raise SchemaError("catalog document must be a JSON array of records")
        records = [record_from_obj(obj, where=f"record[{i}]") for i, obj in enumerate(data)]
    elif not stripped:
        records = []
    else:
        records = _records_from_csv(document)

    services: dict[str, ServiceRecord] = {}
    for record in records:
        if record.id in services:
            raise DuplicateServiceId(f"service id {record.id!r} defined more than once")
        services[record.id] = record
    return Catalog(services)


def export_catalog(catalog: Catalog) -> str:
    """Canonical JSON serialization, records sorted by id, byte-stable."""
    records = [record_to_obj(catalog.services[sid]) for sid in sorted(catalog.services)]
    return json.dumps(records, ensure_ascii=False, indent=2) + "\n"


def upsert_service(catalog: Catalog, record: ServiceRecord) -> Catalog:
    services = dict(catalog.services)
    services[record.id] = record
    return Catalog(services)


def remove_service(catalog: Catalog, service_id: str) -> Catalog:
    if service_id not in catalog.services:
        raise UnknownServiceId(f"unknown service id {service_id!r}")
    services = dict(catalog.services)
    del services[service_id]
    return Catalog(services)


def validate_annotations(catalog: Catalog, ontology: Ontology) -> ValidationReport:
    """Warn (never error) about annotations the ontology cannot resolve."""
    issues: list[ValidationIssue] = []
    for sid in sorted(catalog.services):
        for cid in sorted(catalog.services[sid].concepts):
            if cid not in ontology.concepts:
                issues.append(
                    ValidationIssue(WARNING, "unresolved-annotation", f"concept {cid!r} is not in the ontology", sid)
                )
    return ValidationReport(tuple(issues))
