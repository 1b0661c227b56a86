#!/usr/bin/env python3
"""Run a handful of queries against the bundled fixtures and print the
ranked results with their enrichment, one query per block."""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from egovsearch.catalog import ingest
from egovsearch.indexing import build_index
from egovsearch.ontology import import_canonical
from egovsearch.ontology.merge import merge
from egovsearch.reformulate import RawQuery, reformulate
from egovsearch.search import rank

QUERIES = [
    ("duty free", "en"),
    ("tax exemption", "en"),
    ("admission en franchise", "fr"),
    ("إعفاء جمركي", None),
    ("تأشيرة", None),
    ("importation de véhicules", "fr"),
]


def main() -> int:
    fixtures = ROOT / "fixtures"
    mother = merge(
        [
            import_canonical((fixtures / "customs.json").read_text("utf-8")),
            import_canonical((fixtures / "tourism.json").read_text("utf-8")),
        ]
    )
    catalog = ingest((fixtures / "services.json").read_text("utf-8"))
    index = build_index(catalog, mother)

    for text, lang in QUERIES:
        enriched = reformulate(RawQuery(text, language=lang), mother)
        print(f"\n=== {text!r}  [{enriched.language}]")
        added = [t for t in enriched.terms if t.provenance != "original"]
        print(f"    enrichment: {len(added)} added terms")
        for term in added[:6]:
            print(f"      + {term.key}  w={term.weight:.2f}  ({term.provenance})")
        for result in rank(enriched, index, k=5):
            record = catalog.get(result.service_id)
            title = next(iter(record.titles.values()))
            print(f"    {result.score:6.3f}  {result.service_id:28s} {title}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
