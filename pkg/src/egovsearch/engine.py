"""Engine wiring: persistence -> processes -> communication.

Startup imports and validates every sectoral ontology (any validation
error aborts with the full report), merges them into the mother ontology,
ingests and indexes the catalog, and replays the profile journals. The
read path works against an immutable snapshot (ontology, catalog, index,
matcher); catalog mutations build a new snapshot and swap it atomically,
so a request in flight keeps one coherent view. The ontology itself is
immutable for the process lifetime: curating it is an offline activity
and changes arrive by restart.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from pathlib import Path

from . import catalog as catalog_mod
from . import indexing, profile as profile_mod, search as search_mod
from .config import EngineConfig
from .errors import EngineError, UnknownServiceId
from .ontology import canonical
from .ontology import model as onto_model
from .ontology.expand import Expansion, expand
from .ontology.merge import merge
from .ontology.validate import validate
from .reformulate import EnrichedQuery, RawQuery, TermMatcher, reformulate
from .textnorm import StopwordTable, load_stopwords


class StartupError(EngineError):
    """Startup aborted; carries the printable validation report."""

    def __init__(self, message: str, report_lines: list[str]):
        super().__init__(message)
        self.report_lines = report_lines


@dataclass(frozen=True)
class Snapshot:
    ontology: onto_model.Ontology
    catalog: catalog_mod.Catalog
    index: indexing.ServiceIndex
    matcher: TermMatcher


def _load_sectorals(paths: tuple[Path, ...]) -> list[onto_model.Ontology]:
    sectorals = []
    report_lines: list[str] = []
    for path in paths:
        ontology = canonical.import_canonical(Path(path).read_text("utf-8"))
        report = validate(ontology)
        for issue in report:
            report_lines.append(f"{path}: {issue}")
        if not report.ok():
            raise StartupError(f"ontology {path} failed validation", report_lines)
        sectorals.append(ontology)
    return sectorals


class Engine:
    def __init__(self, config: EngineConfig):
        self.config = config
        self.stopwords: StopwordTable = load_stopwords(config.stopword_overrides or None)

        sectorals = _load_sectorals(config.ontologies)
        ontology = merge(sectorals, reference_language=config.reference_language)

        if config.catalog is not None:
            cat = catalog_mod.ingest(Path(config.catalog).read_text("utf-8"))
        else:
            cat = catalog_mod.Catalog()
        self.catalog_warnings = [str(i) for i in catalog_mod.validate_annotations(cat, ontology)]

        index = indexing.build_index(cat, ontology)
        self.snapshot = Snapshot(ontology, cat, index, TermMatcher(ontology, self.stopwords))

        self._write_lock = threading.Lock()
        self._profile_lock = threading.Lock()
        self.store: profile_mod.ProfileStore | None = None
        self.profiles: dict[str, profile_mod.UserProfile] = {}
        if config.profile_dir is not None:
            self.store = profile_mod.ProfileStore(config.profile_dir)
            self.profiles = profile_mod.load_profiles(config.profile_dir, cat)

    # --- read side ---------------------------------------------------------

    def reformulate_query(self, q: str, lang: str | None = None) -> EnrichedQuery:
        snap = self.snapshot
        raw = RawQuery(text=q, language=lang)
        return reformulate(
            raw,
            snap.ontology,
            policy=self.config.policy,
            stopwords=self.stopwords,
            default_language=self.config.default_language,
        )

    def search(self, q: str, lang: str | None = None, user: str | None = None, k: int | None = None) -> dict:
        snap = self.snapshot
        started = time.perf_counter()
        enriched = self.reformulate_query(q, lang)
        profile = self.profiles.get(user) if user else None
        results = search_mod.rank(
            enriched,
            snap.index,
            profile=profile,
            k=k if k is not None else self.config.default_k,
            alpha=self.config.alpha,
            weights=self.config.field_weights,
        )
        elapsed_ms = (time.perf_counter() - started) * 1000.0

        payload_results = []
        for result in results:
            record = snap.catalog.get(result.service_id)
            payload_results.append(
                {
                    "id": result.service_id,
                    "score": result.score,
                    "explanation": search_mod.explain(result)["terms"],
                    "personalization_factor": result.personalization_factor,
                    "titles": dict(record.titles) if record else {},
                    "url": record.url if record else "",
                    "administration": record.administration if record else "",
                    "sector": record.sector if record else "",
                }
            )
        return {
            "results": payload_results,
            "enriched_terms": [
                {"key": t.key, "weight": t.weight, "provenance": t.provenance} for t in enriched.terms
            ],
            "language": enriched.language,
            "timing_ms": elapsed_ms,
        }

    def expand_surface(self, term: str, lang: str) -> dict:
        snap = self.snapshot
        expression_ids = sorted(onto_model.lookup_surface(snap.ontology, term, lang))
        expansions = []
        seen: dict[str, Expansion] = {}
        for eid in expression_ids:
            for result in expand(snap.ontology, eid, self.config.policy):
                current = seen.get(result.expression)
                if current is None or result.weight > current.weight:
                    seen[result.expression] = result
        for result in sorted(seen.values(), key=lambda r: (-r.weight, r.expression)):
            expr = snap.ontology.expressions[result.expression]
            expansions.append(
                {
                    "id": expr.id,
                    "lemma": expr.lemma,
                    "language": expr.language,
                    "weight": result.weight,
                    "provenance": result.provenance,
                }
            )
        return {"term": term, "language": lang, "expressions": expression_ids, "expansions": expansions}

    def recommendations(self, user: str, k: int | None = None) -> dict:
        snap = self.snapshot
        profile = self.profiles.get(user)
        if profile is None:
            return {"recommendations": []}
        ids = profile_mod.recommend(profile, snap.catalog, snap.index, k=k if k is not None else self.config.default_k)
        items = []
        for sid in ids:
            record = snap.catalog.get(sid)
            if record is None:
                continue
            items.append(
                {
                    "id": sid,
                    "titles": dict(record.titles),
                    "url": record.url,
                    "administration": record.administration,
                    "sector": record.sector,
                    "interest": profile_mod.interest(profile, sid, snap.catalog),
                }
            )
        return {"recommendations": items}

    # --- write side --------------------------------------------------------

    def feedback(self, user: str, service_id: str, query: str | None = None, language: str | None = None) -> None:
        snap = self.snapshot
        with self._profile_lock:
            profile = self.profiles.get(user) or profile_mod.empty_profile(user)
            now = int(time.time())
            if profile.events:
                now = max(now, profile.events[-1].timestamp)
            event = profile_mod.InteractionEvent(
                user=user,
                timestamp=now,
                kind=profile_mod.EVENT_CLICK,
                language=language,
                query=query,
                service_id=service_id,
            )
            updated = profile_mod.record_event(profile, event, snap.catalog)
            if self.store is not None:
                self.store.append_event(event)
            self.profiles[user] = updated

    def get_service(self, service_id: str) -> catalog_mod.ServiceRecord:
        record = self.snapshot.catalog.get(service_id)
        if record is None:
            raise UnknownServiceId(f"unknown service id {service_id!r}")
        return record

    def put_service(self, record: catalog_mod.ServiceRecord) -> bool:
        """Create or replace one record; returns True when it was created."""
        with self._write_lock:
            snap = self.snapshot
            created = record.id not in snap.catalog
            new_catalog = catalog_mod.upsert_service(snap.catalog, record)
            new_index = indexing.apply_upsert(snap.index, record, new_catalog)
            self.snapshot = Snapshot(snap.ontology, new_catalog, new_index, snap.matcher)
            return created

    def delete_service(self, service_id: str) -> None:
        with self._write_lock:
            snap = self.snapshot
            new_catalog = catalog_mod.remove_service(snap.catalog, service_id)
            new_index = indexing.apply_remove(snap.index, service_id, new_catalog)
            self.snapshot = Snapshot(snap.ontology, new_catalog, new_index, snap.matcher)


def startup(config: EngineConfig) -> Engine:
    return Engine(config)
