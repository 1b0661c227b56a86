"""Command line interface.

Exit codes: 0 success, 1 validation/parse failure, 2 usage error (bad
arguments, unreadable paths).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import indexing
from . import profile as profile_mod
from . import search as search_mod
from .catalog import export_catalog, ingest
from .config import load_config
from .engine import Engine, StartupError
from .errors import EngineError
from .ontology import canonical, owl
from .ontology.merge import merge as merge_ontologies
from .ontology.validate import validate
from .reformulate import RawQuery, reformulate
from .textnorm import DEFAULT_STOPWORDS


def _read(path: str) -> str:
    return Path(path).read_text("utf-8")


def cmd_validate(args: argparse.Namespace) -> int:
    failed = False
    for path in args.ontology:
        ontology = canonical.import_canonical(_read(path))
        report = validate(ontology)
        for issue in report:
            print(f"{path}: {issue}")
        if report.ok():
            print(f"{path}: OK ({len(ontology.concepts)} concepts, {len(ontology.expressions)} expressions)")
        else:
            failed = True
    return 1 if failed else 0


def cmd_merge(args: argparse.Namespace) -> int:
    sectorals = [canonical.import_canonical(_read(p)) for p in args.ontology]
    mother = merge_ontologies(sectorals, reference_language=args.reference_language)
    Path(args.out).write_text(canonical.export_canonical(mother), encoding="utf-8")
    print(f"wrote {args.out}: {len(mother.concepts)} concepts, {len(mother.expressions)} expressions")
    return 0


def cmd_export_owl(args: argparse.Namespace) -> int:
    ontology = canonical.import_canonical(_read(args.ontology))
    report = validate(ontology)
    if not report.ok():
        for issue in report.errors:
            print(f"{args.ontology}: {issue}", file=sys.stderr)
        return 1
    Path(args.out).write_text(owl.export_owl(ontology), encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def cmd_index(args: argparse.Namespace) -> int:
    sectorals = [canonical.import_canonical(_read(p)) for p in args.ontology]
    for path, ontology in zip(args.ontology, sectorals):
        report = validate(ontology)
        if not report.ok():
            for issue in report:
                print(f"{path}: {issue}", file=sys.stderr)
            return 1
    mother = merge_ontologies(sectorals, reference_language=args.reference_language)
    catalog = ingest(_read(args.services))
    index = indexing.build_index(catalog, mother)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "ontology.json").write_text(canonical.export_canonical(mother), encoding="utf-8")
    (out / "catalog.json").write_text(export_catalog(catalog), encoding="utf-8")
    (out / "index.json").write_text(indexing.index_to_json(index), encoding="utf-8")
    print(f"wrote {out}: {len(catalog)} services, {len(mother.expressions)} expressions")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    bundle = Path(args.index)
    ontology = canonical.import_canonical(_read(bundle / "ontology.json"))
    catalog = ingest(_read(bundle / "catalog.json"))
    index = indexing.index_from_json(_read(bundle / "index.json"), catalog)

    profile = None
    if args.user and args.profiles:
        store = profile_mod.ProfileStore(args.profiles)
        profile = store.load_user(args.user, catalog)

    enriched = reformulate(RawQuery(text=args.query, language=args.lang), ontology, stopwords=DEFAULT_STOPWORDS)
    results = search_mod.rank(enriched, index, profile=profile, k=args.k)
    payload = {
        "results": [
            {
                "id": r.service_id,
                "score": r.score,
                "explanation": search_mod.explain(r)["terms"],
                "personalization_factor": r.personalization_factor,
                "titles": dict(catalog.get(r.service_id).titles) if catalog.get(r.service_id) else {},
                "url": catalog.get(r.service_id).url if catalog.get(r.service_id) else "",
                "administration": catalog.get(r.service_id).administration if catalog.get(r.service_id) else "",
                "sector": catalog.get(r.service_id).sector if catalog.get(r.service_id) else "",
            }
            for r in results
        ],
        "enriched_terms": [{"key": t.key, "weight": t.weight, "provenance": t.provenance} for t in enriched.terms],
        "language": enriched.language,
    }
    print(json.dumps(payload, ensure_ascii=False, indent=2))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    config = load_config(args.config)
    try:
        engine = Engine(config)
    except StartupError as exc:
        for line in exc.report_lines:
            print(line, file=sys.stderr)
        print(f"startup aborted: {exc}", file=sys.stderr)
        return 1
    for warning in engine.catalog_warnings:
        print(f"catalog: {warning}", file=sys.stderr)
    uvicorn.run(create_app(engine), host=config.host, port=config.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="egovsearch", description="Multilingual ontology-driven e-service search")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate ontology files")
    p.add_argument("ontology", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("merge", help="merge sectoral ontologies into a mother ontology")
    p.add_argument("ontology", nargs="+")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--reference-language", default="fr")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("index", help="build a search bundle from ontologies and a service catalog")
    p.add_argument("--ontology", nargs="+", required=True)
    p.add_argument("--services", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--reference-language", default="fr")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", help="search a bundle built by 'index'")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--lang", default=None)
    p.add_argument("--user", default=None)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--profiles", default=None, help="profile store directory")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export-owl", help="export an ontology as Turtle")
    p.add_argument("ontology")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_export_owl)

    p = sub.add_parser("serve", help="run the HTTP gateway")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"cannot read {getattr(exc, 'filename', '?')}: {exc.strerror}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
