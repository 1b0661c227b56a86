"""Engine configuration: a flat UTF-8 key=value document.

Lines are `key = value`; '#' starts a comment. The `ontology` key may be
repeated (or comma-separated) to list the sectoral files. Relative paths
resolve against the config file's directory.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields as dc_fields
from pathlib import Path

from .errors import ParseError, SchemaError
from .ontology.model import ExpansionPolicy
from .search import DEFAULT_ALPHA, DEFAULT_K, FieldWeights


@dataclass
class EngineConfig:
    ontologies: tuple[Path, ...] = ()
    catalog: Path | None = None
    profile_dir: Path | None = None
    reference_language: str = "fr"
    default_language: str = "fr"
    policy: ExpansionPolicy = field(default_factory=ExpansionPolicy)
    field_weights: FieldWeights = field(default_factory=FieldWeights)
    alpha: float = DEFAULT_ALPHA
    default_k: int = DEFAULT_K
    host: str = "127.0.0.1"
    port: int = 8080
    stopword_overrides: dict[str, Path] = field(default_factory=dict)

    def check(self) -> None:
        if not self.ontologies:
            raise SchemaError("config needs at least one 'ontology' entry", field="ontology")
        if not (1 <= self.port <= 65535):
            raise SchemaError(f"port {self.port} out of range [1, 65535]", field="port")
        for path in [*self.ontologies, self.catalog, *self.stopword_overrides.values()]:
            if path is not None and not Path(path).is_file():
                raise SchemaError(f"path {path} is not a readable file", field=str(path))


_POLICY_KEYS = {
    "weight_synonym": float,
    "weight_translation": float,
    "weight_hierarchy": float,
    "max_added_per_term": int,
    "max_total_terms": int,
    "depth": int,
}
_FIELD_WEIGHT_KEYS = {
    "field_weight_annotation": "annotation",
    "field_weight_title": "title",
    "field_weight_keyword": "keyword",
    "field_weight_description": "description",
}
_STOPWORD_KEYS = {"stopwords_fr": "fr", "stopwords_ar": "ar", "stopwords_en": "en"}


def parse_config(text: str, base_dir: Path | None = None) -> EngineConfig:
    base = base_dir or Path.cwd()
    values: dict[str, list[str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ParseError(f"line {line_no}: expected 'key = value'", line=line_no)
        values.setdefault(key.strip(), []).append(value.strip())

    def single(key: str, default: str | None = None) -> str | None:
        got = values.pop(key, None)
        if got is None:
            return default
        if len(got) > 1:
            raise SchemaError(f"key {key!r} given more than once", field=key)
        return got[0]

    def resolve(raw: str) -> Path:
        path = Path(raw)
        return path if path.is_absolute() else base / path

    ontologies: list[Path] = []
    for entry in values.pop("ontology", []):
        for piece in entry.split(","):
            if piece.strip():
                ontologies.append(resolve(piece.strip()))

    catalog_raw = single("catalog")
    profile_raw = single("profile_dir")

    policy_kwargs = {}
    for key, cast in _POLICY_KEYS.items():
        raw = single(key)
        if raw is not None:
            policy_kwargs[key] = cast(raw)

    weight_kwargs = {}
    for key, attr in _FIELD_WEIGHT_KEYS.items():
        raw = single(key)
        if raw is not None:
            weight_kwargs[attr] = float(raw)

    overrides: dict[str, Path] = {}
    for key, lang in _STOPWORD_KEYS.items():
        raw = single(key)
        if raw is not None:
            overrides[lang] = resolve(raw)

    config = EngineConfig(
        ontologies=tuple(ontologies),
        catalog=resolve(catalog_raw) if catalog_raw else None,
        profile_dir=resolve(profile_raw) if profile_raw else None,
        reference_language=single("reference_language", "fr") or "fr",
        default_language=single("default_language", "fr") or "fr",
        policy=ExpansionPolicy(**policy_kwargs),
        field_weights=FieldWeights(**weight_kwargs),
        alpha=float(single("alpha", str(DEFAULT_ALPHA)) or DEFAULT_ALPHA),
        default_k=int(single("default_k", str(DEFAULT_K)) or DEFAULT_K),
        host=single("host", "127.0.0.1") or "127.0.0.1",
        port=int(single("port", "8080") or 8080),
        stopword_overrides=overrides,
    )
    if values:
        unknown = sorted(values)[0]
        raise SchemaError(f"unknown config key {unknown!r}", field=unknown)
    return config


def load_config(path: str | Path) -> EngineConfig:
    path = Path(path)
    config = parse_config(path.read_text("utf-8"), base_dir=path.parent)
    config.check()
    return config
