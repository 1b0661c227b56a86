"""Two-step query reformulation: filter, then enrich.

Step one strips the query down to its key tokens (language detection,
tokenization, stopword removal). Step two recognizes lexicon entries in
the filtered token sequence (greedy leftmost-longest match against
stopword-filtered lemma/variant keys) and enriches the query with weighted
terms expanded from each recognized expression.

Enrichment stays deliberately bounded: expanding too eagerly inserts wrong
terms and surfaces irrelevant services, so every added term carries a
weight strictly below the original terms under the default policy, and a
global cap trims the lowest-weight additions first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyQuery, OversizedQuery
from .ontology.expand import expand
from .ontology.model import ExpansionPolicy, Ontology
from .textnorm import DEFAULT_STOPWORDS, StopwordTable, detect_language, normalize_form, tokenize

MAX_QUERY_CHARS = 1024

PROVENANCE_RANK = {
    "original": 0,
    "synonym": 1,
    "translation": 2,
    "hierarchy": 3,
    "variant": 4,
    "concept": 5,
}


@dataclass(frozen=True)
class RawQuery:
    text: str
    language: str | None = None


@dataclass(frozen=True)
class FilteredQuery:
    language: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Segment:
    """One piece of the matched query: a lexicon match spanning [start, end)
    with its expression ids, or a single plain token with no ids."""

    start: int
    end: int
    tokens: tuple[str, ...]
    expressions: frozenset[str] = frozenset()

    @property
    def matched(self) -> bool:
        return bool(self.expressions)


@dataclass(frozen=True)
class EnrichedTerm:
    """One weighted query term: either a text form in a language, or a
    concept id that can only hit annotation postings."""

    kind: str  # "text" | "concept"
    weight: float
    provenance: str
    language: str | None = None
    form: str | None = None
    concept: str | None = None

    @property
    def key(self) -> str:
        if self.kind == "concept":
            return f"concept:{self.concept}"
        return f"{self.language}:{self.form}"

    def sort_key(self) -> tuple[str, str, str]:
        if self.kind == "concept":
            return ("concept", self.concept or "", "")
        return ("text", self.language or "", self.form or "")


@dataclass(frozen=True)
class EnrichedQuery:
    language: str
    terms: tuple[EnrichedTerm, ...] = ()

    def term_map(self) -> dict[str, EnrichedTerm]:
        return {t.key: t for t in self.terms}


def filter_tokens(tokens: list[str] | tuple[str, ...], language: str, stopwords: StopwordTable | None = None) -> FilteredQuery:
    """Drop stopwords; keep order and duplicates of the survivors."""
    table = stopwords or DEFAULT_STOPWORDS
    kept = tuple(t for t in tokens if not table.is_stopword(t, language))
    return FilteredQuery(language=language, tokens=kept)


class TermMatcher:
    """Greedy leftmost-longest recognizer of lexicon entries in a filtered
    token sequence.

    Match keys are the stopword-filtered token sequences of every lemma and
    variant form, under the same normalizer as the query side; a key that
    is nothing but stopwords is unmatchable and gets dropped.
    """

    def __init__(self, ontology: Ontology, stopwords: StopwordTable | None = None):
        self.ontology = ontology
        table = stopwords or DEFAULT_STOPWORDS
        self._keys: dict[str, dict[tuple[str, ...], set[str]]] = {}
        self._max_len: dict[str, int] = {}
        for (language, form), ids in ontology.lexicon.items():
            filtered = tuple(t for t in form.split(" ") if not table.is_stopword(t, language))
            if not filtered:
                continue
            per_lang = self._keys.setdefault(language, {})
            per_lang.setdefault(filtered, set()).update(ids)
            if len(filtered) > self._max_len.get(language, 0):
                self._max_len[language] = len(filtered)

    def match(self, filtered: FilteredQuery) -> tuple[Segment, ...]:
        keys = self._keys.get(filtered.language, {})
        longest = self._max_len.get(filtered.language, 0)
        segments: list[Segment] = []
        tokens = filtered.tokens
        i = 0
        while i < len(tokens):
            matched = False
            for length in range(min(longest, len(tokens) - i), 0, -1):
                window = tokens[i : i + length]
                ids = keys.get(window)
                if ids:
                    segments.append(Segment(i, i + length, window, frozenset(ids)))
                    i += length
                    matched = True
                    break
            if not matched:
                segments.append(Segment(i, i + 1, (tokens[i],)))
                i += 1
        return tuple(segments)


def match_terms(
    filtered: FilteredQuery, ontology: Ontology, stopwords: StopwordTable | None = None
) -> tuple[Segment, ...]:
    return TermMatcher(ontology, stopwords).match(filtered)


class _TermAccumulator:
    def __init__(self) -> None:
        self._acc: dict[tuple, tuple[float, str]] = {}

    def put(self, term: EnrichedTerm) -> None:
        key = (term.kind, term.language, term.form, term.concept)
        current = self._acc.get(key)
        candidate = (term.weight, term.provenance)
        if current is None or (-candidate[0], PROVENANCE_RANK[candidate[1]]) < (
            -current[0],
            PROVENANCE_RANK[current[1]],
        ):
            self._acc[key] = candidate

    def terms(self) -> list[EnrichedTerm]:
        return [
            EnrichedTerm(kind=kind, language=language, form=form, concept=concept, weight=weight, provenance=prov)
            for (kind, language, form, concept), (weight, prov) in self._acc.items()
        ]


def _cap_terms(terms: list[EnrichedTerm], max_total: int) -> tuple[EnrichedTerm, ...]:
    # Drop lowest weights first; original terms outrank equal-weight
    # additions so the filtered tokens survive as long as the cap allows.
    ordered = sorted(
        terms,
        key=lambda t: (-t.weight, 0 if t.provenance == "original" else 1, t.sort_key()),
    )
    kept = ordered[:max_total]
    kept.sort(key=lambda t: (-t.weight, PROVENANCE_RANK[t.provenance], t.sort_key()))
    return tuple(kept)


def enrich(
    filtered: FilteredQuery,
    matches: tuple[Segment, ...],
    ontology: Ontology,
    policy: ExpansionPolicy | None = None,
) -> EnrichedQuery:
    """Build the enriched query from the filtered tokens and their matches.

    Every filtered token stays in as an original term at weight 1.0. Every
    matched expression is expanded; each expansion contributes its lemma
    form at the expansion weight, its variant forms at the same weight
    under provenance "variant", and its concepts under provenance
    "concept". Duplicate keys keep the maximum weight.
    """
    policy = policy or ExpansionPolicy()
    acc = _TermAccumulator()

    for token in filtered.tokens:
        acc.put(EnrichedTerm(kind="text", language=filtered.language, form=token, weight=1.0, provenance="original"))

    for segment in matches:
        for eid in sorted(segment.expressions):
            for result in expand(ontology, eid, policy):
                expr = ontology.expressions[result.expression]
                lemma_form = normalize_form(expr.lemma, expr.language)
                if lemma_form:
                    acc.put(
                        EnrichedTerm(
                            kind="text",
                            language=expr.language,
                            form=lemma_form,
                            weight=result.weight,
                            provenance=result.provenance,
                        )
                    )
                for variant in ontology.expression_variants.get(expr.id, ()):
                    variant_form = normalize_form(variant.form, expr.language)
                    if variant_form:
                        acc.put(
                            EnrichedTerm(
                                kind="text",
                                language=expr.language,
                                form=variant_form,
                                weight=result.weight,
                                provenance="variant",
                            )
                        )
                for cid in sorted(expr.concepts):
                    acc.put(
                        EnrichedTerm(kind="concept", concept=cid, weight=result.weight, provenance="concept")
                    )

    return EnrichedQuery(language=filtered.language, terms=_cap_terms(acc.terms(), policy.max_total_terms))


def reformulate(
    raw: RawQuery,
    ontology: Ontology,
    policy: ExpansionPolicy | None = None,
    stopwords: StopwordTable | None = None,
    default_language: str = "fr",
) -> EnrichedQuery:
    """detect language -> tokenize -> filter -> match -> enrich.

    Raises EmptyQuery when tokenization yields nothing. A query that
    consists only of stopwords is NOT an error: it produces an enriched
    query with zero terms, which searches to an empty result list.
    """
    text = raw.text.strip()
    if len(text) > MAX_QUERY_CHARS:
        raise OversizedQuery(f"query length {len(text)} exceeds {MAX_QUERY_CHARS} characters")
    language = raw.language or detect_language(text, default=default_language)
    tokens = tokenize(text, language)
    if not tokens:
        raise EmptyQuery("query contains no tokens")
    filtered = filter_tokens(tokens, language, stopwords)
    matches = match_terms(filtered, ontology, stopwords)
    return enrich(filtered, matches, ontology, policy)
