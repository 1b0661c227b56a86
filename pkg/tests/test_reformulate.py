import pytest
from hypothesis import given, settings, strategies as st

from egovsearch.errors import EmptyQuery, OversizedQuery
from egovsearch.ontology import (
    Concept,
    ExpansionPolicy,
    Expression,
    ExpressionVariant,
    build_ontology,
    empty_ontology,
)
from egovsearch.reformulate import (
    EnrichedTerm,
    FilteredQuery,
    RawQuery,
    Segment,
    enrich,
    filter_tokens,
    match_terms,
    reformulate,
)
from egovsearch.textnorm import StopwordTable, tokenize


@pytest.fixture(scope="module")
def duty_free_ontology():
    return build_ontology(
        sectors={"customs"},
        concepts=[Concept(id="customs:duty_free")],
        expressions=[
            Expression(
                id="en:customs:duty_free", language="en", lemma="duty-free",
                concepts=frozenset({"customs:duty_free"}),
                translations=frozenset({"fr:customs:franchise", "ar:customs:iifaa"}),
            ),
            Expression(
                id="fr:customs:franchise", language="fr", lemma="franchise",
                concepts=frozenset({"customs:duty_free"}),
            ),
            Expression(
                id="ar:customs:iifaa", language="ar", lemma="إعفاء جمركي",
                concepts=frozenset({"customs:duty_free"}),
            ),
        ],
        variants=[ExpressionVariant(expression="en:customs:duty_free", form="duty free", kind="spelling")],
    )


# --- filtering ---------------------------------------------------------------


def test_filter_drops_fixture_stopword():
    got = filter_tokens(["admission", "en", "franchise"], "fr")
    assert got.tokens == ("admission", "franchise")


def test_filter_empty():
    assert filter_tokens([], "fr").tokens == ()


def test_filter_idempotent():
    tokens = tokenize("la déclaration en douane pour les voyageurs", "fr")
    once = filter_tokens(tokens, "fr")
    twice = filter_tokens(once.tokens, "fr")
    assert once.tokens == twice.tokens


def test_filter_keeps_order_and_duplicates():
    got = filter_tokens(["visa", "de", "visa", "touriste"], "fr")
    assert got.tokens == ("visa", "visa", "touriste")


# --- matching ----------------------------------------------------------------


def segments_as_tuples(segments):
    return [(s.start, s.end, set(s.expressions)) for s in segments]


def test_greedy_longest_match(duty_free_ontology):
    filtered = FilteredQuery("en", ("duty", "free", "allowance"))
    segments = match_terms(filtered, duty_free_ontology)
    assert segments_as_tuples(segments) == [
        (0, 2, {"en:customs:duty_free"}),
        (2, 3, set()),
    ]


def test_no_lexicon_all_unmatched():
    filtered = FilteredQuery("en", ("duty", "free"))
    segments = match_terms(filtered, empty_ontology())
    assert segments_as_tuples(segments) == [(0, 1, set()), (1, 2, set())]


def _exhaustive_segmentations(tokens, keys):
    """Every tiling of the token sequence into key-matches and single tokens."""
    results = []

    def rec(i, acc):
        if i == len(tokens):
            results.append(tuple(acc))
            return
        for length in range(len(tokens) - i, 0, -1):
            window = tuple(tokens[i : i + length])
            if window in keys:
                rec(i + length, acc + [(i, i + length, True)])
        rec(i + 1, acc + [(i, i + 1, False)])

    rec(0, [])
    return results


def test_overlapping_keys_leftmost_longest_wins():
    o = build_ontology(
        sectors={"s"},
        expressions=[
            Expression(id="en:s:df", language="en", lemma="duty free"),
            Expression(id="en:s:fa", language="en", lemma="free allowance"),
        ],
    )
    tokens = ("duty", "free", "allowance")
    segments = match_terms(FilteredQuery("en", tokens), o)
    assert segments_as_tuples(segments) == [
        (0, 2, {"en:s:df"}),
        (2, 3, set()),
    ]
    # cross-check against exhaustive segmentation: the greedy result is the
    # one that, scanning left to right, always takes the longest match first
    keys = {("duty", "free"), ("free", "allowance")}
    all_tilings = _exhaustive_segmentations(tokens, keys)
    greedy = min(
        all_tilings,
        key=lambda tiling: [(seg[0], -(seg[1] - seg[0]) if seg[2] else -1) for seg in tiling],
    )
    got = [(s.start, s.end, s.matched) for s in segments]
    assert got == list(greedy)


def test_stopword_filtered_multiword_key():
    o = build_ontology(
        sectors={"customs"},
        expressions=[
            Expression(id="fr:customs:aef", language="fr", lemma="admission en franchise"),
        ],
    )
    # the query arrives already filtered: "en" is gone on both sides
    filtered = FilteredQuery("fr", ("admission", "franchise"))
    segments = match_terms(filtered, o)
    assert segments_as_tuples(segments) == [(0, 2, {"fr:customs:aef"})]


def test_variant_forms_are_match_keys(duty_free_ontology):
    filtered = FilteredQuery("en", ("duty", "free"))
    segments = match_terms(filtered, duty_free_ontology)
    assert segments[0].expressions == frozenset({"en:customs:duty_free"})


# --- enrichment ----------------------------------------------------------------


def term_index(query):
    return {t.key: t for t in query.terms}


def test_enrich_duty_free_fixture(duty_free_ontology):
    filtered = FilteredQuery("en", ("duty", "free"))
    matches = match_terms(filtered, duty_free_ontology)
    enriched = enrich(filtered, matches, duty_free_ontology)
    terms = term_index(enriched)

    # every filtered token stays as an original term
    assert terms["en:duty"].weight == 1.0 and terms["en:duty"].provenance == "original"
    assert terms["en:free"].weight == 1.0
    # the matched lemma's key form
    assert terms["en:duty free"].weight == 1.0 and terms["en:duty free"].provenance == "original"
    # translations at 0.8
    assert terms["fr:franchise"].weight == 0.8 and terms["fr:franchise"].provenance == "translation"
    assert terms["ar:اعفاء جمركي"].weight == 0.8 and terms["ar:اعفاء جمركي"].provenance == "translation"
    # the concept term rides on the seed at weight 1.0
    assert terms["concept:customs:duty_free"].weight == 1.0
    assert terms["concept:customs:duty_free"].provenance == "concept"


def test_enrich_no_matches_passthrough():
    filtered = FilteredQuery("fr", ("visa",))
    enriched = enrich(filtered, match_terms(filtered, empty_ontology()), empty_ontology())
    assert [(t.key, t.weight, t.provenance) for t in enriched.terms] == [("fr:visa", 1.0, "original")]


def test_enrich_cap_keeps_only_originals(duty_free_ontology):
    filtered = FilteredQuery("en", ("duty", "free"))
    matches = match_terms(filtered, duty_free_ontology)
    uncapped = enrich(filtered, matches, duty_free_ontology)
    n_originals = sum(1 for t in uncapped.terms if t.provenance == "original")
    policy = ExpansionPolicy(max_total_terms=n_originals)
    capped = enrich(filtered, matches, duty_free_ontology, policy)
    assert len(capped.terms) == n_originals
    assert all(t.provenance == "original" for t in capped.terms)


def test_enrich_merges_duplicate_keys_max_weight():
    # same concept reachable from the seed (1.0) and from a translation (0.8):
    # the concept term must keep weight 1.0
    o = build_ontology(
        sectors={"s"},
        concepts=[Concept(id="s:c")],
        expressions=[
            Expression(id="fr:s:a", language="fr", lemma="alpha", concepts=frozenset({"s:c"}),
                       translations=frozenset({"en:s:b"})),
            Expression(id="en:s:b", language="en", lemma="beta", concepts=frozenset({"s:c"})),
        ],
    )
    filtered = FilteredQuery("fr", ("alpha",))
    enriched = enrich(filtered, match_terms(filtered, o), o)
    assert term_index(enriched)["concept:s:c"].weight == 1.0


# --- the whole pipeline --------------------------------------------------------


def test_reformulate_end_to_end(duty_free_ontology):
    enriched = reformulate(RawQuery("Duty-Free", language="en"), duty_free_ontology)
    terms = term_index(enriched)
    assert terms["concept:customs:duty_free"].weight == 1.0
    assert terms["fr:franchise"].weight == 0.8
    assert enriched.language == "en"


def test_reformulate_stopword_only_yields_zero_terms(duty_free_ontology):
    enriched = reformulate(RawQuery("de la pour", language="fr"), duty_free_ontology)
    assert enriched.terms == ()


def test_reformulate_empty_raises(duty_free_ontology):
    with pytest.raises(EmptyQuery):
        reformulate(RawQuery(""), duty_free_ontology)
    with pytest.raises(EmptyQuery):
        reformulate(RawQuery("?!,"), duty_free_ontology)


def test_reformulate_oversized_raises(duty_free_ontology):
    with pytest.raises(OversizedQuery):
        reformulate(RawQuery("a" * 1200), duty_free_ontology)


def test_reformulate_detects_arabic(duty_free_ontology):
    enriched = reformulate(RawQuery("تأشيرة"), duty_free_ontology)
    assert enriched.language == "ar"
    assert [(t.key, t.weight, t.provenance) for t in enriched.terms] == [("ar:تاشيرة", 1.0, "original")]


def test_conservatism_empty_ontology():
    queries = [
        "déclaration en douane",
        "importation de véhicules neufs",
        "visa touristique",
    ]
    for q in queries:
        enriched = reformulate(RawQuery(q, language="fr"), empty_ontology())
        filtered = filter_tokens(tokenize(q, "fr"), "fr")
        assert {t.key for t in enriched.terms} == {f"fr:{tok}" for tok in filtered.tokens}
        assert all(t.weight == 1.0 and t.provenance == "original" for t in enriched.terms)


def test_cross_language_reachability(duty_free_ontology):
    # a translates b => querying a's lemma surfaces b's lemma key at
    # weight_translation under the default depth-1 policy
    enriched = reformulate(RawQuery("franchise", language="fr"), duty_free_ontology)
    terms = term_index(enriched)
    assert terms["en:duty free"].weight == ExpansionPolicy().weight_translation
    assert terms["en:duty free"].provenance == "translation"


def test_monotone_weights_default_policy(mother_ontology):
    enriched = reformulate(RawQuery("déclaration en douane", language="fr"), mother_ontology)
    for term in enriched.terms:
        assert 0.0 < term.weight <= 1.0
        if term.provenance in ("synonym", "translation", "hierarchy"):
            assert term.weight < 1.0


@settings(max_examples=60)
@given(st.text(min_size=1, max_size=60))
def test_reformulate_deterministic_and_bounded(mother_ontology, text):
    try:
        first = reformulate(RawQuery(text), mother_ontology)
        second = reformulate(RawQuery(text), mother_ontology)
    except (EmptyQuery, OversizedQuery):
        return
    assert first == second
    assert len(first.terms) <= ExpansionPolicy().max_total_terms
