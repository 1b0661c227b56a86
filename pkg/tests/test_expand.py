import random

import pytest

from egovsearch.errors import UnknownExpression
from egovsearch.ontology import (
    Concept,
    ExpansionPolicy,
    Expression,
    build_ontology,
    expand,
)

from .oracles import expand_oracle
from .strategies import random_ontology, random_policy


@pytest.fixture(scope="module")
def duty_free_triplet():
    """Concept with en/fr/ar expressions, explicit translations en<->fr, en<->ar."""
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
    )


def as_set(results):
    return {(r.expression, r.weight, r.provenance) for r in results}


def test_triplet_expansion(duty_free_triplet):
    results = as_set(expand(duty_free_triplet, "en:customs:duty_free"))
    assert results == {
        ("en:customs:duty_free", 1.0, "original"),
        ("fr:customs:franchise", 0.8, "translation"),
        ("ar:customs:iifaa", 0.8, "translation"),
    }


def test_isolated_expression(duty_free_triplet):
    o = build_ontology(
        sectors={"s"},
        expressions=[Expression(id="fr:s:solo", language="fr", lemma="seul")],
    )
    assert as_set(expand(o, "fr:s:solo")) == {("fr:s:solo", 1.0, "original")}


def test_cap_zero_keeps_only_seed(duty_free_triplet):
    policy = ExpansionPolicy(max_added_per_term=0)
    assert as_set(expand(duty_free_triplet, "en:customs:duty_free", policy)) == {
        ("en:customs:duty_free", 1.0, "original")
    }


def test_unknown_seed_raises(duty_free_triplet):
    with pytest.raises(UnknownExpression):
        expand(duty_free_triplet, "en:customs:ghost")


def test_synonym_beats_hierarchy_on_weight():
    o = build_ontology(
        sectors={"s"},
        concepts=[Concept(id="s:parent"), Concept(id="s:child", parents=frozenset({"s:parent"}))],
        expressions=[
            Expression(id="fr:s:a", language="fr", lemma="a", concepts=frozenset({"s:child"}),
                       synonyms=frozenset({"fr:s:b"})),
            Expression(id="fr:s:b", language="fr", lemma="b", concepts=frozenset({"s:parent"})),
        ],
    )
    # a-b are both explicit synonyms and hierarchy-adjacent; the stronger
    # synonym edge must win.
    results = {r.expression: r for r in expand(o, "fr:s:a")}
    assert results["fr:s:b"].weight == 0.8
    assert results["fr:s:b"].provenance == "synonym"


def test_two_hop_beats_weak_direct_edge():
    # direct hierarchy edge a-c (0.5) loses to a-b-c synonym chain (0.64)
    o = build_ontology(
        sectors={"s"},
        concepts=[Concept(id="s:p"), Concept(id="s:q", parents=frozenset({"s:p"}))],
        expressions=[
            Expression(id="fr:s:a", language="fr", lemma="a", concepts=frozenset({"s:q"}),
                       synonyms=frozenset({"fr:s:b"})),
            Expression(id="fr:s:b", language="fr", lemma="b", synonyms=frozenset({"fr:s:c"})),
            Expression(id="fr:s:c", language="fr", lemma="c", concepts=frozenset({"s:p"})),
        ],
    )
    results = {r.expression: r for r in expand(o, "fr:s:a", ExpansionPolicy(depth=2))}
    assert results["fr:s:c"].weight == pytest.approx(0.64)
    assert results["fr:s:c"].provenance == "synonym"


def test_depth_one_keeps_weak_direct_edge():
    o = build_ontology(
        sectors={"s"},
        concepts=[Concept(id="s:p"), Concept(id="s:q", parents=frozenset({"s:p"}))],
        expressions=[
            Expression(id="fr:s:a", language="fr", lemma="a", concepts=frozenset({"s:q"}),
                       synonyms=frozenset({"fr:s:b"})),
            Expression(id="fr:s:b", language="fr", lemma="b", synonyms=frozenset({"fr:s:c"})),
            Expression(id="fr:s:c", language="fr", lemma="c", concepts=frozenset({"s:p"})),
        ],
    )
    results = {r.expression: r for r in expand(o, "fr:s:a", ExpansionPolicy(depth=1))}
    assert results["fr:s:c"].weight == 0.5
    assert results["fr:s:c"].provenance == "hierarchy"


def test_truncation_drops_lowest_weight_ties_by_id():
    exprs = [
        Expression(id="fr:s:seed", language="fr", lemma="seed",
                   synonyms=frozenset({f"fr:s:n{i}" for i in range(4)}))
    ]
    exprs += [Expression(id=f"fr:s:n{i}", language="fr", lemma=f"n{i}") for i in range(4)]
    o = build_ontology(sectors={"s"}, expressions=exprs)
    results = expand(o, "fr:s:seed", ExpansionPolicy(max_added_per_term=2))
    ids = {r.expression for r in results}
    assert ids == {"fr:s:seed", "fr:s:n0", "fr:s:n1"}


def test_determinism(duty_free_triplet):
    a = expand(duty_free_triplet, "en:customs:duty_free")
    b = expand(duty_free_triplet, "en:customs:duty_free")
    assert a == b


def test_weight_bounds_on_fixture(mother_ontology):
    policy = ExpansionPolicy()
    cap = max(policy.weight_synonym, policy.weight_translation, policy.weight_hierarchy)
    for seed in sorted(mother_ontology.expressions):
        for result in expand(mother_ontology, seed, policy):
            if result.expression == seed:
                assert result.weight == 1.0
            else:
                assert 0.0 < result.weight <= cap


def test_oracle_equivalence_fixture(mother_ontology):
    for depth in (1, 2):
        policy = ExpansionPolicy(depth=depth, max_added_per_term=64)
        for seed in sorted(mother_ontology.expressions):
            got = as_set(expand(mother_ontology, seed, policy))
            want = expand_oracle(mother_ontology, seed, policy)
            assert got == want, f"seed={seed} depth={depth}"


def test_oracle_equivalence_random():
    rng = random.Random(20260810)
    for case in range(60):
        ontology = random_ontology(rng)
        policy = random_policy(rng)
        seed = rng.choice(sorted(ontology.expressions))
        got = as_set(expand(ontology, seed, policy))
        want = expand_oracle(ontology, seed, policy)
        assert got == want, f"case={case} seed={seed} policy={policy}"
