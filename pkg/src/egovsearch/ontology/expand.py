"""Weighted term expansion over the lexical graph.

Expressions are the nodes. Edges come from four places:

  * explicit synonym links          -> weight_synonym,     kind "synonym"
  * explicit translation links      -> weight_translation, kind "translation"
  * two expressions lexicalizing a shared concept -> weight_synonym, kind
    "synonym" when they share a language, "translation" otherwise
  * expressions of a parent/child concept (one hierarchy step) ->
    weight_hierarchy, kind "hierarchy"

Parallel edges between the same pair collapse to the strongest one (highest
weight, then strongest kind). The weight of an expansion result is the
max-product over simple paths of at most ``policy.depth`` edges from the
seed; its provenance is the kind of the first edge on the winning path.
Ties between equal-product paths are broken by the per-edge kind sequence,
then by the id sequence, which makes the whole operation deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ExpansionPolicy, Ontology, expression_or_raise

PROVENANCE_ORIGINAL = "original"
PROVENANCE_SYNONYM = "synonym"
PROVENANCE_TRANSLATION = "translation"
PROVENANCE_HIERARCHY = "hierarchy"

_EDGE_RANK = {PROVENANCE_SYNONYM: 0, PROVENANCE_TRANSLATION: 1, PROVENANCE_HIERARCHY: 2}
_KIND_BY_RANK = {rank: kind for kind, rank in _EDGE_RANK.items()}


@dataclass(frozen=True)
class Expansion:
    expression: str
    weight: float
    provenance: str


def _put_edge(adjacency: dict[str, dict[str, tuple[float, int]]], u: str, v: str, weight: float, kind: str) -> None:
    if u == v or weight <= 0.0:
        return
    rank = _EDGE_RANK[kind]
    current = adjacency.setdefault(u, {}).get(v)
    if current is None or (-weight, rank) < (-current[0], current[1]):
        adjacency[u][v] = (weight, rank)


def build_edges(ontology: Ontology, policy: ExpansionPolicy) -> dict[str, dict[str, tuple[float, int]]]:
    """Full adjacency map: node -> neighbor -> (weight, kind rank)."""
    adjacency: dict[str, dict[str, tuple[float, int]]] = {eid: {} for eid in ontology.expressions}

    for expr in ontology.expressions.values():
        for sid in expr.synonyms:
            if sid in ontology.expressions:
                _put_edge(adjacency, expr.id, sid, policy.weight_synonym, PROVENANCE_SYNONYM)
                _put_edge(adjacency, sid, expr.id, policy.weight_synonym, PROVENANCE_SYNONYM)
        for tid in expr.translations:
            if tid in ontology.expressions:
                _put_edge(adjacency, expr.id, tid, policy.weight_translation, PROVENANCE_TRANSLATION)
                _put_edge(adjacency, tid, expr.id, policy.weight_translation, PROVENANCE_TRANSLATION)

    # Co-lexicalization: expressions of one concept are implicit synonyms
    # (same language) or implicit translations (across languages), at
    # synonym weight either way.
    for members in ontology.concept_expressions.values():
        member_list = sorted(members)
        for i, u in enumerate(member_list):
            lang_u = ontology.expressions[u].language
            for v in member_list[i + 1 :]:
                kind = PROVENANCE_SYNONYM if ontology.expressions[v].language == lang_u else PROVENANCE_TRANSLATION
                _put_edge(adjacency, u, v, policy.weight_synonym, kind)
                _put_edge(adjacency, v, u, policy.weight_synonym, kind)

    # One hierarchy step: expressions of a parent concept vs expressions of
    # its child concepts.
    for concept in ontology.concepts.values():
        child_exprs = ontology.concept_expressions.get(concept.id, frozenset())
        if not child_exprs:
            continue
        for parent in concept.parents:
            for u in child_exprs:
                for v in ontology.concept_expressions.get(parent, frozenset()):
                    _put_edge(adjacency, u, v, policy.weight_hierarchy, PROVENANCE_HIERARCHY)
                    _put_edge(adjacency, v, u, policy.weight_hierarchy, PROVENANCE_HIERARCHY)
    return adjacency


_PathState = tuple[float, tuple[int, ...], tuple[str, ...]]  # product, kind ranks, node ids


def _path_key(state: _PathState) -> tuple[float, tuple[int, ...], tuple[str, ...]]:
    product, ranks, ids = state
    return (-product, ranks, ids)


def expand(ontology: Ontology, seed: str, policy: ExpansionPolicy | None = None) -> tuple[Expansion, ...]:
    """Expand one seed expression into weighted, provenance-tagged neighbors.

    The seed itself is always present with weight 1.0 and provenance
    "original". Non-seed results are capped at ``policy.max_added_per_term``,
    dropping the lowest weights first (ties by ascending id). Results come
    back sorted by descending weight, then ascending id.
    """
    policy = policy or ExpansionPolicy()
    expression_or_raise(ontology, seed)
    adjacency = build_edges(ontology, policy)

    best: dict[str, _PathState] = {seed: (1.0, (), ())}

    def walk(node: str, state: _PathState) -> None:
        product, ranks, ids = state
        if len(ranks) >= policy.depth:
            return
        for neighbor in sorted(adjacency.get(node, {})):
            if neighbor == seed or neighbor in ids:
                continue
            weight, rank = adjacency[node][neighbor]
            candidate = (product * weight, ranks + (rank,), ids + (neighbor,))
            current = best.get(neighbor)
            if current is None or _path_key(candidate) < _path_key(current):
                best[neighbor] = candidate
            walk(neighbor, candidate)

    walk(seed, best[seed])

    added = [
        Expansion(eid, product, _KIND_BY_RANK[ranks[0]])
        for eid, (product, ranks, _) in best.items()
        if eid != seed
    ]
    added.sort(key=lambda e: (-e.weight, e.expression))
    kept = added[: policy.max_added_per_term]
    results = [Expansion(seed, 1.0, PROVENANCE_ORIGINAL)] + kept
    results.sort(key=lambda e: (-e.weight, e.expression))
    return tuple(results)
