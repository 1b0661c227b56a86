"""Multilingual, ontology-driven retrieval for administrative e-services.

The engine answers a user query in French, Arabic or English against a
catalog of administrative services, even when the service is described in
a different language or in different words: a three-level ontology
(concepts / per-language expressions / surface variants) reformulates the
query in two steps (stopword filtering, then bounded weighted enrichment),
and an inverted index with concept annotations does the retrieval. Click
feedback folds into per-user interest profiles that re-rank and feed
recommendations.
"""

__version__ = "0.1.0"
