from __future__ import annotations

from pathlib import Path

import pytest

from egovsearch.catalog import ingest
from egovsearch.indexing import build_index
from egovsearch.ontology import import_canonical, merge
from egovsearch.reformulate import TermMatcher

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def customs_ontology():
    return import_canonical((FIXTURES / "customs.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def tourism_ontology():
    return import_canonical((FIXTURES / "tourism.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def mother_ontology(customs_ontology, tourism_ontology):
    return merge([customs_ontology, tourism_ontology])


@pytest.fixture(scope="session")
def fixture_catalog():
    return ingest((FIXTURES / "services.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def fixture_index(fixture_catalog, mother_ontology):
    return build_index(fixture_catalog, mother_ontology)


@pytest.fixture(scope="session")
def fixture_matcher(mother_ontology):
    return TermMatcher(mother_ontology)
