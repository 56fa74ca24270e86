import pytest

from catspan import corpus


@pytest.fixture(scope="session")
def categories():
    return corpus.corpus_categories()


@pytest.fixture(scope="session")
def presheaves(categories):
    return {name: corpus.corpus_presheaves(name, cat) for name, cat in categories.items()}


@pytest.fixture(scope="session")
def copresheaves(categories):
    return {name: corpus.corpus_copresheaves(name, cat) for name, cat in categories.items()}


@pytest.fixture(scope="session")
def metrics():
    return corpus.corpus_metrics()
