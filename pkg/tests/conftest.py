import pytest

from liebialg.catalog import catalog


@pytest.fixture(scope="session")
def entries():
    return catalog()


@pytest.fixture(scope="session")
def built(entries):
    return {key: entry.factory() for key, entry in entries.items()}
