import pytest


@pytest.fixture(scope="session")
def catalog():
    from binomsum.catalog import load_catalog

    return {i.id: i for i in load_catalog()}
