import pytest

from mosaic.acceptance import ComplexCache


@pytest.fixture(scope="session")
def cache():
    # building a complex dominates the suite's runtime; one shared cache
    # lets the acceptance run and the module tests reuse each build
    return ComplexCache()
