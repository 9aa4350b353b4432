import pytest

from statman.dsl.model import load
from statman.fixtures import FIXTURES


@pytest.fixture(scope="session")
def loaded():
    """All built-in fixtures, loaded once."""
    return {name: load(name) for name in FIXTURES}


@pytest.fixture(scope="session")
def kenmotsu(loaded):
    return loaded["kenmotsu5d"]
