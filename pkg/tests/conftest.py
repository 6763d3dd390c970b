import pytest

from iconparse.lexicon import builtin_lexicon


@pytest.fixture(scope="session")
def micro():
    return builtin_lexicon("micro")


@pytest.fixture(scope="session")
def demo():
    return builtin_lexicon("demo")
