import pytest
from hypothesis import settings

from catalog import builtin
from config import reset_settings

settings.register_profile("medialdd", deadline=None, derandomize=True, max_examples=100)
settings.load_profile("medialdd")


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def tamura():
    return builtin("tamura")


@pytest.fixture
def flip2():
    return builtin("flip2")


@pytest.fixture
def comm4():
    return builtin("comm-nonassoc4")
