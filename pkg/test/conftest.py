import pytest

from drmonoid.field_core import make_field
from drmonoid.limits import reset_limits


@pytest.fixture(autouse=True)
def fresh_limits():
    reset_limits()
    yield
    reset_limits()


@pytest.fixture
def Q():
    return make_field("Q")


@pytest.fixture
def gaussian():
    return make_field(-4)


@pytest.fixture
def eisenstein():
    return make_field(-3)
