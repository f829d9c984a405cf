import pytest

import drmonoid.constants as const
from drmonoid.common import CapExceededError, NormTooLargeError
from drmonoid.limits import Limits, get_limits, init_limits


def test_defaults():
    limits = get_limits()
    assert limits.orbit_cap == const.DEFAULT_ORBIT_CAP
    assert limits.conductor_norm_cap == const.DEFAULT_CONDUCTOR_NORM_CAP
    assert limits.search_box == const.DEFAULT_SEARCH_BOX
    assert limits.norm_bound == const.DEFAULT_NORM_BOUND
    assert get_limits() is limits


def test_init_once():
    limits = init_limits(orbit_cap=50)
    assert get_limits() is limits
    assert limits.orbit_cap == 50
    with pytest.raises(AssertionError):
        init_limits(orbit_cap=60)


@pytest.mark.parametrize("value", [0, -3, None])
def test_caps_must_be_positive(value):
    with pytest.raises(ValueError):
        Limits(orbit_cap=value)


def test_check():
    limits = Limits(orbit_cap=10)
    limits.check("orbit_cap", 10)
    with pytest.raises(CapExceededError, match="orbit cap exceeded: 11 > 10"):
        limits.check("orbit_cap", 11)


def test_norm_checks():
    limits = Limits(factor_norm_cap=100, principal_norm_cap=10)
    limits.check_factor_norm(100)
    with pytest.raises(NormTooLargeError):
        limits.check_factor_norm(101)
    with pytest.raises(CapExceededError):
        limits.check_principal_norm(11)


def test_as_dict():
    caps = Limits(search_box=3).as_dict()
    assert caps["search_box"] == 3
    assert set(caps) == {
        "orbit_cap",
        "conductor_norm_cap",
        "factor_norm_cap",
        "principal_norm_cap",
        "approximation_tries",
        "search_box",
        "norm_bound",
    }
