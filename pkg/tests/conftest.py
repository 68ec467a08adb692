import pytest

from kmult.models import (free_module, nonpoly_pair, random_battery,
                          vanishing_origin)

BATTERY_SEED = 7
BATTERY_COUNT = 20


@pytest.fixture(scope="session")
def battery():
    """The shared seeded battery; module caches persist across tests."""
    return random_battery(BATTERY_SEED, BATTERY_COUNT)


@pytest.fixture(scope="session")
def free_mod():
    return free_module()


@pytest.fixture(scope="session")
def nonpoly():
    return nonpoly_pair()


@pytest.fixture(scope="session")
def vo():
    return vanishing_origin()


@pytest.fixture(scope="session")
def catalog_presented(free_mod, nonpoly, vo):
    return [("free", free_mod), ("nonpoly_pair", nonpoly), ("vanishing_origin", vo)]
