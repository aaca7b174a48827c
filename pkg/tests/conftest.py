"""Shared fixtures.

The omega censuses at the four report scales are the expensive shared
inputs (a few hundred ms each at 10^7); everything downstream reuses
them through session scope.
"""

import pytest

from omega_proximity.census import census
from omega_proximity.primeset import power_prime_set

REPORT_GRID = (10_000, 100_000, 1_000_000, 10_000_000)


@pytest.fixture(scope="session")
def power_set_5():
    return power_prime_set(2.0, 5)


@pytest.fixture(scope="session")
def omega_census_by_x():
    return {x: census(x, "omega") for x in REPORT_GRID}
