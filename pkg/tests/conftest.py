import random

import pytest

from algorithm.unit_groups import build_tower


@pytest.fixture
def tower11():
    return build_tower(11)


@pytest.fixture
def tower81():
    return build_tower(81)


@pytest.fixture
def rng():
    return random.Random(20240611)
