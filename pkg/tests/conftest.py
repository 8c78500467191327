import random

import pytest


def random_values(rng: random.Random, n: int, sigma: int):
    return [rng.randrange(sigma) for _ in range(n)]


@pytest.fixture
def rng():
    return random.Random(12345)
