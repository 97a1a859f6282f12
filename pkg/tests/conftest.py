import random

import pytest


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def make_rng(seed: int = 1) -> random.Random:
    return random.Random(seed)
