import random
from fractions import Fraction

import pytest

from gridlab.geometry import InvalidRepresentation, Representation, hseg, vseg

F = Fraction


def random_unit_rep(rng: random.Random, n: int) -> Representation:
    """Random valid unit-segment arrangement on vertex ids 0..n-1."""
    while True:
        segments = {}
        for v in range(n):
            den = rng.choice((1, 2, 3, 4, 5, 8))
            x = F(rng.randrange(0, 4 * den), den)
            y = F(rng.randrange(0, 4 * den), den)
            segments[v] = vseg(x, y) if rng.random() < 0.5 else hseg(x, y)
        try:
            return Representation(segments, unit_mode=True)
        except InvalidRepresentation:
            continue


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
