import random
from fractions import Fraction

import pytest

from kahlerdiff.schemes import FatPointScheme, ProjPoint


def random_scheme(rng: random.Random, max_n=3, max_s=5, max_mult=3) -> FatPointScheme:
    """Scheme with affine coordinates in {-4..4}, distinct support points."""
    n = rng.randint(1, max_n)
    s = rng.randint(1, max_s)
    points = set()
    while len(points) < s:
        points.add(tuple(rng.randint(-4, 4) for _ in range(n)))
    mults = [rng.randint(1, max_mult) for _ in range(s)]
    return FatPointScheme(n, [ProjPoint((1,) + p) for p in sorted(points)], mults)


@pytest.fixture
def rng():
    return random.Random(20260810)


@pytest.fixture
def four_points_p3():
    pts = [(1, 9, 0, 0), (1, 6, 0, 1), (1, 2, 3, 3), (1, 9, 3, 5)]
    return FatPointScheme(3, [ProjPoint(p) for p in pts], [1, 1, 1, 1])


@pytest.fixture
def conic8_points():
    coords = [(1, 1, 0), (1, 3, 0), (1, 0, 1), (1, 4, 1),
              (1, 0, 3), (1, 1, 4), (1, 4, 3), (1, 3, 4)]
    return [ProjPoint(p) for p in coords]


@pytest.fixture
def double_origin_p2():
    return FatPointScheme(2, [ProjPoint((1, 0, 0))], [2])
