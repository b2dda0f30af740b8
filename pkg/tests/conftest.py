import math
import random

import numpy as np
import pytest

from polypack import Instance
from polypack.classify import classify_all

SQRT2 = math.sqrt(2.0)


def hard_triangle_instance(seed: int, N: int, n: int) -> Instance:
    """``n`` triangles whose diameter is longer than N and that are too tall
    to be medium, so all of them classify as Hard with a group."""
    rng = random.Random(seed)
    polys = []
    while len(polys) < n:
        L = rng.uniform(1.0, 1.41) * N
        g = SQRT2 * N - L
        h = rng.uniform(max(g / 8 * 1.2, 0.01 * N), 0.5 * N)
        x = rng.uniform(0.2, 0.8) * L
        verts = [(0.0, 0.0), (L, 0.0), (x, h)]
        c = classify_all(Instance.build(N, [(0, verts, 1.0)]))[0]
        if c.cls == "Hard" and c.group is not None:
            polys.append((len(polys), verts, float(rng.randint(1, 9))))
    return Instance.build(N, polys)


def random_convex(rng: np.random.Generator, k: int, radius: float = 1.0, center=(0.0, 0.0)):
    ang = np.sort(rng.uniform(0, 2 * math.pi, size=k))
    return np.column_stack([center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def square(side=1.0, x=0.0, y=0.0):
    return [(x, y), (x + side, y), (x + side, y + side), (x, y + side)]
