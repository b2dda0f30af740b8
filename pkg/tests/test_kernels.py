import os
import subprocess
import sys

import numpy as np
import pytest

from polypack import _kernels
from polypack._kernels import _sat_py

from conftest import random_convex


def _pairs(rng, count):
    for _ in range(count):
        a = random_convex(rng, int(rng.integers(3, 8)), 1.0, rng.uniform(-2, 2, 2))
        b = random_convex(rng, int(rng.integers(3, 8)), 1.0, rng.uniform(-2, 2, 2))
        yield a, b


def test_pure_pair_is_symmetric(rng):
    for a, b in _pairs(rng, 300):
        assert _sat_py.overlap_pair(a, b) == _sat_py.overlap_pair(b, a)


def test_pure_pair_agrees_with_point_sampling(rng):
    # a shared interior point certifies overlap; SAT must then report it
    for a, b in _pairs(rng, 200):
        pts = rng.uniform(-3.5, 3.5, size=(4000, 2))

        def inside(p, v):
            e = np.roll(v, -1, axis=0) - v
            cr = e[None, :, 0] * (p[:, None, 1] - v[None, :, 1]) - e[None, :, 1] * (p[:, None, 0] - v[None, :, 0])
            return np.all(cr > 0, axis=1)

        if np.any(inside(pts, a) & inside(pts, b)):
            assert _sat_py.overlap_pair(a, b)


def test_batch_matches_pair(rng):
    a = random_convex(rng, 6)
    batch = np.stack([random_convex(rng, 5, 1.0, rng.uniform(-2.5, 2.5, 2)) for _ in range(200)])
    got = _sat_py.overlap_batch(a, batch)
    assert list(got) == [_sat_py.overlap_pair(a, b) for b in batch]


@pytest.mark.skipif(_kernels.compiled is None, reason="compiled kernel not built")
def test_compiled_and_pure_agree(rng):
    for a, b in _pairs(rng, 500):
        assert bool(_kernels.compiled.overlap_pair(a, b)) == _sat_py.overlap_pair(a, b)
    a = random_convex(rng, 7)
    batch = np.ascontiguousarray(np.stack([random_convex(rng, 4, 1.0, rng.uniform(-2.5, 2.5, 2))
                                           for _ in range(300)]))
    c = np.asarray(_kernels.compiled.overlap_batch(a, batch), dtype=bool)
    assert np.array_equal(c, _sat_py.overlap_batch(a, batch))


def test_empty_batch():
    assert _kernels.overlap_batch(np.zeros((3, 2)), np.zeros((0, 3, 2))).shape == (0,)


def test_env_var_selects_the_pure_backend():
    env = dict(os.environ, POLYPACK_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from polypack import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
