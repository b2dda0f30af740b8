"""Compare the compiled and the NumPy separating-axis kernels.

Usage: python3 benchmarks/bench_kernels.py [--pairs 20000] [--batch 5000]

Both backends get the same random convex polygons; the script checks that
their answers agree and prints the time per call and the speedup.
"""
import argparse
import time

import numpy as np

from polypack import _kernels
from polypack.geometry import convex_hull


def random_polys(rng, count, k=6, spread=4.0):
    out = []
    while len(out) < count:
        pts = rng.normal(size=(k, 2)) + rng.uniform(-spread, spread, size=2)
        try:
            out.append(convex_hull(pts).vertices)
        except ValueError:
            continue
    return out


def pad(polys):
    """Same vertex count for a batch: repeat the last vertex is not allowed, so
    keep only polygons of the most common size."""
    sizes = [len(p) for p in polys]
    k = max(set(sizes), key=sizes.count)
    return np.ascontiguousarray(np.array([p for p in polys if len(p) == k]))


def timed(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        res = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, res


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=20000)
    ap.add_argument("--batch", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    if _kernels.compiled is None:
        print("compiled kernel not built; only the NumPy backend is available")
    backends = [("python", _kernels.pure)]
    if _kernels.compiled is not None:
        backends.insert(0, ("cython", _kernels.compiled))

    polys = random_polys(rng, 2 * args.pairs)
    a_list, b_list = polys[::2], polys[1::2]

    def run_pairs(mod):
        return [bool(mod.overlap_pair(a, b)) for a, b in zip(a_list, b_list)]

    anchor = random_polys(rng, 1)[0]
    batch = pad(random_polys(rng, args.batch))

    def run_batch(mod):
        return np.asarray(mod.overlap_batch(anchor, batch), dtype=bool)

    rows = {}
    for name, mod in backends:
        tp, rp = timed(run_pairs, mod)
        tb, rb = timed(run_batch, mod)
        rows[name] = (tp, tb, rp, rb)
    print(f"{'backend':<8} {'pair us/call':>13} {'batch us/poly':>14}")
    for name, (tp, tb, _, _) in rows.items():
        print(f"{name:<8} {1e6 * tp / len(a_list):>13.2f} {1e6 * tb / len(batch):>14.3f}")
    if "cython" in rows:
        c, p = rows["cython"], rows["python"]
        assert c[2] == p[2], "pair results differ between backends"
        assert np.array_equal(c[3], p[3]), "batch results differ between backends"
        print(f"speedup  pair x{p[0] / c[0]:.1f}  batch x{p[1] / c[1]:.1f}  (results identical)")


if __name__ == "__main__":
    main()
