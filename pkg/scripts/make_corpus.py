"""Regenerate the shipped benchmark corpus (60 instances, at most three
polygons each, mixed classes, N <= 32)."""
from pathlib import Path

import numpy as np

from polypack.io import generate_instance, serialize_instance

OUT = Path(__file__).resolve().parent.parent / "corpus"
SIDES = (4, 8, 16, 32)
CLASSES = ("easy", "medium", "hard")


def main() -> None:
    OUT.mkdir(exist_ok=True)
    rng = np.random.default_rng(2024)
    for k in range(60):
        N = int(rng.choice(SIDES))
        n = int(rng.integers(1, 4))
        # every third instance is all-class mixed, the rest random
        picks = CLASSES[:n] if k % 3 == 0 else tuple(rng.choice(CLASSES, size=n))
        counts = {c: picks.count(c) for c in CLASSES}
        profile = ("uniform", "triangles", "near_diagonal")[k % 4 % 3]
        inst = generate_instance(1000 + k, N, counts, profile)
        (OUT / f"inst_{k:03d}.txt").write_text(
            f"# seed={1000 + k} profile={profile}\n" + serialize_instance(inst), encoding="utf-8")


if __name__ == "__main__":
    main()
