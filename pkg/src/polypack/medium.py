"""Solver for medium polygons.

Group ``j`` owns two 45-degree containers ``R_j`` and ``R'_j`` of width
``sqrt(2) N - 2**(j-1)`` and height ``2**(j-3)`` hugging the anti-diagonal
band of the knapsack. A two-knapsack over (rounded) heights decides which
polygons of the group go into which container; inside a container the
bounding boxes are stacked along the short side.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classify import NEG_INF, Classification, group_key, hard_group_range
from .geometry import placement_from_transform
from .knapsack1d import KnapsackItem, two_knapsack
from .model import Item, PackingSolution

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Container:
    group_j: int
    which: str                  # "R" or "Rprime"
    corners: np.ndarray = field(repr=False)     # 4 x 2, counterclockwise
    origin: np.ndarray = field(repr=False)      # local (0, 0)
    e1: np.ndarray = field(repr=False)          # unit vector along the long side
    e2: np.ndarray = field(repr=False)          # unit vector along the short side

    @property
    def width(self) -> float:
        return float(np.hypot(*(self.corners[1] - self.corners[0])))

    @property
    def height(self) -> float:
        return 2.0 ** (self.group_j - 3)

    def to_world(self, local: np.ndarray) -> np.ndarray:
        local = np.asarray(local, dtype=float).reshape(-1, 2)
        return self.origin + local[:, :1] * self.e1 + local[:, 1:] * self.e2


def container_pair(N: float, j: int) -> tuple[Container, Container]:
    s = 2.0 ** (j - 3)
    a = 2.0 ** (j - 1) / SQRT2
    A = (a, N)
    B = (N, a)
    C = (N - s / SQRT2, 3 * s / SQRT2)
    D = (3 * s / SQRT2, N - s / SQRT2)
    # D, C, B, A is counterclockwise; D->C is the long side, D->A the short one
    corners = np.array([D, C, B, A], dtype=float)
    e1 = np.array([1.0, -1.0]) / SQRT2
    e2 = np.array([1.0, 1.0]) / SQRT2
    r = Container(j, "R", corners, corners[0].copy(), e1, e2)
    # R'_j is R_j turned by 180 degrees about the knapsack centre
    rc = N - corners
    rp = Container(j, "Rprime", rc, rc[0].copy(), -e1, -e2)
    return r, rp


def max_container_group(N: float) -> int:
    """Largest j with sqrt(2) N - 2**(j-1) > 0."""
    j = math.floor(math.log2(SQRT2 * N)) + 1
    while SQRT2 * N - 2.0 ** (j - 1) <= 0:
        j -= 1
    while SQRT2 * N - 2.0 ** j > 0:
        j += 1
    return j


def build_containers(N: float, j_lo: int | None = None) -> list[Container]:
    """Containers for every j in [j_lo, j*]; j_lo defaults to the hard-group lower end."""
    j_star = max_container_group(N)
    if j_lo is None:
        j_lo = hard_group_range(max(1, int(N)))[0]
    out = []
    for j in range(j_lo, j_star + 1):
        out.extend(container_pair(N, j))
    return out


def round_height(h: float, eps: float) -> float:
    """Smallest power of (1 + eps) that is >= h."""
    if h <= 0:
        return 0.0
    base = 1.0 + eps
    k = math.ceil(math.log(h) / math.log(base))
    v = base ** k
    while v < h:
        k += 1
        v = base ** k
    return v


@dataclass(frozen=True)
class MediumTrace:
    solution: PackingSolution
    loads: dict                 # (j, which) -> list of (id, rounded height, true height)


def medium_pipeline(items: Sequence[Item], classes: Sequence[Classification],
                    N: int, eps: float) -> MediumTrace:
    cls_by_id = {c.id: c for c in classes}
    groups: dict[int, list[Item]] = defaultdict(list)
    for it in items:
        g = cls_by_id[it.id].group
        if g is None or g is NEG_INF:
            continue
        groups[g].append(it)
    entries = []
    loads: dict = {}
    for j in sorted(groups, key=group_key):
        members = groups[j]
        cap = 2.0 ** (j - 3)
        est = {it.id: round_height(it.height, eps) for it in members}
        ks = [KnapsackItem(est[it.id], it.weight, it.id) for it in members
              if it.height <= cap]
        if not ks:
            continue
        s1, s2 = two_knapsack(ks, cap, eps)
        by_id = {it.id: it for it in members}
        for cont, chosen in zip(container_pair(N, j), (s1, s2)):
            if not chosen:
                continue
            stack = sorted(chosen)
            loads[(j, cont.which)] = [(i, est[i], by_id[i].height) for i in stack]
            y = 0.0
            for i in stack:
                it = by_id[i]
                t = cont.origin + y * cont.e2
                entries.append((i, placement_from_transform(it.poly, cont.e1[0], cont.e1[1],
                                                            t[0], t[1])))
                y += it.height
    weight = {it.id: it.weight for it in items}
    entries.sort(key=lambda e: e[0])
    sol = PackingSolution(tuple(entries), float(sum(weight[i] for i, _ in entries)), "Medium",
                          (f"medium: groups={len(groups)} containers={len(loads)}",))
    return MediumTrace(sol, loads)


def solve_medium(items: Sequence[Item], classes: Sequence[Classification], N: int,
                 eps: float = 0.1) -> PackingSolution:
    return medium_pipeline(items, classes, N, eps).solution
