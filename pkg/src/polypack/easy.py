"""Solver for easy polygons (bounding box fits into the knapsack unrotated).

Pipeline: an area knapsack picks a profitable set whose polygon area is at
most N^2; the set is cut into at most seven parts (three largest singletons
plus greedy runs of area <= N^2/4) and the heaviest part survives; its
bounding boxes are packed with the Steinberg packer and each polygon sits
in the lower-left corner of its box.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import Placement
from .knapsack1d import KnapsackItem, knapsack_fptas
from .model import Item, PackingSolution
from .steinberg import RectItem, pack_boxes_best_effort

BOX_QUANTUM = 2.0 ** -30


@dataclass(frozen=True)
class EasyTrace:
    selection: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]
    kept: tuple[int, ...]
    solution: PackingSolution

    def weight_of(self, ids, weights) -> float:
        return float(sum(weights[i] for i in ids))


def partition_parts(items: Sequence[Item], N: float) -> list[list[Item]]:
    """Three largest polygons alone, then maximal runs of area <= N^2/4.

    A selection whose whole area is at most N^2/4 is already such a run and
    stays in one piece.
    """
    order = sorted(items, key=lambda it: (-it.poly.area, it.id))
    cap = N * N / 4.0
    if sum(it.poly.area for it in order) <= cap * (1 + 1e-12):
        return [order] if order else []
    parts = [[it] for it in order[:3]]
    run: list[Item] = []
    acc = 0.0
    for it in order[3:]:
        a = it.poly.area
        if run and acc + a > cap:
            parts.append(run)
            run, acc = [], 0.0
        run.append(it)
        acc += a
    if run:
        parts.append(run)
    return parts


def _inflate(x: float, N: float) -> float:
    q = N * BOX_QUANTUM
    return min(max(math.ceil(x / q) * q, x), float(N)) if x <= N else x


def easy_pipeline(items: Sequence[Item], N: int, eps: float) -> EasyTrace:
    if not items:
        return EasyTrace((), (), (), PackingSolution.empty("Easy"))
    by_id = {it.id: it for it in items}
    ks = [KnapsackItem(it.poly.area, it.weight, it.id) for it in items]
    chosen = knapsack_fptas(ks, float(N) * N, eps)
    selection = [by_id[i] for i in sorted(chosen)]
    if not selection:
        return EasyTrace((), (), (), PackingSolution.empty("Easy"))
    parts = partition_parts(selection, N)
    kept = max(parts, key=lambda p: sum(it.weight for it in p))
    weights = {it.id: it.weight for it in kept}
    if len(kept) == 1:
        entries = [(kept[0].id, Placement())]
    else:
        boxes = [RectItem(_inflate(it.length, N), _inflate(it.height, N), it.id) for it in kept]
        pos, _ = pack_boxes_best_effort(boxes, float(N), float(N), weights)
        entries = [(i, Placement(x, y)) for i, (x, y) in pos.items()]
    entries.sort()
    total = float(sum(by_id[i].weight for i, _ in entries))
    sol = PackingSolution(tuple(entries), total, "Easy",
                          (f"easy: selected={len(selection)} parts={len(parts)} kept={len(kept)}",))
    return EasyTrace(tuple(it.id for it in selection),
                     tuple(tuple(it.id for it in p) for p in parts),
                     tuple(it.id for it in kept), sol)


def solve_easy(items: Sequence[Item], N: int, eps: float = 0.1) -> PackingSolution:
    return easy_pipeline(items, N, eps).solution
