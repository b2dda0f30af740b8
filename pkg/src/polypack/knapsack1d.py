"""One-dimensional knapsack solvers used by the easy and medium pipelines."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

EXACT_TWO_LIMIT = 18


class CapacityNegative(ValueError):
    pass


@dataclass(frozen=True)
class KnapsackItem:
    size: float
    profit: float
    id: int

    def __post_init__(self):
        if not math.isfinite(self.size) or self.size < 0:
            raise ValueError(f"item {self.id}: size must be finite and >= 0")
        if not self.profit > 0:
            raise ValueError(f"item {self.id}: profit must be > 0")


def _units_up(size: float, unit: float) -> int:
    # guard against 3.0000000000000004 / 1.0 style spill-over
    r = size / unit
    k = math.floor(r)
    return int(k if r - k <= 1e-12 * max(1.0, r) else k + 1)


def knapsack_exact(items: Sequence[KnapsackItem], capacity: float, resolution: int) -> set[int]:
    """Optimal selection after rounding sizes up to multiples of ``capacity/resolution``."""
    if capacity < 0:
        raise CapacityNegative(capacity)
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    if capacity == 0:
        return {it.id for it in items if it.size == 0}
    unit = capacity / resolution
    C = resolution
    best = np.zeros(C + 1)
    take = np.zeros((len(items), C + 1), dtype=bool)
    for k, it in enumerate(items):
        s = _units_up(it.size, unit)
        if s > C:
            continue
        cand = np.full(C + 1, -np.inf)
        cand[s:] = best[:C + 1 - s] + it.profit
        better = cand > best
        take[k] = better
        best = np.where(better, cand, best)
    c = int(np.argmax(best))
    chosen: set[int] = set()
    for k in range(len(items) - 1, -1, -1):
        if take[k, c]:
            chosen.add(items[k].id)
            c -= _units_up(items[k].size, unit)
    return chosen


def knapsack_fptas(items: Sequence[KnapsackItem], capacity: float, eps: float) -> set[int]:
    """Profit-scaling FPTAS: feasible, profit >= (1 - eps) * optimum."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if capacity < 0:
        raise CapacityNegative(capacity)
    fit = [it for it in items if it.size <= capacity]
    if not fit:
        return set()
    n = len(fit)
    pmax = max(it.profit for it in fit)
    scale = eps * pmax / n
    vals = [int(math.floor(it.profit / scale)) for it in fit]
    P = sum(vals)
    # min total size reaching each scaled profit
    minsize = np.full(P + 1, np.inf)
    minsize[0] = 0.0
    take = np.zeros((n, P + 1), dtype=bool)
    for k, (it, v) in enumerate(zip(fit, vals)):
        if v == 0:
            continue
        cand = np.full(P + 1, np.inf)
        cand[v:] = minsize[:P + 1 - v] + it.size
        better = cand < minsize
        take[k] = better
        minsize = np.where(better, cand, minsize)
    ok = np.flatnonzero(minsize <= capacity)
    p = int(ok.max())
    chosen: set[int] = set()
    for k in range(n - 1, -1, -1):
        if take[k, p]:
            chosen.add(fit[k].id)
            p -= vals[k]
    # zero-valued (tiny profit) items can still ride along in leftover space
    load = sum(it.size for it in fit if it.id in chosen)
    for it, v in sorted(zip(fit, vals), key=lambda t: -t[0].profit):
        if v == 0 and it.id not in chosen and load + it.size <= capacity:
            chosen.add(it.id)
            load += it.size
    return chosen


def two_knapsack(items: Sequence[KnapsackItem], capacity: float,
                 eps: float) -> tuple[set[int], set[int]]:
    """Two disjoint selections, each of total size <= ``capacity``.

    Up to ``EXACT_TWO_LIMIT`` items the optimum is found by branch and bound;
    larger inputs use a 2-D DP over sizes rounded up to multiples of
    ``eps * capacity / (2 n)``.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if capacity < 0:
        raise CapacityNegative(capacity)
    fit = [it for it in items if it.size <= capacity]
    if not fit:
        return set(), set()
    if len(fit) <= EXACT_TWO_LIMIT:
        return _two_exact(fit, capacity)
    return _two_rounded_dp(fit, capacity, eps)


def _two_exact(items: Sequence[KnapsackItem], cap: float) -> tuple[set[int], set[int]]:
    order = sorted(items, key=lambda it: -(it.profit / it.size if it.size > 0 else math.inf))
    n = len(order)
    sizes = [it.size for it in order]
    profits = [it.profit for it in order]
    best_p = -1.0
    best: tuple[list[int], list[int]] = ([], [])
    assign = [0] * n

    def bound(k: int, room: float) -> float:
        b = 0.0
        for i in range(k, n):
            if sizes[i] <= room:
                room -= sizes[i]
                b += profits[i]
            else:
                if sizes[i] > 0:
                    b += profits[i] * room / sizes[i]
                break
        return b

    def rec(k: int, l1: float, l2: float, p: float) -> None:
        nonlocal best_p, best
        if p > best_p:
            best_p = p
            best = ([order[i].id for i in range(k) if assign[i] == 1],
                    [order[i].id for i in range(k) if assign[i] == 2])
        if k == n:
            return
        if p + bound(k, 2 * cap - l1 - l2) <= best_p:
            return
        s = sizes[k]
        if l1 + s <= cap:
            assign[k] = 1
            rec(k + 1, l1 + s, l2, p + profits[k])
        if l2 + s <= cap and l1 != l2:
            assign[k] = 2
            rec(k + 1, l1, l2 + s, p + profits[k])
        assign[k] = 0
        rec(k + 1, l1, l2, p)

    rec(0, 0.0, 0.0, 0.0)
    return set(best[0]), set(best[1])


def _two_rounded_dp(items: Sequence[KnapsackItem], cap: float,
                    eps: float) -> tuple[set[int], set[int]]:
    n = len(items)
    q = eps * cap / (2 * n)
    C = int(math.floor(cap / q + 1e-9))
    units = [_units_up(it.size, q) for it in items]
    best = np.full((C + 1, C + 1), -np.inf)
    best[0, 0] = 0.0
    choice = np.zeros((n, C + 1, C + 1), dtype=np.int8)
    for k, (it, s) in enumerate(zip(items, units)):
        new = best.copy()
        if s <= C:
            c1 = np.full_like(best, -np.inf)
            c1[s:, :] = best[:C + 1 - s, :] + it.profit
            m1 = c1 > new
            new = np.where(m1, c1, new)
            c2 = np.full_like(best, -np.inf)
            c2[:, s:] = best[:, :C + 1 - s] + it.profit
            m2 = c2 > new
            new = np.where(m2, c2, new)
            choice[k] = np.where(m2, 2, np.where(m1, 1, 0))
        best = new
    a, b = np.unravel_index(int(np.argmax(best)), best.shape)
    s1: set[int] = set()
    s2: set[int] = set()
    for k in range(n - 1, -1, -1):
        ch = choice[k, a, b]
        if ch == 1:
            s1.add(items[k].id)
            a -= units[k]
        elif ch == 2:
            s2.add(items[k].id)
            b -= units[k]
    return s1, s2
