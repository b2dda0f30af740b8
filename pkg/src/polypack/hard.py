"""Hard polygons: discretised placement sets, bounded subset enumeration
with incremental overlap pruning, and the resource-augmented variant.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .classify import Classification, classify_all, group_key
from .geometry import REL_TOL, ConvexPolygon, Placement, shrink_vertices
from .model import Instance, Item, PackingSolution, SolverConfig

SQRT2 = math.sqrt(2.0)


class EmptyPlacementSet(ValueError):
    pass


@dataclass
class PlacementSet:
    id: int
    placements: list[Placement]
    verts: np.ndarray = field(repr=False)       # (M, k, 2) placed vertices
    shrunk: np.ndarray = field(repr=False)      # (M, k', 2) placed, shrunk by the tolerance
    ghost: bool = False                         # polygon vanishes when shrunk

    def __len__(self) -> int:
        return len(self.placements)


def _rotations(v: np.ndarray, cos: np.ndarray, sin: np.ndarray, pivot: np.ndarray) -> np.ndarray:
    """Clockwise rotations of ``v`` about ``pivot``: shape (A, k, 2)."""
    rel = v - pivot
    out = np.empty((len(cos), len(v), 2))
    out[:, :, 0] = pivot[0] + cos[:, None] * rel[None, :, 0] + sin[:, None] * rel[None, :, 1]
    out[:, :, 1] = pivot[1] - sin[:, None] * rel[None, :, 0] + cos[:, None] * rel[None, :, 1]
    return out


def _axis_steps(lo: float, hi: float, step: float, tol: float) -> np.ndarray:
    if hi < lo - tol:
        return np.empty(0)
    if hi <= lo:
        return np.array([0.5 * (lo + hi)])
    k = int(math.floor((hi - lo) / step + 1e-9))
    xs = lo + step * np.arange(k + 1)
    if hi - xs[-1] > tol:
        xs = np.append(xs, hi)
    return xs


def build_placement_set(pid: int, poly: ConvexPolygon, side: float, angles: np.ndarray,
                        pos_step: float, tol: float, extra: Iterable[Placement] = (),
                        touching: bool = True) -> PlacementSet:
    """Placements for the given clockwise angles, translations on a grid
    anchored at each angle's feasible-translation box (box corners always
    included), plus optional extra placements that keep the polygon inside."""
    v = poly.vertices
    pivot = v[0].copy()
    cos, sin = np.cos(angles), np.sin(angles)
    if touching:
        # diameter along a knapsack diagonal: clockwise angles pi/4 + m pi/2
        ta = math.pi / 4 + np.arange(4) * math.pi / 2
        cos = np.concatenate([cos, np.cos(ta)])
        sin = np.concatenate([sin, np.sin(ta)])
    rot = _rotations(v, cos, sin, pivot)
    lo = rot.min(axis=1)
    hi = rot.max(axis=1)
    places: list[Placement] = []
    blocks = []
    n_grid = len(angles)
    for a in range(len(cos)):
        xs = _axis_steps(-lo[a, 0], side - hi[a, 0], pos_step, tol)
        ys = _axis_steps(-lo[a, 1], side - hi[a, 1], pos_step, tol)
        if len(xs) == 0 or len(ys) == 0:
            continue
        if a >= n_grid:
            # centre the diameter on the diagonal chord it lies along
            (i, j) = poly.diameter_pair
            mid = 0.5 * (rot[a, i] + rot[a, j])
            d = rot[a, j] - rot[a, i]
            target = np.array([0.5 * side, 0.5 * side])
            t = target - mid
            if -lo[a, 0] - tol <= t[0] <= side - hi[a, 0] + tol and \
                    -lo[a, 1] - tol <= t[1] <= side - hi[a, 1] + tol and abs(abs(d[0]) - abs(d[1])) < 1e-9 * side:
                xs, ys = np.array([t[0]]), np.array([t[1]])
            else:
                continue
        c, s = float(cos[a]), float(sin[a])
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        for x, y in zip(gx.ravel(), gy.ravel()):
            places.append(Placement(float(x), float(y), c, s))
        blocks.append(rot[a][None, :, :] + np.stack([gx.ravel(), gy.ravel()], axis=1)[:, None, :])
    for p in extra:
        pv = _place(v, p, pivot)
        if pv.min() >= -tol and pv.max() <= side + tol:
            places.append(p)
            blocks.append(pv[None])
    if not places:
        raise EmptyPlacementSet(f"polygon {pid} has no placement at this resolution")
    verts = np.concatenate(blocks, axis=0)
    # drop exact duplicates (touching placements may coincide with grid ones)
    key = np.round(verts.reshape(len(verts), -1) / max(tol, 1e-300)).astype(np.int64)
    _, first = np.unique(key, axis=0, return_index=True)
    first.sort()
    verts = verts[first]
    places = [places[i] for i in first]
    # near-diagonal (far from the centre) first
    (i, j) = poly.diameter_pair
    mid = 0.5 * (verts[:, i] + verts[:, j])
    dist = np.hypot(mid[:, 0] - side / 2, mid[:, 1] - side / 2)
    order = np.argsort(-np.round(dist / max(tol, 1e-300)), kind="stable")
    verts = verts[order]
    places = [places[i] for i in order]
    sv = shrink_vertices(v, tol)
    ghost = len(sv) < 3
    if ghost:
        shrunk = verts
    else:
        shrunk = np.stack([_place(sv, p, pivot) for p in places]) if len(places) < 64 else \
            _place_many(sv, places, pivot)
    return PlacementSet(pid, places, verts, np.ascontiguousarray(shrunk), ghost)


def _place(v: np.ndarray, p: Placement, pivot: np.ndarray) -> np.ndarray:
    rel = v - pivot
    out = np.empty_like(rel)
    out[:, 0] = pivot[0] + p.cos_a * rel[:, 0] + p.sin_a * rel[:, 1] + p.dx
    out[:, 1] = pivot[1] - p.sin_a * rel[:, 0] + p.cos_a * rel[:, 1] + p.dy
    return out


def _place_many(v: np.ndarray, places: Sequence[Placement], pivot: np.ndarray) -> np.ndarray:
    arr = np.array([(p.dx, p.dy, p.cos_a, p.sin_a) for p in places])
    rot = _rotations(v, arr[:, 2], arr[:, 3], pivot)
    rot[:, :, 0] += arr[:, None, 0]
    rot[:, :, 1] += arr[:, None, 1]
    return rot


def placement_set(poly: ConvexPolygon, N: float, mode: str = "exact", cfg: SolverConfig | None = None,
                  n: int = 1, delta: float = 0.0, pid: int = -1) -> PlacementSet:
    """Grid placements: translations step N/(c n), angles step pi/(c n) over
    [0, 2 pi), plus diameter-on-diagonal touching placements.

    ``mode`` is ``"exact"`` (knapsack side N) or ``"ra"`` (side (1+delta) N).
    """
    cfg = cfg or SolverConfig()
    if mode not in ("exact", "ra"):
        raise ValueError("mode must be 'exact' or 'ra'")
    side = float(N) * (1.0 + delta if mode == "ra" else 1.0)
    if poly.diameter_len > SQRT2 * side * (1 + 1e-12):
        raise EmptyPlacementSet(f"polygon {pid} is longer than the knapsack diagonal")
    m = cfg.grid_divisor * max(1, n)
    angles = np.arange(2 * m) * (math.pi / m)
    return build_placement_set(pid, poly, side, angles, side / m, REL_TOL * N)


# ---------------------------------------------------------------- search

class _Budget:
    __slots__ = ("left",)

    def __init__(self, n: int):
        self.left = n


def find_joint_placement(sets: Sequence[PlacementSet], budget: _Budget) -> list[int] | None:
    """Depth-first search for pairwise non-overlapping placements.

    Returns one index per set, or None if none exists (or the budget ran out).
    """
    if not sets:
        return []
    order = sorted(range(len(sets)), key=lambda i: len(sets[i]))
    chosen: list[int] = [0] * len(sets)
    placed: list[np.ndarray] = []

    def rec(d: int) -> bool:
        if d == len(order):
            return True
        s = sets[order[d]]
        mask = np.ones(len(s), dtype=bool)
        if not s.ghost:
            for pv in placed:
                if pv is None:
                    continue
                mask &= ~_kernels.overlap_batch(pv, s.shrunk)
                if not mask.any():
                    return False
        for idx in np.flatnonzero(mask):
            budget.left -= 1
            if budget.left < 0:
                return False
            chosen[order[d]] = int(idx)
            placed.append(None if s.ghost else s.shrunk[idx])
            if rec(d + 1):
                return True
            placed.pop()
        return False

    return chosen if rec(0) else None


def _subsets(items: Sequence[Item], groups: dict[int, object], per_group: int,
             budget: int) -> list[tuple[Item, ...]]:
    out: list[tuple[Item, ...]] = []
    items = sorted(items, key=lambda it: (-it.weight, it.id))

    def rec(start: int, cur: list[Item], used: dict):
        if cur:
            out.append(tuple(cur))
        if len(cur) == budget:
            return
        for k in range(start, len(items)):
            g = groups[items[k].id]
            if used.get(g, 0) >= per_group:
                continue
            used[g] = used.get(g, 0) + 1
            cur.append(items[k])
            rec(k + 1, cur, used)
            cur.pop()
            used[g] -= 1

    rec(0, [], {})
    out.sort(key=lambda s: (-sum(it.weight for it in s), len(s), [it.id for it in s]))
    return out


def enumerate_packings(items: Sequence[Item], groups: dict[int, object], sets: dict[int, PlacementSet],
                       per_group: int, budget: int, node_budget: int, producer: str,
                       inst_weight: dict[int, float]) -> PackingSolution:
    """Heaviest subset (by the caps) with a joint placement found by DFS."""
    cands = [it for it in items if it.id in sets]
    infeasible: set[frozenset[int]] = set()
    total = _Budget(node_budget * 20)
    for sub in _subsets(cands, groups, per_group, budget):
        ids = frozenset(it.id for it in sub)
        if len(ids) > 1 and any(frozenset(p) in infeasible
                                for p in itertools.combinations(ids, len(ids) - 1)):
            infeasible.add(ids)
            continue
        local = _Budget(min(node_budget, max(0, total.left)))
        got = find_joint_placement([sets[it.id] for it in sub], local)
        total.left -= node_budget - local.left if local.left >= 0 else node_budget
        if got is not None:
            entries = [(it.id, sets[it.id].placements[k]) for it, k in zip(sub, got)]
            return PackingSolution.of_weights(entries, inst_weight, producer,
                                              (f"{producer}: subset of {len(sub)} found",))
        infeasible.add(ids)
        if total.left <= 0:
            break
    # enumeration stopped early: fall back to the heaviest single polygon
    if cands:
        best = max(cands, key=lambda it: (it.weight, -it.id))
        entries = [(best.id, sets[best.id].placements[0])]
        return PackingSolution.of_weights(entries, inst_weight, producer,
                                          (f"{producer}: budget exhausted, single fallback",))
    return PackingSolution.empty(producer)


def solve_hard_enum(items: Sequence[Item], classes: Sequence[Classification], N: int,
                    cfg: SolverConfig | None = None) -> PackingSolution:
    cfg = cfg or SolverConfig()
    cls_by_id = {c.id: c for c in classes}
    hard = [it for it in items if cls_by_id[it.id].cls == "Hard" and cls_by_id[it.id].group is not None]
    if not hard:
        return PackingSolution.empty("HardEnum")
    sets = {}
    n = len(hard)
    for it in hard:
        try:
            sets[it.id] = placement_set(it.poly, N, "exact", cfg, n, pid=it.id)
        except EmptyPlacementSet:
            continue
    groups = {it.id: cls_by_id[it.id].group for it in hard}
    weights = {it.id: it.weight for it in items}
    return enumerate_packings(hard, groups, sets, cfg.per_group, cfg.hard_budget,
                              cfg.node_budget, "HardEnum", weights)


# ---------------------------------------------------------------- augmentation

def ra_group_bound(delta: float) -> int:
    return math.ceil(math.log2((1.0 + delta) / delta) + 1.0)


@dataclass(frozen=True)
class RATrace:
    solution: PackingSolution
    shrunk: Instance
    hard_groups: tuple
    candidates: dict


def ra_pipeline(inst: Instance, delta: float, cfg: SolverConfig | None = None) -> RATrace:
    from .easy import solve_easy
    from .medium import solve_medium

    if not delta > 0:
        raise ValueError("delta must be > 0")
    cfg = cfg or inst.config
    f = 1.0 / (1.0 + delta)
    small = Instance(inst.N, tuple(Item(it.id, ConvexPolygon(it.poly.vertices * f, check=False),
                                        it.weight, it.original) for it in inst.items), cfg)
    classes = classify_all(small)
    by_cls: dict[str, list[Item]] = defaultdict(list)
    for it, c in zip(small.items, classes):
        by_cls[c.cls].append(it)
    hard_groups = tuple(sorted({c.group for c in classes if c.cls == "Hard" and c.group is not None},
                               key=group_key))
    cands = {
        "Easy": solve_easy(by_cls["Easy"], inst.N, cfg.eps),
        "Medium": solve_medium(by_cls["Medium"], classes, inst.N, cfg.eps),
        "HardEnum": solve_hard_enum(by_cls["Hard"], classes, inst.N, cfg),
    }
    order = ["Easy", "Medium", "HardEnum"]
    best = max(order, key=lambda k: (cands[k].total_weight, -order.index(k)))
    sol = cands[best]
    # scale back: same rotations, translations stretched by 1+delta
    entries = tuple((i, Placement(p.dx / f, p.dy / f, p.cos_a, p.sin_a)) for i, p in sol.entries)
    out = PackingSolution(entries, sol.total_weight, "RA",
                          sol.notes + (f"ra: delta={delta:g} via {best}",))
    return RATrace(out, small, hard_groups, cands)


def solve_hard_ra(inst: Instance, delta: float, cfg: SolverConfig | None = None) -> PackingSolution:
    return ra_pipeline(inst, delta, cfg).solution
