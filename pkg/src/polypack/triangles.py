"""Dynamic programs for hard triangles.

Two families of packings are searched:

* top-left packings, where every triangle has its long-edge vertex ``v*``
  at the top-left corner and the triangles fan out along the rays from
  that corner to the points ``p_t`` of the horizontal segment between the
  knapsack centre and the middle of the right edge (bottom-right packings
  are the mirror image along the main diagonal);
* corner-facing packings, whose long edges point at the bottom and the
  right edge, filled by a region DP over cells bounded by placed
  triangles, upward rays from their ``v*`` and vertical lines through
  their rightmost vertices.

``solve_hard_triangles`` returns the heaviest of both together with the
single heaviest triangle that fits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .classify import NEG_INF, Classification, group_key, hard_group_range
from .geometry import REL_TOL, placement_from_transform, shrink_vertices
from .hard import EmptyPlacementSet, placement_set
from .model import Item, PackingSolution, SolverConfig

CORNER_CAP = 12          # placements per triangle offered to the corner DP
CORNER_GRID_N = 3        # placement grid of the corner DP as if n were at most this

LEFT, MID, RIGHT = 0, 1, 2
BOTTOM, RIGHT_EDGE, TOP, LEFT_EDGE = "bottom", "right", "top", "left"


class Infeasible(ValueError):
    """A greedy top-left placement left the knapsack; ``index`` names the triangle."""

    def __init__(self, index: int, reason: str = "leaves the knapsack"):
        super().__init__(f"triangle #{index} {reason}")
        self.index = index


@dataclass(frozen=True)
class TriangleMeta:
    id: int
    v_star: int
    long_edges: tuple[int, int]     # edge k joins vertex k and k+1
    group_j: object

    @classmethod
    def of(cls, pid: int, vertices: np.ndarray, group=None) -> "TriangleMeta":
        v = np.asarray(vertices, dtype=float)
        if len(v) != 3:
            raise ValueError(f"polygon {pid} is not a triangle")
        ln = np.hypot(*(np.roll(v, -1, axis=0) - v).T)
        order = sorted(range(3), key=lambda k: (-ln[k], k))
        a, b = sorted(order[:2])
        # edges a and b share exactly one vertex
        shared = ({a, (a + 1) % 3} & {b, (b + 1) % 3}).pop()
        return cls(pid, shared, (order[0], order[1]), group)


# ---------------------------------------------------------------- helpers

def _rot_to(u: np.ndarray, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """cos/sin of the counterclockwise rotations taking unit ``u`` onto unit rows of ``d``."""
    c = u[0] * d[:, 0] + u[1] * d[:, 1]
    s = u[0] * d[:, 1] - u[1] * d[:, 0]
    return c, s


def _fit_placement(poly, target: np.ndarray):
    """Placement of ``poly`` whose vertices land on ``target`` (same order)."""
    v = poly.vertices
    a = v[1] - v[0]
    b = target[1] - target[0]
    na, nb = math.hypot(*a), math.hypot(*b)
    c = (a[0] * b[0] + a[1] * b[1]) / (na * nb)
    s = (a[0] * b[1] - a[1] * b[0]) / (na * nb)
    h = math.hypot(c, s)
    c, s = c / h, s / h
    t = target[0] - np.array([c * v[0, 0] - s * v[0, 1], s * v[0, 0] + c * v[0, 1]])
    return placement_from_transform(poly, c, s, float(t[0]), float(t[1]))


def _line_crossing(w: np.ndarray, y0: float) -> np.ndarray:
    """x-extent where triangles ``w`` (M, 3, 2) cross the line y = y0; nan if not."""
    a = w
    b = np.roll(w, -1, axis=1)
    dy = b[..., 1] - a[..., 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (y0 - a[..., 1]) / dy
    ok = (t >= 0) & (t <= 1) & (dy != 0)
    x = np.where(ok, a[..., 0] + t * (b[..., 0] - a[..., 0]), np.nan)
    with np.errstate(all="ignore"):
        hi = np.nanmax(np.where(ok, x, -np.inf), axis=1)
    hi[~ok.any(axis=1)] = np.nan
    return hi


def _vertical_span(polys: np.ndarray, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """y-interval of each convex polygon ``polys[m]`` on the line x = ``xs[m]``.

    Returns (lo, hi) with nan where the line misses the polygon's interior.
    """
    a = polys
    b = np.roll(polys, -1, axis=1)
    x0 = xs[:, None]
    dx = b[..., 0] - a[..., 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (x0 - a[..., 0]) / dx
    ok = (t >= 0) & (t <= 1) & (dx != 0)
    y = a[..., 1] + t * (b[..., 1] - a[..., 1])
    lo = np.where(ok, y, np.inf).min(axis=1)
    hi = np.where(ok, y, -np.inf).max(axis=1)
    inside = (polys[..., 0].min(axis=1) < xs) & (xs < polys[..., 0].max(axis=1))
    lo = np.where(inside, lo, np.nan)
    hi = np.where(inside, hi, np.nan)
    return lo, hi


def exit_sides(origin: np.ndarray, direction: np.ndarray, N: float, tol: float) -> frozenset:
    """Knapsack edges through which the ray leaves ``[0, N]^2`` (two at a corner)."""
    ts = {}
    for axis, (neg, pos) in enumerate(((LEFT_EDGE, RIGHT_EDGE), (BOTTOM, TOP))):
        d = direction[axis]
        if d > 0:
            ts[pos] = (N - origin[axis]) / d
        elif d < 0:
            ts[neg] = -origin[axis] / d
    best = min(ts.values())
    scale = tol / max(math.hypot(*direction), 1e-300)
    return frozenset(k for k, t in ts.items() if t <= best + scale)


def facing(placed: np.ndarray, v_star: int, N: float, tol: float | None = None):
    """``("edge", side)`` when both long-edge rays from ``v*`` leave through the
    same knapsack edge, ``("corner", (s1, s2))`` otherwise."""
    tol = REL_TOL * N if tol is None else tol
    o = placed[v_star]
    s1 = exit_sides(o, placed[(v_star + 1) % 3] - o, N, tol)
    s2 = exit_sides(o, placed[(v_star - 1) % 3] - o, N, tol)
    common = s1 & s2
    if common:
        return "edge", min(common)
    return "corner", (min(s1), min(s2))


def _exit_masks(o: np.ndarray, d: np.ndarray, N: float, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`exit_sides` restricted to (bottom, right) membership."""
    with np.errstate(divide="ignore", invalid="ignore"):
        tx = np.where(d[:, 0] > 0, (N - o[:, 0]) / d[:, 0],
                      np.where(d[:, 0] < 0, -o[:, 0] / d[:, 0], np.inf))
        ty = np.where(d[:, 1] > 0, (N - o[:, 1]) / d[:, 1],
                      np.where(d[:, 1] < 0, -o[:, 1] / d[:, 1], np.inf))
    best = np.minimum(tx, ty)
    slack = tol / np.maximum(np.hypot(d[:, 0], d[:, 1]), 1e-300)
    bottom = (d[:, 1] < 0) & (ty <= best + slack)
    right = (d[:, 0] > 0) & (tx <= best + slack)
    return bottom, right


def faces_bottom_right(placed: np.ndarray, v_star: int, N: float, tol: float) -> np.ndarray:
    """For placed triangles (M, 3, 2): do the long-edge rays leave through the
    bottom and the right edge (one each)?"""
    w = np.asarray(placed, dtype=float).reshape(-1, 3, 2)
    o = w[:, v_star]
    b1, r1 = _exit_masks(o, w[:, (v_star + 1) % 3] - o, N, tol)
    b2, r2 = _exit_masks(o, w[:, (v_star - 1) % 3] - o, N, tol)
    return (b1 & r2) | (r1 & b2)


# ---------------------------------------------------------------- top-left packing

class _Fan:
    """Geometry of the top-left wedge: rays from p_TL through p_t, t = 0..T."""

    def __init__(self, N: float, T: int):
        self.N = float(N)
        self.T = int(T)
        self.step = self.N / (2 * self.T)
        self.tol = REL_TOL * self.N
        self.corner = np.array([0.0, self.N])
        t = np.arange(self.T + 1)
        d = np.column_stack([self.N / 2 + t * self.step, np.full(self.T + 1, -self.N / 2)])
        self.dirs = d / np.hypot(d[:, 0], d[:, 1])[:, None]
        self.angles = np.arctan2(self.dirs[:, 1], self.dirs[:, 0])     # increasing in t

    def x_of(self, t: np.ndarray) -> np.ndarray:
        return self.N / 2 + t * self.step

    def place_all(self, v: np.ndarray, s: int) -> np.ndarray:
        """Placed vertices (T+1, 3, 2): ``v*`` at p_TL, edge v*->v*+1 on ray t."""
        u = v[(s + 1) % 3] - v[s]
        u = u / math.hypot(*u)
        c, sn = _rot_to(u, self.dirs)
        rel = v - v[s]
        out = np.empty((self.T + 1, 3, 2))
        out[..., 0] = self.corner[0] + c[:, None] * rel[None, :, 0] - sn[:, None] * rel[None, :, 1]
        out[..., 1] = self.corner[1] + sn[:, None] * rel[None, :, 0] + c[:, None] * rel[None, :, 1]
        return out

    def fits(self, w: np.ndarray) -> np.ndarray:
        return (w.min(axis=(1, 2)) >= -self.tol) & (w.max(axis=(1, 2)) <= self.N + self.tol)

    def next_step(self, w: np.ndarray, s: int, t: np.ndarray) -> np.ndarray:
        """Smallest t' >= t whose ray clears the placed triangles ``w`` and whose
        segment p_t'--p_R misses them; T+1 when no such step exists."""
        o = w[:, s]
        up = w[:, (s - 1) % 3] - o
        theta = np.arctan2(up[:, 1], up[:, 0])
        # rays are compared by angle; a tiny slack absorbs rounding of the placement
        tb = np.searchsorted(self.angles, theta - 1e-12, side="left")
        xb = _line_crossing(w, self.N / 2)
        ta = np.where(np.isnan(xb), t,
                      np.ceil((np.nan_to_num(xb) - self.tol - self.N / 2) / self.step - 1e-9))
        out = np.maximum(np.maximum(t, tb), ta).astype(np.int64)
        return np.minimum(out, self.T + 1)


def top_left_place(triangles: Sequence[np.ndarray], N: float, T: int) -> list[np.ndarray]:
    """Greedy top-left packing of triangles given in non-decreasing group order.

    Returns the placed vertex arrays (same vertex order as the input).
    """
    fan = _Fan(N, T)
    out: list[np.ndarray] = []
    t = 0
    for k, v in enumerate(triangles):
        v = np.asarray(v, dtype=float)
        if t > fan.T:
            raise Infeasible(k, "finds no free ray")
        s = TriangleMeta.of(k, v).v_star
        w = fan.place_all(v, s)[t]
        if not fan.fits(w[None])[0]:
            raise Infeasible(k)
        out.append(w)
        t = int(fan.next_step(w[None], s, np.array([t]))[0])
    return out


@dataclass(frozen=True)
class TLTable:
    levels: tuple            # group per DP level, NEG_INF first
    weights: np.ndarray      # (levels + 1, T + 2); last row and column are zero
    T: int


def _levels(N: int) -> list:
    j_min, j_max = hard_group_range(max(1, int(N)))
    return [NEG_INF] + list(range(j_min, j_max + 1))


def _mirror(v: np.ndarray) -> np.ndarray:
    # reflect across y = x and restore counterclockwise order
    return v[[0, 2, 1]][:, ::-1].copy()


def _topleft_table(tris: Sequence[tuple[Item, object]], N: int, T: int, mirror: bool):
    fan = _Fan(N, T)
    levels = _levels(N)
    index = {g: k for k, g in enumerate(levels)}
    per_level: list[list] = [[] for _ in levels]
    for it, g in tris:
        if g in index:
            v = it.poly.vertices
            per_level[index[g]].append((it, _mirror(v) if mirror else v))
    L = len(levels)
    dp = np.zeros((L + 1, T + 2))
    choice = np.full((L, T + 2), -1, dtype=np.int64)
    nxt = np.zeros((L, T + 2), dtype=np.int64)
    placed: dict[tuple[int, int], np.ndarray] = {}
    ts = np.arange(T + 1)
    for lv in range(L - 1, -1, -1):
        best = dp[lv + 1].copy()
        for k, (it, v) in enumerate(per_level[lv]):
            s = TriangleMeta.of(it.id, v).v_star
            w = fan.place_all(v, s)
            ok = fan.fits(w)
            tp = fan.next_step(w, s, ts)
            val = it.weight + dp[lv + 1][tp]
            better = ok & (val > best[:T + 1] + 1e-12 * max(1.0, it.weight))
            for t in np.flatnonzero(better):
                best[t] = val[t]
                choice[lv, t] = k
                nxt[lv, t] = tp[t]
                placed[(lv, int(t))] = w[t]
        dp[lv] = best
    return fan, levels, per_level, dp, choice, nxt, placed


def _topleft_solution(items, classes, N, cfg, mirror: bool, producer: str):
    cfg = cfg or SolverConfig()
    tris = _hard_triangles(items, classes)
    T = cfg.steps_for(len(tris))
    if not tris:
        return PackingSolution.empty(producer), TLTable(tuple(_levels(N)), np.zeros((1, 1)), T)
    fan, levels, per_level, dp, choice, nxt, placed = _topleft_table(tris, N, T, mirror)
    entries = []
    t = 0
    for lv in range(len(levels)):
        if t > T or choice[lv, t] < 0:
            continue
        it, _ = per_level[lv][choice[lv, t]]
        w = placed[(lv, t)]
        if mirror:
            w = _mirror(w)
        entries.append((it.id, _fit_placement(it.poly, w)))
        t = int(nxt[lv, t])
    weights = {it.id: it.weight for it, _ in tris}
    sol = PackingSolution.of_weights(entries, weights, producer,
                                     (f"{producer}: T={T} triangles={len(tris)}",))
    return sol, TLTable(tuple(levels), dp, T)


def topleft_table(items, classes, N, cfg=None, mirror: bool = False) -> TLTable:
    return _topleft_solution(items, classes, N, cfg, mirror,
                             "TriangleBR" if mirror else "TriangleTL")[1]


def solve_topleft_dp(items: Sequence[Item], classes: Sequence[Classification], N: int,
                     cfg: SolverConfig | None = None) -> PackingSolution:
    return _topleft_solution(items, classes, N, cfg, False, "TriangleTL")[0]


def solve_bottomright_dp(items: Sequence[Item], classes: Sequence[Classification], N: int,
                         cfg: SolverConfig | None = None) -> PackingSolution:
    return _topleft_solution(items, classes, N, cfg, True, "TriangleBR")[0]


def _hard_triangles(items, classes) -> list[tuple[Item, object]]:
    cls_by_id = {c.id: c for c in classes}
    out = []
    for it in items:
        c = cls_by_id.get(it.id)
        if c is None or c.cls != "Hard" or c.group is None or len(it.poly) != 3:
            continue
        out.append((it, c.group))
    return out


# ---------------------------------------------------------------- corner-facing DP

class _Pool:
    """Candidate placements with lazily computed pairwise relations."""

    def __init__(self, N: float, cands: list[tuple[Item, int, object, np.ndarray]], group_bit):
        self.N = float(N)
        self.tol = REL_TOL * self.N
        self.items = [c[0] for c in cands]
        self.places = [c[1] for c in cands]
        self.size = len(cands)
        self.V = np.array([c[3] for c in cands]).reshape(-1, 3, 2)
        sh = [shrink_vertices(v, self.tol) for v in self.V]
        self.S = np.array([s if len(s) == 3 else v for s, v in zip(sh, self.V)]).reshape(-1, 3, 2)
        self.tri = np.array([c[0].id for c in cands], dtype=np.int64)
        self.bit = np.array([group_bit[c[2]] for c in cands], dtype=np.int64)
        self.w = np.array([c[0].weight for c in cands], dtype=float)
        self.vstar = np.array([v[TriangleMeta.of(0, v).v_star] for v in self.V]).reshape(-1, 2)
        self.xbar = self.V[..., 0].max(axis=1) if self.size else np.zeros(0)
        self.cent = self.V.mean(axis=1) if self.size else np.zeros((0, 2))
        self._rel: dict[tuple[int, int], np.ndarray] = {}
        self._feas: dict[tuple, np.ndarray] = {}

    def _class_of(self, a: int) -> np.ndarray:
        c = self.cent
        lo, _ = _vertical_span(np.broadcast_to(self.V[a], (self.size, 3, 2)), c[:, 0])
        below = ~np.isnan(lo) & (lo > c[:, 1])
        cls = np.where(below | (c[:, 0] < self.vstar[a, 0]), LEFT, MID)
        return np.where(c[:, 0] > self.xbar[a], RIGHT, cls)

    def allowed(self, a: int, d: int) -> np.ndarray:
        """Candidates lying in the component ``d`` left by anchor ``a``."""
        key = (a, d)
        if key in self._rel:
            return self._rel[key]
        t = self.tol
        ov = _kernels.overlap_batch(np.ascontiguousarray(self.S[a]), np.ascontiguousarray(self.S))
        # candidate crosses the upward ray of the anchor
        xa = np.full(self.size, self.vstar[a, 0])
        lo, hi = _vertical_span(self.S, xa)
        hit_up = ~np.isnan(lo) & (hi > self.vstar[a, 1] + t) & (lo < self.N - t)
        # upward ray of the candidate crosses the anchor
        Sa = np.broadcast_to(self.S[a], (self.size, 3, 2))
        lo2, hi2 = _vertical_span(Sa, self.vstar[:, 0])
        own_up = ~np.isnan(lo2) & (hi2 > self.vstar[:, 1] + t)
        ok = (~ov & ~hit_up & ~own_up & (self.xbar <= self.xbar[a] + t)
              & (self._class_of(a) == d) & (self.tri != self.tri[a]))
        self._rel[key] = ok
        return ok

    def feasible(self, anchors: tuple) -> np.ndarray:
        if anchors in self._feas:
            return self._feas[anchors]
        m = np.ones(self.size, dtype=bool)
        for a, d in anchors:
            m &= self.allowed(a, d)
        self._feas[anchors] = m
        return m


def _children(anchors: tuple, p: int) -> tuple[tuple, tuple]:
    """Sub-cells left after placing candidate ``p`` as the rightmost triangle."""
    if not anchors:
        return ((p, LEFT),), ((p, MID),)
    if len(anchors) == 1:
        i, d = anchors[0]
        if d == LEFT:
            return ((p, LEFT),), ((i, LEFT), (p, MID))
        return ((p, MID),), ((p, LEFT), (i, MID))
    (u, _), (dn, _) = anchors
    return ((u, LEFT), (p, MID)), ((p, LEFT), (dn, MID))


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


class _CornerDP:
    def __init__(self, pool: _Pool, budget: int):
        self.pool = pool
        self.left = budget
        self.memo: dict[tuple, tuple[float, tuple[int, ...]]] = {}
        self.truncated = False

    def groups_in(self, anchors: tuple, J: int) -> int:
        m = self.pool.feasible(anchors) & ((self.pool.bit & J) != 0)
        return int(np.bitwise_or.reduce(self.pool.bit[m])) if m.any() else 0

    def solve(self, anchors: tuple, J: int) -> tuple[float, tuple[int, ...]]:
        pool = self.pool
        feas = pool.feasible(anchors) & ((pool.bit & J) != 0)
        if not feas.any():
            return 0.0, ()
        J = int(np.bitwise_or.reduce(pool.bit[feas]))
        key = (anchors, J)
        if key in self.memo:
            return self.memo[key]
        best: tuple[float, tuple[int, ...]] = (0.0, ())
        idx = np.flatnonzero(feas)
        idx = idx[np.lexsort((idx, -pool.w[idx]))]
        for p in idx:
            if self.left <= 0:
                self.truncated = True
                break
            rest = J & ~int(pool.bit[p])
            c1, c2 = _children(anchors, int(p))
            g1 = self.groups_in(c1, rest)
            g2 = self.groups_in(c2, rest)
            only1, only2, both = g1 & ~g2, g2 & ~g1, g1 & g2
            for s in _submasks(both):
                self.left -= 1
                v1, s1 = self.solve(c1, only1 | s)
                v2, s2 = self.solve(c2, only2 | (both & ~s))
                val = float(pool.w[p]) + v1 + v2
                if val > best[0] + 1e-12 * max(1.0, val):
                    best = (val, (int(p),) + s1 + s2)
                if self.left <= 0:
                    self.truncated = True
                    break
        self.memo[key] = best
        return best


def corner_candidates(items: Sequence[Item], groups: dict, N: int, cfg: SolverConfig,
                      cap: int = CORNER_CAP) -> list[tuple[Item, object, object, np.ndarray]]:
    """Bottom-right corner-facing placements, at most ``cap`` per triangle."""
    tol = REL_TOL * N
    out = []
    # the pool is capped anyway, so a coarse grid is enough
    n = min(len(items), CORNER_GRID_N)
    for it in items:
        try:
            ps = placement_set(it.poly, N, "exact", cfg, n, pid=it.id)
        except EmptyPlacementSet:
            continue
        s = TriangleMeta.of(it.id, it.poly.vertices).v_star
        keep = np.flatnonzero(faces_bottom_right(ps.verts, s, N, tol)).tolist()
        if len(keep) > cap:
            pick = np.linspace(0, len(keep) - 1, cap).round().astype(int)
            keep = [keep[k] for k in sorted(set(pick.tolist()))]
        out.extend((it, ps.placements[k], groups[it.id], ps.verts[k]) for k in keep)
    return out


def _drop_overlaps(pool: _Pool, chosen: Sequence[int]) -> list[int]:
    """Keep the heaviest pairwise-disjoint subset of ``chosen`` greedily."""
    kept: list[int] = []
    for p in sorted(chosen, key=lambda q: (-pool.w[q], q)):
        if all(not _kernels.overlap_pair(pool.S[p], pool.S[q]) for q in kept):
            kept.append(p)
    return kept


def solve_corner_dp(items: Sequence[Item], classes: Sequence[Classification], N: int,
                    cfg: SolverConfig | None = None, cap: int = CORNER_CAP) -> PackingSolution:
    cfg = cfg or SolverConfig()
    tris = _hard_triangles(items, classes)
    if not tris:
        return PackingSolution.empty("TriangleCorner")
    groups = {it.id: g for it, g in tris}
    order = sorted({g for _, g in tris}, key=group_key)
    bit = {g: 1 << k for k, g in enumerate(order)}
    cands = corner_candidates([it for it, _ in tris], groups, N, cfg, cap)
    if not cands:
        return PackingSolution.empty("TriangleCorner", ("TriangleCorner: no corner-facing placement",))
    pool = _Pool(N, cands, bit)
    dp = _CornerDP(pool, cfg.node_budget)
    _, chosen = dp.solve((), (1 << len(order)) - 1)
    kept = _drop_overlaps(pool, chosen)
    entries = [(pool.items[p].id, pool.places[p]) for p in kept]
    weights = {it.id: it.weight for it, _ in tris}
    notes = [f"TriangleCorner: candidates={pool.size} cells={len(dp.memo)}"]
    if dp.truncated:
        notes.append("TriangleCorner: node budget reached")
    if len(kept) < len(chosen):
        notes.append(f"TriangleCorner: dropped {len(chosen) - len(kept)} overlapping")
    return PackingSolution.of_weights(entries, weights, "TriangleCorner", notes)


# ---------------------------------------------------------------- combiner

def solve_single_max(items: Sequence[Item], classes: Sequence[Classification], N: int,
                     cfg: SolverConfig | None = None) -> PackingSolution:
    cfg = cfg or SolverConfig()
    for it, _ in sorted(_hard_triangles(items, classes), key=lambda e: (-e[0].weight, e[0].id)):
        try:
            ps = placement_set(it.poly, N, "exact", cfg, 1, pid=it.id)
        except EmptyPlacementSet:
            continue
        return PackingSolution.of_weights([(it.id, ps.placements[0])], {it.id: it.weight},
                                          "SingleMax", ("SingleMax: heaviest fitting triangle",))
    return PackingSolution.empty("SingleMax")


TRIANGLE_SOLVERS = (
    ("SingleMax", solve_single_max),
    ("TriangleTL", solve_topleft_dp),
    ("TriangleBR", solve_bottomright_dp),
    ("TriangleCorner", solve_corner_dp),
)


def triangle_candidates(items, classes, N, cfg=None) -> dict[str, PackingSolution]:
    return {name: fn(items, classes, N, cfg) for name, fn in TRIANGLE_SOLVERS}


def best_of(cands: dict[str, PackingSolution], order: Sequence[str]) -> PackingSolution:
    """Heaviest candidate; ties go to the earlier name in ``order``."""
    best = None
    for name in order:
        sol = cands.get(name)
        if sol is not None and (best is None or sol.total_weight > best.total_weight):
            best = sol
    return best


def solve_hard_triangles(items: Sequence[Item], classes: Sequence[Classification], N: int,
                         cfg: SolverConfig | None = None) -> PackingSolution:
    cands = triangle_candidates(items, classes, N, cfg)
    return best_of(cands, [name for name, _ in TRIANGLE_SOLVERS])
