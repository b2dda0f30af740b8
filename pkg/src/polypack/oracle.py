"""Reference packer for tiny instances.

The oracle is resolution-bounded: it is a certified lower bound on the
optimum, not the optimum itself. Subsets are tried by decreasing weight.
For a subset, angles are multiples of ``pi / r`` for ``r = 4, 8, ...``
up to ``fine_grid`` (each resolution with its own node budget, so a finer
grid never loses a packing a coarser one found). With the angles fixed,
the first polygon is tried at the corners, edge midpoints and centre of its
feasible-translation box, and every later polygon at the vertices of the
arrangement formed by that box and the no-fit polygons of the polygons
already placed. Given the earlier polygons, this makes the last level
exact.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .geometry import Placement, shrink_vertices
from .model import Instance, PackingSolution, validate_solution

DEFAULT_BUDGET = 3_000


class TooLarge(ValueError):
    pass


def _minkowski_nfp(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Translations t with (q + t) meeting p: the convex polygon p + (-q).

    Both inputs are counterclockwise; the sum is built by merging the edge
    vectors of both polygons in polar order.
    """
    mq = -q
    e = np.concatenate([np.roll(p, -1, axis=0) - p, np.roll(mq, -1, axis=0) - mq])
    ang = np.mod(np.arctan2(e[:, 1], e[:, 0]), 2 * math.pi)
    e = e[np.argsort(ang, kind="stable")]
    start = _lowest(p) + _lowest(mq)
    pts = start + np.concatenate([np.zeros((1, 2)), np.cumsum(e[:-1], axis=0)])
    return pts


def _lowest(v: np.ndarray) -> np.ndarray:
    """Bottom-most vertex (leftmost among ties): where the edge angle wraps past zero."""
    k = np.lexsort((v[:, 0], v[:, 1]))[0]
    return v[k]


def _segments(poly: np.ndarray) -> np.ndarray:
    return np.stack([poly, np.roll(poly, -1, axis=0)], axis=1)        # (k, 2, 2)


def _seg_intersections(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise proper intersection points of segment sets a (A,2,2), b (B,2,2)."""
    p = a[:, None, 0]
    r = a[:, None, 1] - p
    q = b[None, :, 0]
    s = b[None, :, 1] - q
    den = r[..., 0] * s[..., 1] - r[..., 1] * s[..., 0]
    qp = q - p
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (qp[..., 0] * s[..., 1] - qp[..., 1] * s[..., 0]) / den
        u = (qp[..., 0] * r[..., 1] - qp[..., 1] * r[..., 0]) / den
    ok = (np.abs(den) > 1e-300) & (t >= 0) & (t <= 1) & (u >= 0) & (u <= 1)
    t = np.where(ok, t, 0.0)
    pts = p + t[..., None] * r
    return pts[ok]


def _box_segments(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    c = np.array([[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
    return _segments(c)


class _Angles:
    """Fitting rotations of one polygon at one resolution."""

    def __init__(self, cos: np.ndarray, sin: np.ndarray, verts: np.ndarray,
                 shrunk: np.ndarray | None, new: np.ndarray, N: float):
        self.cos, self.sin = cos, sin
        self.verts = verts          # (A, k, 2), rotated about vertex 0
        self.shrunk = shrunk        # (A, k', 2) or None when the polygon vanishes
        self.new = new              # (A,) bool: not present at the previous resolution
        self.lo = -verts.min(axis=1)                       # feasible translation box
        self.hi = np.maximum(N - verts.max(axis=1), self.lo)

    def __len__(self) -> int:
        return len(self.cos)


# the four ways to push two polygons into opposite corners: (first, second)
_CORNERS = (((0, 0), (1, 1)), ((1, 0), (0, 1)), ((1, 1), (0, 0)), ((0, 1), (1, 0)))


class _Search:
    def __init__(self, inst: Instance, budget: int):
        self.inst = inst
        self.N = float(inst.N)
        self.tol = inst.tol
        self.left = budget

    def angles(self, pid: int, r: int, prev: int | None, first: bool) -> _Angles:
        """Fitting clockwise angles ``k pi / r`` plus the angles that make an
        edge axis-parallel, coarse ones first. The first polygon only needs a
        quarter turn because the square is symmetric under it."""
        v = self.inst[pid].poly.vertices
        period = math.pi / 2 if first else 2 * math.pi
        e = np.roll(v, -1, axis=0) - v
        base = np.mod(np.arctan2(e[:, 1], e[:, 0]), math.pi / 2)
        aligned = sorted({round(float(b + m * math.pi / 2) % period, 15)
                          for b in base for m in range(4)})
        grid = [(k * math.pi / r, prev is None or (k * prev) % r != 0)
                for k in sorted(range(int(round(period * r / math.pi))),
                                key=lambda k: (-_two_adic(k), k))]
        seen: set = set()
        th, new = [], []
        for a, fresh in [(a, prev is None) for a in aligned] + grid:
            key = round(a, 12)
            if key not in seen:
                seen.add(key)
                th.append(a)
                new.append(fresh)
        th = np.array(th)
        c, sn = np.cos(th), np.sin(th)
        verts = _rotate(v, c, sn, v[0])
        ext = verts.max(axis=1) - verts.min(axis=1)
        ok = np.all(ext <= self.N + self.tol, axis=1)
        sv = shrink_vertices(v, self.tol)
        shrunk = _rotate(sv, c[ok], sn[ok], v[0]) if len(sv) >= 3 else None
        return _Angles(c[ok], sn[ok], verts[ok], shrunk, np.array(new, dtype=bool)[ok], self.N)

    def pair_table(self, a: _Angles, b: _Angles) -> np.ndarray:
        """(A, B, 4) table: does corner configuration c pack the pair at these angles?"""
        out = np.ones((len(a), len(b), 4), dtype=bool)
        if a.shrunk is None or b.shrunk is None or not len(a) or not len(b):
            return out
        ab = np.stack([a.lo, a.hi], axis=1)       # (A, 2 [lo/hi], 2 [x/y])
        bb = np.stack([b.lo, b.hi], axis=1)
        for ci, ((ax, ay), (bx, by)) in enumerate(_CORNERS):
            tb = np.column_stack([bb[:, bx, 0], bb[:, by, 1]])
            batch = np.ascontiguousarray(b.shrunk + tb[:, None, :])
            for i in range(len(a)):
                ta = np.array([ab[i, ax, 0], ab[i, ay, 1]])
                out[i, :, ci] = ~_kernels.overlap_batch(np.ascontiguousarray(a.shrunk[i] + ta), batch)
        return out

    def candidates(self, w: np.ndarray, lo: np.ndarray, hi: np.ndarray,
                   placed: list[np.ndarray]) -> np.ndarray:
        """Corners, edge midpoints and centre of the translation box, or the
        arrangement vertices of the box and the no-fit polygons of ``placed``."""
        if not placed:
            mid = 0.5 * (lo + hi)
            return np.array([lo, [hi[0], lo[1]], hi, [lo[0], hi[1]],
                             [mid[0], lo[1]], [hi[0], mid[1]], [mid[0], hi[1]], [lo[0], mid[1]], mid])
        segs = [_box_segments(lo, hi)]
        pts = [segs[0][:, 0]]
        for p in placed:
            nfp = _minkowski_nfp(p, w)
            pts.append(nfp)
            segs.append(_segments(nfp))
        for a, b in itertools.combinations(segs, 2):
            x = _seg_intersections(a, b)
            if len(x):
                pts.append(x)
        c = np.concatenate(pts)
        keep = np.all((c >= lo - self.tol) & (c <= hi + self.tol), axis=1)
        c = np.clip(c[keep], lo, hi)
        if len(c) == 0:
            return c
        _, first = np.unique(np.round(c / self.tol).astype(np.int64), axis=0, return_index=True)
        return c[np.sort(first)]

    def run(self, ids: Sequence[int], r: int, prev: int | None = None) -> list[Placement] | None:
        """Search ``ids`` at angle resolution ``r``, skipping angle tuples
        already covered at resolution ``prev``."""
        A = [self.angles(pid, r, prev, k == 0) for k, pid in enumerate(ids)]
        if any(not len(a) for a in A):
            return None
        if len(ids) == 1:
            a = A[0]
            k = 0 if prev is None else int(np.argmax(a.new)) if a.new.any() else -1
            return None if k < 0 else [_at(a, k, a.lo[k])]
        pair = {(i, j): self.pair_table(A[i], A[j]) for i, j in itertools.combinations(range(len(ids)), 2)}
        if len(ids) == 2:
            ok = pair[(0, 1)].any(axis=2)
            if prev is not None:
                ok &= A[0].new[:, None] | A[1].new[None, :]
            hit = np.argwhere(ok)
            if not len(hit):
                return None
            i, j = hit[0]
            ci = int(np.argmax(pair[(0, 1)][i, j]))
            (ax, ay), (bx, by) = _CORNERS[ci]
            ta = np.array([(A[0].lo, A[0].hi)[ax][i, 0], (A[0].lo, A[0].hi)[ay][i, 1]])
            tb = np.array([(A[1].lo, A[1].hi)[bx][j, 0], (A[1].lo, A[1].hi)[by][j, 1]])
            return [_at(A[0], i, ta), _at(A[1], j, tb)]
        return self._run_general(A, {k: v.any(axis=2) for k, v in pair.items()}, prev)

    def _run_general(self, A: list[_Angles], pair: dict, prev: int | None) -> list[Placement] | None:
        n = len(A)
        chosen: list[Placement] = []
        placed: list[np.ndarray] = []
        shrunk: list[np.ndarray | None] = []
        angle_of: list[int] = []

        def rec(d: int, fresh: bool) -> bool:
            if d == n:
                return True
            a = A[d]
            mask = np.ones(len(a), dtype=bool)
            for e, k in enumerate(angle_of):
                mask &= pair[(e, d)][k]
            if d == n - 1 and prev is not None and not fresh:
                mask &= a.new
            for k in np.flatnonzero(mask):
                if self.left <= 0:
                    return False
                self.left -= 1
                w = a.verts[k]
                cand = self.candidates(w, a.lo[k], a.hi[k], placed)
                if len(cand) == 0:
                    continue
                ok = np.ones(len(cand), dtype=bool)
                if a.shrunk is not None:
                    batch = np.ascontiguousarray(a.shrunk[k][None, :, :] + cand[:, None, :])
                    for sp in shrunk:
                        if sp is not None:
                            ok &= ~_kernels.overlap_batch(sp, batch)
                for t in cand[ok]:
                    chosen.append(_at(a, k, t))
                    placed.append(w + t)
                    # polygons that vanish when shrunk cannot overlap anything
                    shrunk.append(None if a.shrunk is None else a.shrunk[k] + t)
                    angle_of.append(int(k))
                    if rec(d + 1, fresh or bool(a.new[k])):
                        return True
                    chosen.pop()
                    placed.pop()
                    shrunk.pop()
                    angle_of.pop()
                    if self.left <= 0:
                        return False
            return False

        return list(chosen) if rec(0, False) else None


def _rotate(v: np.ndarray, c: np.ndarray, s: np.ndarray, pivot: np.ndarray) -> np.ndarray:
    """Clockwise rotations of ``v`` about ``pivot``, as :class:`Placement` does."""
    rel = v - pivot
    out = np.empty((len(c), len(v), 2))
    out[..., 0] = pivot[0] + c[:, None] * rel[None, :, 0] + s[:, None] * rel[None, :, 1]
    out[..., 1] = pivot[1] - s[:, None] * rel[None, :, 0] + c[:, None] * rel[None, :, 1]
    return out


def _at(a: _Angles, k: int, t) -> Placement:
    h = math.hypot(a.cos[k], a.sin[k])
    return Placement(float(t[0]), float(t[1]), float(a.cos[k] / h), float(a.sin[k] / h))


def _two_adic(k: int) -> int:
    if k == 0:
        return 64
    return (k & -k).bit_length()


def _resolutions(fine_grid: int) -> list[int]:
    out = []
    r = 4
    while r < fine_grid:
        out.append(r)
        r *= 2
    out.append(fine_grid)
    return sorted(set(out))


def brute_force_opt(inst: Instance, max_n: int = 3, fine_grid: int = 256,
                    budget: int = DEFAULT_BUDGET,
                    hints: Iterable[PackingSolution] = ()) -> PackingSolution:
    """Heaviest subset the search certifies as packable.

    ``hints`` are solutions found elsewhere; any that validates is kept
    when it beats the search, so the result dominates them.
    """
    if len(inst) > max_n:
        raise TooLarge(f"{len(inst)} polygons exceed the oracle guard of {max_n}")
    if fine_grid < 1:
        raise ValueError("fine_grid must be >= 1")
    items = sorted(inst.items, key=lambda it: it.id)
    subsets = []
    for k in range(1, len(items) + 1):
        subsets.extend(itertools.combinations(items, k))
    subsets.sort(key=lambda s: (-sum(it.weight for it in s), len(s), [it.id for it in s]))
    area_cap = float(inst.N) ** 2 * (1 + 1e-9)
    missed: set[frozenset[int]] = set()
    best = PackingSolution.empty("Oracle", ("oracle: nothing fits",))
    for sub in subsets:
        ids = [it.id for it in sorted(sub, key=lambda it: (-it.poly.area, it.id))]
        key = frozenset(ids)
        if sum(it.poly.area for it in sub) > area_cap or any(
                frozenset(c) in missed for c in itertools.combinations(ids, len(ids) - 1) if c):
            missed.add(key)
            continue
        found = None
        prev = None
        for r in _resolutions(fine_grid):
            found = _Search(inst, budget).run(ids, r, prev)
            prev = r
            if found is not None:
                break
        if found is None:
            missed.add(key)
            continue
        best = PackingSolution.of(inst, zip(ids, found), "Oracle",
                                  (f"oracle: fine_grid={fine_grid} resolution={r}",))
        break
    for h in hints:
        if h.total_weight > best.total_weight and validate_solution(inst, h):
            best = PackingSolution.of(inst, h.entries, "Oracle",
                                      (f"oracle: taken from {h.producer}",))
    return best
