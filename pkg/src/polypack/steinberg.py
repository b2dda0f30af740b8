"""Axis-parallel rectangle packing under Steinberg's area condition.

A list of rectangles with maximum width ``a`` and height ``b`` is packable
into a ``W x H`` region whenever

    a <= W,  b <= H,  2 * sum(area) <= W*H - (2a - W)+ * (2b - H)+.

``steinberg_pack`` builds such packings recursively. Every recursive step
places a stack of wide (or tall) rectangles or cuts the region in two, and
it only ever recurses into sub-regions that satisfy the same inequality. A
skyline packer is the last resort inside a sub-region. The output is always
checked for overlap before it is returned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

_REL = 1e-12


class PreconditionFailed(ValueError):
    """The rectangle list violates Steinberg's condition and no fallback packing was found."""


class RectTooBig(ValueError):
    pass


class PackingFailed(RuntimeError):
    """The condition holds but no packing was constructed (never observed in tests)."""


@dataclass(frozen=True)
class RectItem:
    w: float
    h: float
    id: int

    def __post_init__(self):
        if not (self.w > 0 and self.h > 0 and math.isfinite(self.w) and math.isfinite(self.h)):
            raise ValueError(f"rect {self.id}: extents must be finite and > 0")

    @property
    def area(self) -> float:
        return self.w * self.h


def steinberg_condition(rects: Sequence[RectItem], W: float, H: float) -> bool:
    if not rects:
        return True
    a = max(r.w for r in rects)
    b = max(r.h for r in rects)
    s = sum(r.area for r in rects)
    return _cond(s, a, b, W, H)


def _cond(s: float, a: float, b: float, u: float, v: float) -> bool:
    slack = _REL * max(u * v, 1e-300)
    return (a <= u * (1 + _REL) and b <= v * (1 + _REL)
            and 2 * s <= u * v - max(0.0, 2 * a - u) * max(0.0, 2 * b - v) + slack)


def _min_extent(s: float, a: float, b: float, v: float) -> float:
    """Smallest width ``u`` with ``_cond(s, a, b, u, v)``; inf if none."""
    if b > v * (1 + _REL):
        return math.inf
    c = max(0.0, 2 * b - v)
    t = (2 * s + 2 * a * c) / (v + c)
    if t <= 2 * a:
        return max(a, t)
    return max(2 * a, 2 * s / v)


# a rectangle in flight: (w, h, id)
_R = tuple


class _Packer:
    def __init__(self, budget: int):
        self.budget = budget
        self.out: dict[int, tuple[float, float]] = {}

    def pack(self, L: list[_R], x0: float, y0: float, u: float, v: float) -> bool:
        n = len(L)
        if n == 0:
            return True
        if n == 1:
            w, h, i = L[0]
            if w <= u * (1 + _REL) and h <= v * (1 + _REL):
                self.out[i] = (x0, y0)
                return True
            return False
        self.budget -= 1
        if self.budget < 0:
            return False
        if self._stack(L, x0, y0, u, v, 0):
            return True
        if self._stack(L, x0, y0, u, v, 1):
            return True
        if self._split(L, x0, y0, u, v):
            return True
        return self._skyline(L, x0, y0, u, v)

    # -- a stack of wide rectangles along the bottom (axis 0) or tall ones
    #    along the left side (axis 1); the rest goes into the leftover strip
    def _stack(self, L, x0, y0, u, v, axis) -> bool:
        if axis == 0:
            big = sorted((r for r in L if 2 * r[0] >= u), key=lambda r: -r[0])
            rest = [r for r in L if 2 * r[0] < u]
            span = v
            size = lambda r: r[1]
        else:
            big = sorted((r for r in L if 2 * r[1] >= v), key=lambda r: -r[1])
            rest = [r for r in L if 2 * r[1] < v]
            span = u
            size = lambda r: r[0]
        if not big:
            return False
        used = sum(size(r) for r in big)
        if used > span * (1 + _REL):
            return False
        gap = max(0.0, span - used)
        if rest:
            s = sum(r[0] * r[1] for r in rest)
            a = max(r[0] for r in rest)
            b = max(r[1] for r in rest)
            ok = _cond(s, a, b, u, gap) if axis == 0 else _cond(s, a, b, gap, v)
            if not ok:
                return False
        snap = dict(self.out)
        pos = 0.0
        for r in big:
            if axis == 0:
                self.out[r[2]] = (x0, y0 + pos)
            else:
                self.out[r[2]] = (x0 + pos, y0)
            pos += size(r)
        if not rest:
            return True
        done = (self.pack(rest, x0, y0 + used, u, gap) if axis == 0
                else self.pack(rest, x0 + used, y0, gap, v))
        if not done:
            self.out = snap
        return done

    # -- guillotine cut into two sub-regions that both satisfy the condition
    def _split(self, L, x0, y0, u, v) -> bool:
        tried = 0
        for axis in (0, 1):
            # axis 0: vertical cut (widths add up); axis 1: horizontal cut
            if axis == 0:
                dim, span, across = (lambda r: r[0]), u, v
                other = lambda r: r[1]
            else:
                dim, span, across = (lambda r: r[1]), v, u
                other = lambda r: r[0]
            for key in (dim, lambda r: r[0] * r[1], other):
                order = sorted(L, key=lambda r: -key(r))
                cands = self._cuts(order, dim, other, span, across)
                for m, c1, c2 in cands:
                    tried += 1
                    if tried > 24:
                        return False
                    cut = c1 + 0.5 * max(0.0, span - c1 - c2)
                    snap = dict(self.out)
                    if axis == 0:
                        ok = (self.pack(order[:m], x0, y0, cut, v)
                              and self.pack(order[m:], x0 + cut, y0, u - cut, v))
                    else:
                        ok = (self.pack(order[:m], x0, y0, u, cut)
                              and self.pack(order[m:], x0, y0 + cut, u, v - cut))
                    if ok:
                        return True
                    self.out = snap
        return False

    @staticmethod
    def _cuts(order, dim, other, span, across):
        n = len(order)
        d = np.array([dim(r) for r in order])
        o = np.array([other(r) for r in order])
        ar = d * o
        S1 = np.cumsum(ar)[:-1]
        S2 = ar.sum() - S1
        a1 = np.maximum.accumulate(d)[:-1]
        b1 = np.maximum.accumulate(o)[:-1]
        a2 = np.maximum.accumulate(d[::-1])[::-1][1:]
        b2 = np.maximum.accumulate(o[::-1])[::-1][1:]
        out = []
        for m in range(1, n):
            k = m - 1
            c1 = _min_extent(S1[k], a1[k], b1[k], across)
            c2 = _min_extent(S2[k], a2[k], b2[k], across)
            if c1 + c2 <= span * (1 + _REL):
                out.append((m, c1, c2, abs(S1[k] - S2[k])))
        out.sort(key=lambda t: t[3])
        return [(m, c1, c2) for m, c1, c2, _ in out]

    def _skyline(self, L, x0, y0, u, v) -> bool:
        for key in ((lambda r: (-r[1], -r[0])), (lambda r: (-r[0], -r[1])),
                    (lambda r: -r[0] * r[1])):
            pos = skyline_pack([(r[0], r[1]) for r in sorted(L, key=key)], u, v)
            if pos is not None:
                order = sorted(L, key=key)
                for r, (px, py) in zip(order, pos):
                    self.out[r[2]] = (x0 + px, y0 + py)
                return True
        return False


def skyline_pack(sizes: Sequence[tuple[float, float]], u: float, v: float
                 ) -> list[tuple[float, float]] | None:
    """Bottom-left skyline packing in the given order; None if something does not fit."""
    tol = _REL * max(u, v)
    sky = [(0.0, u, 0.0)]               # segments (x, width, y)
    out = []
    for w, h in sizes:
        best = None
        for i in range(len(sky)):
            x = sky[i][0]
            if x + w > u + tol:
                break
            # height needed when the rect starts at segment i
            y, need, j = 0.0, w, i
            while need > tol and j < len(sky):
                y = max(y, sky[j][2])
                need -= sky[j][1]
                j += 1
            if need > tol or y + h > v + tol:
                continue
            if best is None or (y, x) < (best[0], best[1]):
                best = (y, x, i)
        if best is None:
            return None
        y, x, i = best
        out.append((x, y))
        # rebuild the skyline around [x, x+w)
        new = []
        for sx, sw, sy in sky:
            if sx + sw <= x + tol or sx >= x + w - tol:
                new.append((sx, sw, sy))
                continue
            if sx < x:
                new.append((sx, x - sx, sy))
            if sx + sw > x + w:
                new.append((x + w, sx + sw - x - w, sy))
        new.append((x, w, y + h))
        new.sort()
        merged = []
        for seg in new:
            if merged and abs(merged[-1][2] - seg[2]) <= tol:
                px, pw, py = merged[-1]
                merged[-1] = (px, seg[0] + seg[1] - px, py)
            else:
                merged.append(seg)
        sky = merged
    return out


def _verify(rects: Sequence[RectItem], pos: Mapping[int, tuple[float, float]],
            W: float, H: float) -> bool:
    if len(pos) != len(rects):
        return False
    tol = 1e-9 * max(W, H)
    x = np.array([pos[r.id][0] for r in rects])
    y = np.array([pos[r.id][1] for r in rects])
    w = np.array([r.w for r in rects])
    h = np.array([r.h for r in rects])
    if (x < -tol).any() or (y < -tol).any() or (x + w > W + tol).any() or (y + h > H + tol).any():
        return False
    ox = np.minimum(x[:, None] + w[:, None], x[None, :] + w[None, :]) - np.maximum(x[:, None], x[None, :])
    oy = np.minimum(y[:, None] + h[:, None], y[None, :] + h[None, :]) - np.maximum(y[:, None], y[None, :])
    hit = (ox > tol) & (oy > tol)
    np.fill_diagonal(hit, False)
    return not hit.any()


def _snap(pos: dict[int, tuple[float, float]], W: float) -> dict[int, tuple[float, float]]:
    q = 1e-12 * W
    return {i: (round(x / q) * q, round(y / q) * q) for i, (x, y) in pos.items()}


def steinberg_pack(rects: Sequence[RectItem], W: float, H: float,
                   budget: int = 4000) -> dict[int, tuple[float, float]]:
    """Lower-left corners ``id -> (x, y)`` of a non-overlapping packing into ``[0,W] x [0,H]``.

    Raises PreconditionFailed when Steinberg's condition fails and the
    skyline fallback could not pack the list either.
    """
    for r in rects:
        if r.w > W * (1 + _REL) or r.h > H * (1 + _REL):
            raise RectTooBig(f"rect {r.id} ({r.w:g} x {r.h:g}) exceeds {W:g} x {H:g}")
    if len({r.id for r in rects}) != len(rects):
        raise ValueError("duplicate rect ids")
    if not rects:
        return {}
    L = [(r.w, r.h, r.id) for r in rects]
    if steinberg_condition(rects, W, H):
        p = _Packer(budget)
        if p.pack(L, 0.0, 0.0, W, H) and _verify(rects, p.out, W, H):
            snapped = _snap(p.out, W)
            return snapped if _verify(rects, snapped, W, H) else p.out
        raise PackingFailed(f"no packing constructed for {len(rects)} rects")
    p = _Packer(0)
    if p._skyline(L, 0.0, 0.0, W, H) and _verify(rects, p.out, W, H):
        return p.out
    raise PreconditionFailed("Steinberg's condition fails for this list")


def pack_boxes_best_effort(rects: Sequence[RectItem], W: float, H: float,
                           weights: Mapping[int, float]
                           ) -> tuple[dict[int, tuple[float, float]], float]:
    """Pack everything if possible; otherwise split into parts that each
    satisfy the condition (first fit by decreasing area) and keep the
    heaviest part that packs."""
    if not rects:
        return {}, 0.0
    try:
        pos = steinberg_pack(rects, W, H)
        return pos, float(sum(weights[r.id] for r in rects))
    except (PreconditionFailed, PackingFailed):
        pass
    parts: list[list[RectItem]] = []
    for r in sorted(rects, key=lambda r: (-r.area, r.id)):
        for part in parts:
            if steinberg_condition(part + [r], W, H):
                part.append(r)
                break
        else:
            parts.append([r])
    best: tuple[dict[int, tuple[float, float]], float] = ({}, 0.0)
    for part in sorted(parts, key=lambda p: -sum(weights[r.id] for r in p)):
        wsum = float(sum(weights[r.id] for r in part))
        if wsum <= best[1]:
            break
        try:
            best = (steinberg_pack(part, W, H), wsum)
        except (PreconditionFailed, PackingFailed):
            continue
    return best
