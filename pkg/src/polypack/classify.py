"""Easy / medium / hard classification and dyadic group assignment.

For a canonical polygon with diameter length ``l`` and height ``h`` in a
knapsack of side ``N`` let ``g = sqrt(2) N - l``. A polygon is easy when
its bounding box fits unrotated (``l <= N`` and ``h <= N``); otherwise it
is medium when ``h <= g / 8`` and hard when not. Non-easy polygons belong to
group ``j`` with ``2**(j-1) < g <= 2**j``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .model import Instance

SQRT2 = math.sqrt(2.0)
_SNAP = 1e-12


class Sentinel(enum.Enum):
    NEG_INF = "-inf"

    def __repr__(self) -> str:
        return "NEG_INF"


NEG_INF = Sentinel.NEG_INF
Group = Union[int, Sentinel, None]


@dataclass(frozen=True)
class Classification:
    id: int
    cls: str                    # Easy | Medium | Hard
    group: Group                # None for easy polygons and for polygons longer than sqrt(2) N
    h_prime: float

    @property
    def packable(self) -> bool:
        return self.cls == "Easy" or self.group is not None


def group_key(g: Group) -> float:
    """Sort key placing the sentinel before every integer group."""
    if g is NEG_INF:
        return -math.inf
    if g is None:
        return math.inf
    return float(g)


def hard_group_range(N: int) -> tuple[int, int]:
    if N < 1:
        raise ValueError("N must be >= 1")
    j_min = -((int(N) - 1).bit_length())               # -ceil(log2 N)
    j_max = 1 + _ceil_log2((SQRT2 - 1.0) * N)
    return j_min, j_max


def _ceil_log2(x: float) -> int:
    k = math.ceil(math.log2(x))
    # math.log2 may be off by an ulp around exact powers of two
    while 2.0 ** (k - 1) >= x:
        k -= 1
    while 2.0 ** k < x:
        k += 1
    return k


def group_of(gap: float, N: float) -> Group:
    """Group index for ``gap = sqrt(2) N - l`` (half-open dyadic buckets)."""
    if gap < -_SNAP * N:
        return None
    if gap <= _SNAP * N:
        return NEG_INF
    k = round(math.log2(gap))
    if abs(gap - 2.0 ** k) <= _SNAP * N:
        gap = 2.0 ** k
    return _ceil_log2(gap)


def classify_item(length: float, height: float, N: float) -> tuple[str, Group, float]:
    hp = SQRT2 * N - length
    if length <= N and height <= N:
        return "Easy", None, hp
    grp = group_of(hp, N)
    if grp is None:
        return "Hard", None, hp
    cls = "Medium" if height <= hp / 8.0 else "Hard"
    if cls == "Hard" and grp is not NEG_INF:
        j_min, _ = hard_group_range(int(N))
        # the group lower bound assumes integral input vertices; anything
        # thinner sits on the diagonal and is handled with the sentinel group
        if grp < j_min:
            grp = NEG_INF
    return cls, grp, hp


def classify_all(inst: Instance) -> list[Classification]:
    N = inst.N
    out = []
    j_min, j_max = hard_group_range(N)
    lengths = np.array([it.length for it in inst.items])
    heights = np.array([it.height for it in inst.items])
    for it, l, h in zip(inst.items, lengths, heights):
        cls, grp, hp = classify_item(float(l), float(h), N)
        if cls == "Hard" and isinstance(grp, int):
            assert j_min <= grp <= j_max, (it.id, grp, j_min, j_max)
        out.append(Classification(it.id, cls, grp, hp))
    return out
