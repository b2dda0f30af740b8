"""Problem instances and solutions, with geometric validation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .geometry import (REL_TOL, ConvexPolygon, Placement, Rect, canonicalize,
                       convex_hull, place_vertices, shrink_vertices)

PRODUCERS = ("Easy", "Medium", "HardEnum", "TriangleTL", "TriangleBR",
             "TriangleCorner", "SingleMax", "Oracle", "RA")


class UnknownId(KeyError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    eps: float = 0.1
    delta: float = 0.25
    hard_budget: int = 4
    per_group: int = 2
    grid_divisor: int = 8
    tl_steps: int | None = None       # None -> 64 * n
    node_budget: int = 200_000

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.hard_budget < 1 or self.grid_divisor < 1 or self.per_group < 1:
            raise ValueError("hard_budget, per_group and grid_divisor must be >= 1")
        if self.tl_steps is not None and self.tl_steps < 1:
            raise ValueError("tl_steps must be >= 1")

    def steps_for(self, n: int) -> int:
        return self.tl_steps if self.tl_steps is not None else 64 * max(1, n)


@dataclass(frozen=True)
class Item:
    id: int
    poly: ConvexPolygon          # canonical
    weight: float
    original: ConvexPolygon | None = None

    @property
    def length(self) -> float:
        return self.poly.width

    @property
    def height(self) -> float:
        return self.poly.height


@dataclass(frozen=True)
class Instance:
    N: int
    items: tuple[Item, ...]
    config: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("knapsack side must be >= 1")
        ids = [it.id for it in self.items]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate polygon ids")
        for it in self.items:
            if not it.weight > 0:
                raise ValueError(f"polygon {it.id}: weight must be > 0")
        object.__setattr__(self, "_by_id", {it.id: it for it in self.items})

    @classmethod
    def build(cls, N: int, polygons: Iterable[tuple[int, Sequence, float]],
              config: SolverConfig | None = None) -> "Instance":
        """``polygons`` yields ``(id, vertices, weight)``; vertices in any order."""
        items = []
        for pid, verts, w in polygons:
            orig = verts if isinstance(verts, ConvexPolygon) else convex_hull(verts)
            items.append(Item(int(pid), canonicalize(orig), float(w), orig))
        return cls(int(N), tuple(items), config or SolverConfig())

    def __getitem__(self, pid: int) -> Item:
        try:
            return self._by_id[pid]
        except KeyError:
            raise UnknownId(pid) from None

    def __contains__(self, pid: int) -> bool:
        return pid in self._by_id

    def __len__(self) -> int:
        return len(self.items)

    def subset(self, ids: Iterable[int]) -> "Instance":
        keep = set(ids)
        return Instance(self.N, tuple(it for it in self.items if it.id in keep), self.config)

    @property
    def tol(self) -> float:
        return REL_TOL * self.N


@dataclass(frozen=True)
class PackingSolution:
    entries: tuple[tuple[int, Placement], ...]
    total_weight: float
    producer: str
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.producer not in PRODUCERS:
            raise ValueError(f"unknown producer {self.producer!r}")
        ids = [pid for pid, _ in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate ids in solution")

    @classmethod
    def empty(cls, producer: str, notes: Sequence[str] = ()) -> "PackingSolution":
        return cls((), 0.0, producer, tuple(notes))

    @classmethod
    def of(cls, inst: Instance, entries, producer: str, notes: Sequence[str] = ()):
        entries = tuple(sorted(((int(i), p) for i, p in entries), key=lambda e: e[0]))
        w = float(sum(inst[i].weight for i, _ in entries))
        return cls(entries, w, producer, tuple(notes))

    @classmethod
    def of_weights(cls, entries, weights, producer: str, notes: Sequence[str] = ()):
        entries = tuple(sorted(((int(i), p) for i, p in entries), key=lambda e: e[0]))
        return cls(entries, float(sum(weights[i] for i, _ in entries)), producer, tuple(notes))

    @property
    def ids(self) -> list[int]:
        return [pid for pid, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def with_producer(self, producer: str, notes: Sequence[str] = ()) -> "PackingSolution":
        return PackingSolution(self.entries, self.total_weight, producer,
                               self.notes + tuple(notes))


@dataclass(frozen=True)
class Violation:
    kind: str                   # Overlap | OutOfKnapsack | DuplicateId
    ids: tuple[int, ...]
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def feasible(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.feasible


def placed_vertices(inst: Instance, sol: PackingSolution) -> dict[int, np.ndarray]:
    return {pid: place_vertices(inst[pid].poly.vertices, p) for pid, p in sol.entries}


def validate_solution(inst: Instance, sol: PackingSolution,
                      ra_factor: float = 1.0) -> ValidationReport:
    """Containment in ``[0, ra_factor*N]^2`` and pairwise overlap-freedom
    under the tolerance ``1e-9 N``; every violation is reported."""
    if ra_factor < 1:
        raise ValueError("ra_factor must be >= 1")
    tol = inst.tol
    side = ra_factor * inst.N
    out: list[Violation] = []
    seen: set[int] = set()
    placed: list[tuple[int, np.ndarray]] = []
    for pid, p in sol.entries:
        item = inst[pid]
        if pid in seen:
            out.append(Violation("DuplicateId", (pid,), 1.0))
            continue
        seen.add(pid)
        v = place_vertices(item.poly.vertices, p)
        excess = float(max(0.0, -v.min(), v.max() - side))
        if excess > tol:
            out.append(Violation("OutOfKnapsack", (pid,), excess))
        placed.append((pid, v))
    shrunk = [(pid, shrink_vertices(v, tol)) for pid, v in placed]
    for (i, a), (j, b) in itertools.combinations(shrunk, 2):
        if len(a) >= 3 and len(b) >= 3 and _kernels.overlap_pair(a, b):
            out.append(Violation("Overlap", tuple(sorted((i, j))), _penetration(a, b)))
    return ValidationReport(tuple(out))


def _penetration(a: np.ndarray, b: np.ndarray) -> float:
    best = np.inf
    for p in (a, b):
        e = np.roll(p, -1, axis=0) - p
        n = np.column_stack([e[:, 1], -e[:, 0]])
        n /= np.hypot(n[:, 0], n[:, 1])[:, None]
        pa, pb = a @ n.T, b @ n.T
        ov = np.minimum(pa.max(0), pb.max(0)) - np.maximum(pa.min(0), pb.min(0))
        best = min(best, float(ov.min()))
    return best


def knapsack_rect(N: float) -> Rect:
    return Rect(0.0, 0.0, float(N), float(N))
