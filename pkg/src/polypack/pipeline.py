"""Full solve: run the per-class solvers and keep the heaviest result."""
from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor

from .classify import classify_all
from .easy import solve_easy
from .hard import solve_hard_enum, solve_hard_ra
from .medium import solve_medium
from .model import PRODUCERS, Instance, PackingSolution, SolverConfig
from .triangles import solve_hard_triangles


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("POLYPACK_THREADS", "1")))
    except ValueError:
        return 1


def pick_best(cands: list[PackingSolution]) -> PackingSolution:
    """Heaviest; ties go to the producer listed first in ``PRODUCERS``."""
    return min(cands, key=lambda s: (-s.total_weight, PRODUCERS.index(s.producer)))


def solve(inst: Instance, mode: str = "exact", delta: float | None = None,
          cfg: SolverConfig | None = None) -> PackingSolution:
    """Best of the per-class solvers (``mode="exact"``), or in
    addition the resource-augmented solver (``mode="ra"``), whose output
    fits a knapsack of side ``(1 + delta) N``."""
    if mode not in ("exact", "ra"):
        raise ValueError("mode must be 'exact' or 'ra'")
    cfg = cfg or inst.config
    classes = classify_all(inst)
    by_cls = defaultdict(list)
    for it, c in zip(inst.items, classes):
        by_cls[c.cls].append(it)
    hard = by_cls["Hard"]
    triangles_only = bool(hard) and all(len(it.poly) == 3 for it in hard)
    route = "none" if not hard else "triangle DPs" if triangles_only else "bounded enumeration"
    jobs = [
        lambda: solve_easy(by_cls["Easy"], inst.N, cfg.eps),
        lambda: solve_medium(by_cls["Medium"], classes, inst.N, cfg.eps),
        (lambda: solve_hard_triangles(hard, classes, inst.N, cfg)) if triangles_only
        else (lambda: solve_hard_enum(hard, classes, inst.N, cfg)),
    ]
    if mode == "ra":
        d = cfg.delta if delta is None else delta
        jobs.append(lambda: solve_hard_ra(inst, d, cfg))
    workers = min(thread_count(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cands = [f.result() for f in [pool.submit(j) for j in jobs]]
    else:
        cands = [j() for j in jobs]
    best = pick_best(cands)
    summary = ", ".join(f"{s.producer}={s.total_weight:g}" for s in cands)
    return best.with_producer(best.producer, (f"dispatch: hard -> {route}",
                                              f"candidates: {summary}"))
