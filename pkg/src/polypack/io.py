"""Text formats for instances and solutions, and a seeded instance generator.

Instance format (one record per line, ``#`` starts a comment)::

    knapsack <N>
    poly <id> w=<weight> v= x1,y1 x2,y2 ...

Vertices may be listed in either orientation. Solution format::

    place <id> <dx> <dy> <cos> <sin>
    ...
    weight <total> producer=<name> version=<version>
    note <free text>

Floats are written with ``repr`` so a parse/serialize round trip is exact.
"""
from __future__ import annotations

import math
import re
from typing import Mapping

import numpy as np

from . import __version__
from .classify import classify_item
from .geometry import ConvexPolygon, Placement, canonicalize, convex_hull
from .model import Instance, PackingSolution, SolverConfig

SQRT2 = math.sqrt(2.0)
MAX_RETRIES = 200


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class InvalidPolygon(ParseError):
    pass


class InvalidWeight(ParseError):
    pass


class GenerationFailed(RuntimeError):
    pass


_POLY = re.compile(r"^poly\s+(-?\d+)\s+w=(\S+)\s+v=\s*(.*)$")


def _float(tok: str, lineno: int, what: str) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(lineno, f"bad {what} {tok!r}") from None
    if not math.isfinite(x):
        raise ParseError(lineno, f"non-finite {what} {tok!r}")
    return x


def _check_polygon(pts: list[tuple[float, float]], pid: int, lineno: int) -> np.ndarray:
    """Counterclockwise copy of ``pts``; reflex or collinear vertices are
    reported with their index in the file."""
    v = np.array(pts, dtype=float)
    k = len(v)
    if k < 3:
        raise InvalidPolygon(lineno, f"polygon {pid}: needs at least 3 vertices, got {k}")
    x, y = v[:, 0], v[:, 1]
    area2 = float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    scale = float(np.abs(v).max()) or 1.0
    eps = 1e-12 * scale * scale
    if abs(area2) <= eps:
        raise InvalidPolygon(lineno, f"polygon {pid}: degenerate (zero area)")
    sign = 1.0 if area2 > 0 else -1.0
    for i in range(k):
        a, b, c = v[i - 1], v[i], v[(i + 1) % k]
        turn = sign * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if turn <= eps:
            kind = "collinear" if abs(turn) <= eps else "reflex"
            raise InvalidPolygon(lineno, f"polygon {pid}: vertex {i} ({b[0]:g}, {b[1]:g}) is {kind}")
    return v if sign > 0 else v[::-1].copy()


def parse_instance(text: str, config: SolverConfig | None = None) -> Instance:
    N = None
    polys = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("knapsack"):
            parts = line.split()
            if len(parts) != 2 or N is not None:
                raise ParseError(lineno, "expected a single 'knapsack <N>' header")
            try:
                N = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"knapsack side must be an integer, got {parts[1]!r}") from None
            if N < 1:
                raise ParseError(lineno, "knapsack side must be >= 1")
            continue
        m = _POLY.match(line)
        if not m:
            raise ParseError(lineno, f"unrecognised record {line.split()[0]!r}")
        if N is None:
            raise ParseError(lineno, "'knapsack <N>' must come first")
        pid = int(m.group(1))
        if pid in seen:
            raise ParseError(lineno, f"duplicate polygon id {pid}")
        seen.add(pid)
        w = _float(m.group(2), lineno, "weight")
        if not w > 0:
            raise InvalidWeight(lineno, f"polygon {pid}: weight must be > 0, got {m.group(2)}")
        pts = []
        for tok in m.group(3).split():
            xy = tok.split(",")
            if len(xy) != 2:
                raise ParseError(lineno, f"bad vertex {tok!r}")
            pts.append((_float(xy[0], lineno, "coordinate"), _float(xy[1], lineno, "coordinate")))
        v = _check_polygon(pts, pid, lineno)
        polys.append((pid, ConvexPolygon(v, check=False), w))
    if N is None:
        raise ParseError(0, "missing 'knapsack <N>' header")
    return Instance.build(N, polys, config)


def serialize_instance(inst: Instance) -> str:
    lines = [f"knapsack {inst.N}"]
    for it in inst.items:
        v = (it.original if it.original is not None else it.poly).vertices
        pts = " ".join(f"{x!r},{y!r}" for x, y in v.tolist())
        lines.append(f"poly {it.id} w={it.weight!r} v= {pts}")
    return "\n".join(lines) + "\n"


def serialize_solution(sol: PackingSolution) -> str:
    lines = [f"place {pid} {p.dx!r} {p.dy!r} {p.cos_a!r} {p.sin_a!r}" for pid, p in sol.entries]
    lines.append(f"weight {sol.total_weight!r} producer={sol.producer} version={__version__}")
    lines.extend(f"note {n}" for n in sol.notes)
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> PackingSolution:
    entries = []
    total = None
    producer = "Oracle"
    notes = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "place":
            parts = rest.split()
            if len(parts) != 5:
                raise ParseError(lineno, "expected 'place <id> dx dy cos sin'")
            try:
                pid = int(parts[0])
            except ValueError:
                raise ParseError(lineno, f"bad id {parts[0]!r}") from None
            dx, dy, c, s = (_float(t, lineno, "number") for t in parts[1:])
            try:
                entries.append((pid, Placement(dx, dy, c, s)))
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif head == "weight":
            parts = rest.split()
            if not parts:
                raise ParseError(lineno, "expected 'weight <total>'")
            total = _float(parts[0], lineno, "weight")
            for kv in parts[1:]:
                if kv.startswith("producer="):
                    producer = kv.split("=", 1)[1]
        elif head == "note":
            notes.append(rest)
        else:
            raise ParseError(lineno, f"unrecognised record {head!r}")
    if total is None:
        raise ParseError(0, "missing 'weight' trailer")
    try:
        return PackingSolution(tuple(entries), total, producer, tuple(notes))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


# ---------------------------------------------------------------- generator

PROFILES = ("uniform", "near_diagonal", "triangles")


def _sliver(rng: np.random.Generator, length: float, height: float, k: int) -> list:
    """Convex polygon with the segment (0,0)-(length,0) as diameter and the
    given total height split between both sides."""
    up = height * rng.uniform(0.3, 1.0) if k > 3 else height
    down = height - up
    pts = [(0.0, 0.0), (length, 0.0)]
    xs = np.sort(rng.uniform(0.2, 0.8, size=max(1, k - 2))) * length
    apex = rng.integers(len(xs))
    for i, x in enumerate(xs):
        if i == apex or k == 3:
            pts.append((float(x), up))
        elif down > 0 and i % 2:
            pts.append((float(x), -down))
        else:
            # below the tent through the apex so it stays on the hull boundary
            ax = xs[apex]
            frac = x / ax if x < ax else (length - x) / (length - ax)
            pts.append((float(x), up * frac * rng.uniform(0.55, 0.95)))
    return pts


def _random_convex(rng: np.random.Generator, radius: float, k: int) -> list:
    ang = np.sort(rng.uniform(0, 2 * math.pi, size=k))
    return [(radius * math.cos(a), radius * math.sin(a)) for a in ang]


def _finish(rng: np.random.Generator, pts: list, N: int) -> list:
    """Random rotation and translation, rounded to 1e-6."""
    th = rng.uniform(0, 2 * math.pi)
    c, s = math.cos(th), math.sin(th)
    p = np.array(pts) @ np.array([[c, s], [-s, c]])
    p += rng.uniform(0, N, size=2) - p.mean(axis=0)
    return [(round(float(x), 6), round(float(y), 6)) for x, y in p]


def _target_class(pts: list, N: int) -> str | None:
    try:
        poly = canonicalize(convex_hull(pts))
    except ValueError:
        return None
    cls, grp, _ = classify_item(poly.width, poly.height, N)
    if cls != "Easy" and grp is None:
        return None
    return cls


def _draw(rng: np.random.Generator, cls: str, N: int, profile: str) -> list:
    if cls == "Easy":
        k = 3 if profile == "triangles" else int(rng.integers(3, 7))
        return _random_convex(rng, rng.uniform(0.08, 0.36) * N, k)
    k = 3 if profile == "triangles" else int(rng.integers(3, 6))
    lo_frac = 0.97 if profile == "near_diagonal" else 0.0
    length = N + (SQRT2 * N - N) * rng.uniform(max(0.05, lo_frac), 0.995)
    gap = SQRT2 * N - length
    if cls == "Medium":
        h = gap / 8.0 * rng.uniform(0.2, 0.95)
    else:
        h = min(gap / 8.0 * rng.uniform(1.1, 6.0), 0.5 * gap + gap / 8.0)
    return _sliver(rng, length, h, k)


def generate_instance(seed: int, N: int, counts: Mapping[str, int], profile: str = "uniform",
                      config: SolverConfig | None = None) -> Instance:
    """Seeded instance with ``counts[cls]`` polygons of each class
    (keys ``easy``, ``medium``, ``hard``, case-insensitive)."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    if N < 1:
        raise ValueError("N must be >= 1")
    want = {k.capitalize(): int(v) for k, v in counts.items()}
    bad = set(want) - {"Easy", "Medium", "Hard"}
    if bad or any(v < 0 for v in want.values()):
        raise ValueError(f"counts must be non-negative for easy/medium/hard, got {dict(counts)}")
    rng = np.random.default_rng(seed)
    polys = []
    pid = 0
    for cls in ("Easy", "Medium", "Hard"):
        for _ in range(want.get(cls, 0)):
            for _attempt in range(MAX_RETRIES):
                pts = _finish(rng, _draw(rng, cls, N, profile), N)
                if _target_class(pts, N) == cls:
                    break
            else:
                raise GenerationFailed(f"no {cls} polygon for N={N}, profile={profile} "
                                       f"after {MAX_RETRIES} attempts")
            w = float(rng.integers(1, 11))
            polys.append((pid, pts, w))
            pid += 1
    return Instance.build(N, [(i, convex_hull(p), w) for i, p, w in polys], config)
