"""SVG pictures of packings (SVG 1.1, no external dependencies)."""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .classify import NEG_INF, classify_all
from .model import Instance, PackingSolution, placed_vertices

CLASS_FILL = {"Easy": "#8fc1e3", "Medium": "#f4b183", "Hard": "#c5a3d9"}
GROUP_PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                 "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")


@dataclass(frozen=True)
class RenderOptions:
    size: int = 512                 # pixels for the side of the knapsack
    containers: bool = False        # medium containers R_j and R'_j
    guide: bool = False             # segment L from p_M to p_R and the points p_L, p_M, p_R
    group_colors: bool = False      # fill by group instead of class
    ra_factor: float = 1.0          # draw a (ra_factor N) frame for augmented solutions
    labels: bool = True


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, side: float, size: int, margin: int = 12):
        self.side = side
        self.k = size / side
        self.m = margin
        self.px = size + 2 * margin
        self.parts: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        return _fmt(self.m + p[0] * self.k), _fmt(self.m + (self.side - p[1]) * self.k)

    def polygon(self, pts, fill: str, stroke: str = "#222", opacity: float = 0.85,
                dash: str | None = None, width: float = 1.0) -> None:
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<polygon points="{coords}" fill="{fill}" fill-opacity="{opacity}" '
                          f'stroke="{stroke}" stroke-width="{width}"{extra}/>')

    def line(self, a, b, stroke: str, dash: str | None = None) -> None:
        (x1, y1), (x2, y2) = self.xy(a), self.xy(b)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}"{extra}/>')

    def dot(self, p, label: str) -> None:
        x, y = self.xy(p)
        self.parts.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#000"/>')
        self.text(p, label, dx=5, dy=-5)

    def text(self, p, label: str, dx: float = 0.0, dy: float = 0.0, size: int = 11) -> None:
        x, y = self.xy(p)
        self.parts.append(f'<text x="{_fmt(float(x) + dx)}" y="{_fmt(float(y) + dy)}" '
                          f'font-family="sans-serif" font-size="{size}" '
                          f'text-anchor="middle">{escape(label)}</text>')

    def svg(self) -> str:
        head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{self.px}" height="{self.px}" viewBox="0 0 {self.px} {self.px}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="#fff"/>', *self.parts, "</svg>"]) + "\n"


def render_svg(inst: Instance, sol: PackingSolution, options: RenderOptions | None = None) -> str:
    opt = options or RenderOptions()
    N = float(inst.N)
    side = N * max(1.0, opt.ra_factor)
    cv = _Canvas(side, opt.size)
    if opt.ra_factor > 1.0:
        cv.polygon([(0, 0), (side, 0), (side, side), (0, side)], "none", "#999", 1.0, "4 3")
    cv.polygon([(0, 0), (N, 0), (N, N), (0, N)], "none", "#000", 1.0, width=1.5)

    if opt.containers:
        from .medium import build_containers
        for c in build_containers(inst.N):
            cv.polygon(c.corners, "#dddddd", "#888", 0.25, "3 2")
    if opt.guide:
        pM, pR, pL = (N / 2, N / 2), (N, N / 2), (0.0, N / 2)
        cv.line(pM, pR, "#d62728")
        cv.line((0, N), (N, 0), "#aaa", "2 3")
        for p, name in ((pL, "p_L"), (pM, "p_M"), (pR, "p_R")):
            cv.dot(p, name)

    classes = {c.id: c for c in classify_all(inst)} if sol.entries else {}
    for pid, verts in placed_vertices(inst, sol).items():
        c = classes[pid]
        if opt.group_colors and c.group is not None:
            g = -1 if c.group is NEG_INF else int(c.group)
            fill = GROUP_PALETTE[g % len(GROUP_PALETTE)]
        else:
            fill = CLASS_FILL[c.cls]
        cv.polygon(verts, fill)
        if opt.labels:
            cv.text(np.asarray(verts).mean(axis=0), f"{pid} (w={inst[pid].weight:g})", dy=4, size=10)
    cv.parts.append(f'<!-- producer={escape(sol.producer)} weight={sol.total_weight!r} -->')
    return cv.svg()
