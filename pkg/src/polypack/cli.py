"""Command-line front end.

Exit codes: 0 success, 1 input/output or parse error, 2 infeasible solution.
"""
from __future__ import annotations

import argparse
import statistics
import sys
import time
from pathlib import Path

from . import __version__
from .classify import classify_all
from .geometry import DegenerateInput
from .io import (GenerationFailed, ParseError, generate_instance, parse_instance,
                 parse_solution, serialize_instance, serialize_solution)
from .model import UnknownId, validate_solution
from .oracle import TooLarge, brute_force_opt
from .pipeline import solve
from .render import RenderOptions, render_svg

EXIT_OK, EXIT_IO, EXIT_INFEASIBLE = 0, 1, 2


class _Fail(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Fail(EXIT_IO, f"cannot write {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_instance(_read(path))
    except (ParseError, DegenerateInput, ValueError) as exc:
        raise _Fail(EXIT_IO, f"{path}: {exc}") from None


def cmd_classify(args) -> int:
    inst = _load(args.instance)
    print(f"{'id':>5} {'class':<7} {'group':>6} {'length':>10} {'height':>10} {'h_prime':>10}")
    for it, c in zip(inst.items, classify_all(inst)):
        g = "-" if c.group is None else ("-inf" if not isinstance(c.group, int) else str(c.group))
        print(f"{it.id:>5} {c.cls:<7} {g:>6} {it.length:>10.4f} {it.height:>10.4f} {c.h_prime:>10.4f}")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    sol = solve(inst, args.mode, args.delta)
    ra = 1.0 + (args.delta if args.delta is not None else inst.config.delta) if args.mode == "ra" else 1.0
    report = validate_solution(inst, sol, ra)
    _write(args.out, serialize_solution(sol))
    if args.svg:
        _write(args.svg, render_svg(inst, sol, RenderOptions(ra_factor=ra)))
    if not report:
        for v in report.violations:
            print(f"{v.kind} {v.ids} {v.magnitude:.3g}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.out not in (None, "-"):
        print(f"{sol.producer}: weight {sol.total_weight:g} with {len(sol)} polygons")
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = _load(args.instance)
    try:
        sol = parse_solution(_read(args.solution))
        report = validate_solution(inst, sol, args.ra)
    except (ParseError, ValueError) as exc:
        raise _Fail(EXIT_IO, f"{args.solution}: {exc}") from None
    except UnknownId as exc:
        raise _Fail(EXIT_IO, f"{args.solution}: unknown polygon id {exc.args[0]}") from None
    if report:
        print(f"feasible: weight {sol.total_weight:g}, {len(sol)} polygons")
        return EXIT_OK
    for v in report.violations:
        print(f"{v.kind} ids={','.join(map(str, v.ids))} magnitude={v.magnitude:.6g}")
    return EXIT_INFEASIBLE


def cmd_render(args) -> int:
    inst = _load(args.instance)
    try:
        sol = parse_solution(_read(args.solution))
    except ParseError as exc:
        raise _Fail(EXIT_IO, f"{args.solution}: {exc}") from None
    opts = RenderOptions(containers=args.containers, guide=args.guide,
                         group_colors=args.groups, ra_factor=args.ra)
    _write(args.svg, render_svg(inst, sol, opts))
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        inst = generate_instance(args.seed, args.N, {"easy": args.easy, "medium": args.medium,
                                                     "hard": args.hard}, args.profile)
    except (GenerationFailed, ValueError) as exc:
        raise _Fail(EXIT_IO, str(exc)) from None
    _write(args.out, serialize_instance(inst))
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load(args.instance)
    try:
        sol = brute_force_opt(inst, args.max_n, args.fine_grid)
    except TooLarge as exc:
        raise _Fail(EXIT_IO, str(exc)) from None
    _write(args.out, serialize_solution(sol))
    return EXIT_OK


def bench_rows(paths, fine_grid: int = 256):
    """(name, solver weight, oracle weight, ratio, producer, seconds) per instance."""
    for p in paths:
        inst = parse_instance(Path(p).read_text(encoding="utf-8"))
        t0 = time.perf_counter()
        sol = solve(inst)
        orc = brute_force_opt(inst, max(3, len(inst)), fine_grid, hints=[sol])
        dt = time.perf_counter() - t0
        ratio = sol.total_weight / orc.total_weight if orc.total_weight > 0 else 1.0
        yield Path(p).name, sol.total_weight, orc.total_weight, ratio, sol.producer, dt


def cmd_bench(args) -> int:
    paths = sorted(Path(args.corpus).glob("*.txt"))
    if not paths:
        raise _Fail(EXIT_IO, f"no instances in {args.corpus}")
    lines = [f"{'instance':<24} {'solver':>8} {'oracle':>8} {'ratio':>7}  producer"]
    ratios = []
    t0 = time.perf_counter()
    try:
        for name, w, o, r, prod, _ in bench_rows(paths, args.fine_grid):
            ratios.append(r)
            lines.append(f"{name:<24} {w:>8g} {o:>8g} {r:>7.3f}  {prod}")
    except (ParseError, DegenerateInput) as exc:
        raise _Fail(EXIT_IO, str(exc)) from None
    lines.append(f"instances={len(ratios)} mean={statistics.mean(ratios):.4f} "
                 f"min={min(ratios):.4f} seconds={time.perf_counter() - t0:.1f}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polypack", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"polypack {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify", help="print the class and group of every polygon")
    p.add_argument("instance")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("solve", help="run all solvers and keep the heaviest packing")
    p.add_argument("instance")
    p.add_argument("--mode", choices=("exact", "ra"), default="exact")
    p.add_argument("--delta", type=float, default=None,
                   help="augmentation for --mode ra (default from the solver config)")
    p.add_argument("--out", default=None, help="solution file (default: stdout)")
    p.add_argument("--svg", default=None, help="also write a picture")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("validate", help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--ra", type=float, default=1.0, help="knapsack side factor")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("render", help="draw a solution as SVG")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--svg", default=None)
    p.add_argument("--ra", type=float, default=1.0)
    p.add_argument("--containers", action="store_true")
    p.add_argument("--guide", action="store_true")
    p.add_argument("--groups", action="store_true")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--N", type=int, default=16)
    p.add_argument("--easy", type=int, default=0)
    p.add_argument("--medium", type=int, default=0)
    p.add_argument("--hard", type=int, default=0)
    p.add_argument("--profile", default="uniform")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("oracle", help="reference packing for tiny instances")
    p.add_argument("instance")
    p.add_argument("--fine-grid", type=int, default=256)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("bench", help="solver / oracle ratio table over a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--fine-grid", type=int, default=256)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _Fail as exc:
        print(f"polypack: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
