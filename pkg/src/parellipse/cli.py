"""Command-line interface: analyze | sweep | plot | verify.

Exit codes: 0 on success, 1 when verification finds a failing property,
2 on invalid input (bad vertex syntax, degenerate geometry, unwritable
output path).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from . import inscribed as ins
from . import svg as svgmod
from .conic import MixedSignsError, NotAnEllipseError
from .parallelogram import (
    DegenerateParallelogramError,
    NotAParallelogramError,
    canonicalize,
)
from .rectangle import ellipse_arc_length
from .report import analyze, render_json
from .verify import run_all

_INPUT_ERRORS = (
    NotAParallelogramError,
    DegenerateParallelogramError,
    NotAnEllipseError,
    MixedSignsError,
    ValueError,
)

SWEEP_METRICS = ("e2", "area", "arc_length", "a", "b", "phi")


class InputError(ValueError):
    pass


def _parse_vertices(args) -> list[tuple[float, float]]:
    if args.vertices is not None and args.input is not None:
        raise InputError("pass either --vertices or --input, not both")
    if args.vertices is not None:
        tokens = args.vertices.replace(";", " ").split()
        if len(tokens) != 4:
            raise InputError(
                f'expected four "x,y" pairs in --vertices, got {len(tokens)}'
            )
        vertices = []
        for token in tokens:
            parts = token.split(",")
            if len(parts) != 2:
                raise InputError(f"bad vertex token {token!r}; expected x,y")
            try:
                vertices.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise InputError(f"bad vertex token {token!r}: {exc}") from exc
        return vertices
    if args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as handle:
                payload = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
        raw = payload.get("vertices") if isinstance(payload, dict) else None
        if not isinstance(raw, list) or len(raw) != 4:
            raise InputError('input file must contain {"vertices": [[x,y] * 4]}')
        try:
            return [(float(x), float(y)) for x, y in raw]
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad vertices in {args.input}: {exc}") from exc
    raise InputError("one of --vertices or --input is required")


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def cmd_analyze(args) -> int:
    report = analyze(_parse_vertices(args))
    _write_text(args.out, render_json(report.to_dict()) + "\n")
    return 0


def cmd_sweep(args) -> int:
    if args.n < 3:
        raise InputError("--n must be at least 3")
    metrics = SWEEP_METRICS
    if args.metrics is not None:
        chosen = [m.strip() for m in args.metrics.split(",") if m.strip()]
        unknown = [m for m in chosen if m not in SWEEP_METRICS]
        if unknown:
            raise InputError(f"unknown metrics {unknown}; valid: {list(SWEEP_METRICS)}")
        metrics = tuple(m for m in SWEEP_METRICS if m in chosen)
    p = canonicalize(*_parse_vertices(args))

    rows = []
    for i in range(args.n):
        v = p.k * (i + 1) / (args.n + 1)
        g = ins.inscribed_conic(p, v).geometry
        row = {
            "v": v,
            "e2": g.e2,
            "area": math.pi * g.a * g.b,
            "arc_length": ellipse_arc_length(g.a, g.b),
            "a": g.a,
            "b": g.b,
            "phi": g.phi,
        }
        rows.append(row)

    header = ",".join(("v",) + metrics)
    lines = [header]
    for row in rows:
        lines.append(",".join(format(row[key], ".17g") for key in ("v",) + metrics))
    _write_text(args.out, "\n".join(lines) + "\n")

    if args.fig is not None:
        from .figures import render_sweep_figure

        try:
            render_sweep_figure(
                [{key: row[key] for key in ("v",) + metrics} for row in rows], args.fig
            )
        except OSError as exc:
            raise InputError(f"cannot write {args.fig}: {exc}") from exc
    return 0


def cmd_plot(args) -> int:
    if args.layers is None or args.layers.strip() == "all":
        layers = svgmod.LAYERS
    else:
        layers = tuple(m.strip() for m in args.layers.split(",") if m.strip())
        unknown = [m for m in layers if m not in svgmod.LAYERS]
        if unknown:
            raise InputError(f"unknown layers {unknown}; valid: {list(svgmod.LAYERS)}")
    report = analyze(_parse_vertices(args))
    _write_text(args.out, svgmod.render_svg(report, layers))
    return 0


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    results = run_all(args.seed, args.trials)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        line = (
            f"{status} {r.name:<{width}}  trials={r.trials} failures={r.failures} "
            f"worst={r.worst:.3e} tol={r.tolerance:.1e}"
        )
        if r.note:
            line += f"  [{r.note}]"
        print(line)
        failed += 0 if r.ok else 1
    print(f"{len(results) - failed}/{len(results)} properties passed "
          f"(seed={args.seed}, trials={args.trials})")
    return 0 if failed == 0 else 1


def _add_vertex_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--vertices",
        help='four vertices as "x1,y1 x2,y2 x3,y3 x4,y4" (any order)',
    )
    sub.add_argument("--input", help='JSON file with {"vertices": [[x,y] * 4]}')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parellipse",
        description="Minimal-eccentricity ellipses inscribed in and "
        "circumscribed about parallelograms.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze_cmd = commands.add_parser(
        "analyze", help="full JSON report for one parallelogram"
    )
    _add_vertex_options(analyze_cmd)
    analyze_cmd.add_argument("--out", help="write the report here instead of stdout")
    analyze_cmd.add_argument(
        "--format", choices=("json",), default="json", help="output format"
    )
    analyze_cmd.set_defaults(handler=cmd_analyze)

    sweep_cmd = commands.add_parser(
        "sweep", help="CSV of family metrics over a uniform parameter grid"
    )
    _add_vertex_options(sweep_cmd)
    sweep_cmd.add_argument("--n", type=int, default=101, help="grid points (>= 3)")
    sweep_cmd.add_argument(
        "--metrics",
        help=f"comma-separated subset of {','.join(SWEEP_METRICS)} (default: all)",
    )
    sweep_cmd.add_argument("--out", help="write the CSV here instead of stdout")
    sweep_cmd.add_argument("--fig", help="also render the sweep as a figure file")
    sweep_cmd.set_defaults(handler=cmd_sweep)

    plot_cmd = commands.add_parser("plot", help="deterministic SVG of the geometry")
    _add_vertex_options(plot_cmd)
    plot_cmd.add_argument(
        "--layers",
        help=f"comma-separated subset of {','.join(svgmod.LAYERS)}, or 'all' "
        "(empty string: outline only)",
    )
    plot_cmd.add_argument("--out", required=True, help="output SVG path")
    plot_cmd.set_defaults(handler=cmd_plot)

    verify_cmd = commands.add_parser(
        "verify", help="run the randomized property suites"
    )
    verify_cmd.add_argument("--seed", type=int, default=0, help="generator seed")
    verify_cmd.add_argument("--trials", type=int, default=100, help="trials per property")
    verify_cmd.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as exc:
        print(f"error: invalid geometry: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
