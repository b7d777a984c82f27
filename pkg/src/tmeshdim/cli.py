"""Command line front end.

Subcommands cover the analysis pipeline (analyze, diag, stability, rank,
oracle-compare) plus mesh generation and SVG rendering.  Exit codes: 0 on
success, 2 for unreadable input or an invalid mesh, 3 when an internal
cross-check fails (the two dimension routes disagree, or a diagonalizable
mesh contradicts its closed-form dimension).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .analysis import (
    check_mono_vertex_condition,
    dim_general,
    is_diagonalizable,
    new_vertex_vector,
    stability_verdict,
)
from .conformality import assemble_conformality
from .generate import random_tmesh
from .mesh import SplineSpaceSpec, TMesh, parse_tmesh, serialize_tmesh, thresholds
from .oracle import dim_direct
from .rational_linalg import dump_matrix, rank
from .topology import (
    CROSSCUT,
    INTERIOR,
    RAY,
    LEdge,
    extract_topology,
    reduce_vanished,
)

_EDGE_COLORS = {INTERIOR: "#c0392b", CROSSCUT: "#2d6cdf", RAY: "#1e8449"}


def _ledge_text(ledge: LEdge) -> str:
    span = ledge.span_indices
    return f"{ledge.orientation} line {ledge.line_index} span {span[0]}..{span[-1]}"


def _ledge_json(ledge: LEdge) -> dict:
    return {
        "orientation": ledge.orientation,
        "line": ledge.line_index,
        "span": [ledge.span_indices[0], ledge.span_indices[-1]],
    }


def render_svg(mesh: TMesh) -> str:
    """Deterministic SVG picture of the mesh: faces in light fill, the
    domain boundary in black, l-edges coloured by kind (interior red,
    crosscut blue, ray green), mono vertices as filled circles and free
    vertices as open squares."""
    topo = extract_topology(mesh)
    x0, x1 = float(mesh.x_knots[0]), float(mesh.x_knots[-1])
    y0, y1 = float(mesh.y_knots[0]), float(mesh.y_knots[-1])
    scale = 360.0 / max(x1 - x0, y1 - y0)
    pad = 20.0

    def at(ix: int, iy: int) -> tuple[str, str]:
        px = pad + (float(mesh.x_knots[ix]) - x0) * scale
        py = pad + (y1 - float(mesh.y_knots[iy])) * scale
        return f"{px:.2f}", f"{py:.2f}"

    width = f"{2 * pad + (x1 - x0) * scale:.2f}"
    height = f"{2 * pad + (y1 - y0) * scale:.2f}"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    for face in mesh.faces:
        ax, ay = at(face[0], face[3])
        bx, by = at(face[1], face[2])
        w = f"{float(bx) - float(ax):.2f}"
        h = f"{float(by) - float(ay):.2f}"
        parts.append(
            f'<rect x="{ax}" y="{ay}" width="{w}" height="{h}" '
            f'fill="#f6f4ee" stroke="none"/>'
        )
    for orientation, line, start, end in sorted(topo.boundary_edges):
        if orientation == "h":
            ax, ay = at(start, line)
            bx, by = at(end, line)
        else:
            ax, ay = at(line, start)
            bx, by = at(line, end)
        parts.append(
            f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
            f'stroke="#000000" stroke-width="2"/>'
        )
    for ledge in sorted(topo.ledges, key=LEdge.sort_key):
        first, last = ledge.vertices[0], ledge.vertices[-1]
        ax, ay = at(*first)
        bx, by = at(*last)
        color = _EDGE_COLORS[ledge.kind]
        parts.append(
            f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
    for point in topo.vertices:
        px, py = at(*point)
        if topo.is_mono_vertex(point):
            parts.append(f'<circle cx="{px}" cy="{py}" r="3.00" fill="#333333"/>')
        elif topo.is_free_vertex(point):
            half = 3.0
            sx = f"{float(px) - half:.2f}"
            sy = f"{float(py) - half:.2f}"
            parts.append(
                f'<rect x="{sx}" y="{sy}" width="6.00" height="6.00" '
                f'fill="none" stroke="#333333" stroke-width="1"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _load_mesh(path: str) -> TMesh:
    return parse_tmesh(Path(path).read_text())


def _spec_from_args(args: argparse.Namespace) -> SplineSpaceSpec:
    return SplineSpaceSpec(args.d1, args.d2, args.alpha, args.beta)


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_analyze(args: argparse.Namespace) -> int:
    mesh = _load_mesh(args.mesh)
    spec = _spec_from_args(args)
    report = dim_general(mesh, spec, trials=args.trials, seed=args.seed)
    counts = report.counts
    order = report.diagonalizable_order
    stab = report.stability
    if args.json:
        payload = {
            "spec": asdict(spec),
            "faces": counts.faces,
            "faces_before_reduction": len(mesh.faces),
            "counts": asdict(counts),
            "rank": report.rank,
            "nullity": report.nullity,
            "dimension": report.dimension,
            "diagonalizable": order is not None,
            "order": None if order is None else [_ledge_json(e) for e in order],
            "stability": None
            if stab is None
            else {
                "rank_at_knots": stab.rank_at_knots,
                "generic_rank": stab.generic_rank,
                "trials": stab.trials,
                "seed": stab.seed,
                "verdict": stab.verdict,
            },
        }
        print(json.dumps(payload, indent=2))
        return 0
    if counts.faces != len(mesh.faces):
        print(f"vanished l-edges reduced: faces {len(mesh.faces)} -> {counts.faces}")
    print(f"faces: {counts.faces}")
    print(
        f"interior l-edges: {counts.h_interior_ledges} horizontal, "
        f"{counts.v_interior_ledges} vertical"
    )
    print(
        f"crosscuts: {counts.h_crosscuts} horizontal, "
        f"{counts.v_crosscuts} vertical"
    )
    print(
        f"interior vertices: {counts.interior_vertices} "
        f"({counts.free_vertices} free)"
    )
    print(
        f"conformality matrix: {counts.conformality_rows} rows, "
        f"{counts.cofactor_columns} cols, rank {report.rank}, "
        f"nullity {report.nullity}"
    )
    print(f"dimension: {report.dimension}")
    print(f"diagonalizable: {'yes' if order is not None else 'no'}")
    if order:
        print("order: " + ", ".join(_ledge_text(e) for e in order))
    if stab is not None:
        print(
            f"stability: rank {stab.rank_at_knots} at knots, generic "
            f"{stab.generic_rank} ({stab.trials} trials, seed {stab.seed}): "
            f"{stab.verdict}"
        )
    return 0


def _cmd_diag(args: argparse.Namespace) -> int:
    mesh = _load_mesh(args.mesh)
    spec = _spec_from_args(args)
    reduced = reduce_vanished(mesh, spec)
    topo = extract_topology(reduced)
    if len(reduced.faces) != len(mesh.faces):
        print(f"vanished l-edges reduced: faces {len(mesh.faces)} -> {len(reduced.faces)}")
    order = is_diagonalizable(topo, spec)
    n_h, n_v = thresholds(spec)
    print(f"thresholds: horizontal {n_h}, vertical {n_v}")
    print(f"diagonalizable: {'yes' if order is not None else 'no'}")
    if order:
        print("order: " + ", ".join(_ledge_text(e) for e in order))
        vector = new_vertex_vector(topo, order)
        print("new-vertex vector: " + " ".join(str(n) for n in vector))
    mono = check_mono_vertex_condition(topo, spec)
    print(f"mono-vertex condition: {'holds' if mono else 'fails'}")
    return 0


def _cmd_stability(args: argparse.Namespace) -> int:
    mesh = _load_mesh(args.mesh)
    spec = _spec_from_args(args)
    report = stability_verdict(mesh, spec, trials=args.trials, seed=args.seed)
    print(f"rank at knots: {report.rank_at_knots}")
    print(
        f"generic rank: {report.generic_rank} "
        f"({report.trials} trials, seed {report.seed})"
    )
    print(f"verdict: {report.verdict}")
    return 0


def _cmd_rank(args: argparse.Namespace) -> int:
    mesh = _load_mesh(args.mesh)
    spec = _spec_from_args(args)
    system = assemble_conformality(mesh, spec)
    matrix = system.matrix()
    r = rank(matrix)
    print(
        f"conformality matrix: {matrix.rows} rows, {matrix.cols} cols, "
        f"rank {r}, nullity {matrix.cols - r}"
    )
    if args.dump is not None:
        Path(args.dump).write_text(dump_matrix(matrix))
    return 0


def _cmd_oracle_compare(args: argparse.Namespace) -> int:
    mesh = _load_mesh(args.mesh)
    spec = _spec_from_args(args)
    report = dim_general(mesh, spec)
    direct = dim_direct(mesh, spec)
    print(f"conformality dimension: {report.dimension}")
    print(f"direct dimension: {direct}")
    if report.dimension != direct:
        print("dimension routes disagree", file=sys.stderr)
        return 3
    print("agreement: yes")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    mesh = random_tmesh(args.seed, args.max_splits)
    _write_out(serialize_tmesh(mesh), args.out)
    print(
        f"seed {args.seed} max-splits {args.max_splits} "
        f"faces {len(mesh.faces)}",
        file=sys.stderr,
    )
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    mesh = _load_mesh(args.mesh)
    _write_out(render_svg(mesh), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmeshdim",
        description="Dimension analysis of polynomial spline spaces over T-meshes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spec_opts = argparse.ArgumentParser(add_help=False)
    spec_opts.add_argument("--d1", type=int, required=True, help="degree in x")
    spec_opts.add_argument("--d2", type=int, required=True, help="degree in y")
    spec_opts.add_argument(
        "--alpha", type=int, required=True, help="smoothness order across vertical edges"
    )
    spec_opts.add_argument(
        "--beta", type=int, required=True, help="smoothness order across horizontal edges"
    )

    mesh_arg = argparse.ArgumentParser(add_help=False)
    mesh_arg.add_argument("mesh", help="mesh file (JSON with rational knots)")

    p = sub.add_parser(
        "analyze",
        parents=[mesh_arg, spec_opts],
        help="dimension, kernel, diagonalizability, optional stability",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument(
        "--trials",
        type=int,
        default=None,
        help="also run a knot-stability check with this many random trials",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for stability trials")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser(
        "diag",
        parents=[mesh_arg, spec_opts],
        help="test for a valid l-edge elimination order",
    )
    p.set_defaults(handler=_cmd_diag)

    p = sub.add_parser(
        "stability",
        parents=[mesh_arg, spec_opts],
        help="compare the rank at the given knots against the generic rank",
    )
    p.add_argument("--trials", type=int, default=5, help="random knot re-assignments")
    p.add_argument("--seed", type=int, default=0, help="base seed for the trials")
    p.set_defaults(handler=_cmd_stability)

    p = sub.add_parser(
        "rank",
        parents=[mesh_arg, spec_opts],
        help="rank of the conformality matrix of the mesh as given",
    )
    p.add_argument("--dump", default=None, help="write the exact matrix to this file")
    p.set_defaults(handler=_cmd_rank)

    p = sub.add_parser(
        "oracle-compare",
        parents=[mesh_arg, spec_opts],
        help="cross-check the dimension against the direct per-face computation",
    )
    p.set_defaults(handler=_cmd_oracle_compare)

    p = sub.add_parser("gen", help="generate a random valid T-mesh")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-splits", type=int, default=8)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("render", parents=[mesh_arg], help="render the mesh to SVG")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(handler=_cmd_render)

    return parser


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
