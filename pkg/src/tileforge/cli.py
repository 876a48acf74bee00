"""Command-line interface: analyze one tile, sweep a box, render geometry."""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import AbcTriple, analysis_for, predicts_14
from .family import disagreements, sweep
from .geometry_io import (
    approximate_boundary_piece,
    approximate_tile,
    export,
    merge_clouds,
)
from .graphs import build_graph, contact_set, neighbor_set
from .lattice import IntMatrix, companion_form
from .power import power_graph
from .topology import audit_report


def _parse_abc(text: str) -> AbcTriple:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"--abc expects A,B,C, got {text!r}")
    return AbcTriple(*(int(x) for x in parts))


def _load_json(path, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {what} file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{what} file is not valid JSON: {exc}") from exc


def _load_system(args):
    """Companion system from --abc or explicit --matrix/--digits files."""
    if bool(args.abc) == bool(args.matrix):
        raise ValueError("provide exactly one of --abc or --matrix")
    if args.abc:
        triple = _parse_abc(args.abc)
        coeffs = [1, triple.A, triple.B, triple.C]
        matrix, digits = companion_form(coeffs)
        return triple, matrix, digits
    if not args.digits:
        raise ValueError("--matrix requires --digits")
    rows = _load_json(args.matrix, "matrix")
    matrix = IntMatrix(tuple(tuple(int(x) for x in row) for row in rows))
    digits = tuple(tuple(int(x) for x in d)
                   for d in _load_json(args.digits, "digits"))
    if not digits:
        raise ValueError("digit set is empty")
    return None, matrix, digits


def _int_points(points) -> list:
    return [list(p) for p in points]


def _general_report(matrix, digits, basis, triple) -> tuple[dict, object]:
    """Report for explicit systems or basis overrides; returns contact graph."""
    contact = contact_set(matrix, digits, basis)
    neighbors = neighbor_set(contact, matrix, digits)
    s_count = len(neighbors.points)
    base = build_graph(neighbors.points, matrix, digits)
    report = {
        "matrix": [list(r) for r in matrix.rows],
        "digit_count": len(digits),
        "contact": {"size": len(contact.points), "rounds": contact.rounds,
                    "points": _int_points(contact.points)},
        "neighbors": {"count": s_count,
                      "points": _int_points(neighbors.points)},
        "predicted_14": predicts_14(triple) if triple else None,
        "audit_pass": None,
    }
    levels = {"g2": len(power_graph(base, 2).vertices),
              "g3": None, "g4": None}
    if s_count == 14:
        levels["g3"] = len(power_graph(base, 3).vertices)
        levels["g4"] = len(power_graph(base, 4).vertices)
    report["levels"] = levels
    zero = (0,) * matrix.size
    pts = tuple(p for p in contact.points if p != zero)
    return report, build_graph(pts, matrix, digits)


def run_analyze(args) -> int:
    triple, matrix, digits = _load_system(args)
    basis = None
    if args.basis:
        basis = tuple(tuple(int(x) for x in v) for v in json.loads(args.basis))

    if triple is not None and basis is None:
        t = analysis_for(triple)
        report = audit_report(triple, k_max=args.k)
        s_count = len(t.neighbors.points)
        report["matrix"] = [list(r) for r in t.matrix.rows]
        report["digit_count"] = len(t.digits)
        report["contact"] = {"size": len(t.contact.points),
                             "rounds": t.contact.rounds,
                             "points": _int_points(t.contact.points)}
        report["neighbors"] = {"count": s_count,
                               "points": _int_points(t.neighbors.points)}
        levels = {"g2": len(t.level(2).vertices), "g3": None, "g4": None}
        if s_count == 14:
            levels["g3"] = len(t.level(3).vertices)
            levels["g4"] = len(t.level(4).vertices)
        report["levels"] = levels
        contact_graph = t.contact_graph
    else:
        report, contact_graph = _general_report(matrix, digits, basis, triple)
        if triple is not None:
            report["triple"] = [triple.A, triple.B, triple.C]

    if args.json:
        export(report, "json", args.json)
    if args.dot:
        export(contact_graph, "dot", args.dot)
    audit = report.get("audit_pass")
    audit_text = "n/a" if audit is None else ("pass" if audit else "FAIL")
    print(f"neighbors: {report['neighbors']['count']}  "
          f"predicted_14: {report['predicted_14']}  audit: {audit_text}")
    return 0


def run_sweep(args) -> int:
    records = sweep(args.max, args.max, args.max, parallelism=args.jobs)
    bad = disagreements(records)
    failed = tuple(r for r in records if not r.audit_pass)
    if args.csv:
        export(records, "csv", args.csv)
    print(f"{len(records)} triples checked, {len(bad)} disagreements")
    for r in (bad + failed)[:10]:
        print(f"  ({r.A},{r.B},{r.C}): neighbors={r.neighbor_count} "
              f"predicted={r.predicted_14} {r.message}")
    return 0 if not bad and not failed else 1


def run_render(args) -> int:
    depth = args.depth if args.depth is not None else (6 if args.boundary else 8)
    if args.boundary:
        if not args.abc:
            raise ValueError("boundary rendering requires --abc")
        t = analysis_for(_parse_abc(args.abc))
        pieces = [approximate_boundary_piece(t, a, depth)
                  for a in t.neighbors.points]
        cloud = merge_clouds(pieces)
    else:
        _, matrix, digits = _load_system(args)
        cloud = approximate_tile(matrix, digits, depth)
    for path, fmt in ((args.ply, "ply"), (args.csv, "csv"),
                      (args.json, "json")):
        if path:
            export(cloud, fmt, path)
    print(f"{len(cloud.points)} points at depth {depth}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tileforge",
        description="Exact neighbor, boundary, and topology analysis of "
                    "integer self-affine tiles with collinear digits.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="full report for one tile")
    analyze.add_argument("--abc", help="family parameters A,B,C")
    analyze.add_argument("--matrix", help="JSON file with matrix rows")
    analyze.add_argument("--digits", help="JSON file with digit vectors")
    analyze.add_argument("--basis", help="JSON list of contact seed vectors")
    analyze.add_argument("--k", type=int, default=1,
                         help="loop audit depth (default 1)")
    analyze.add_argument("--json", help="write the JSON report here")
    analyze.add_argument("--dot", help="write the contact graph as DOT here")
    analyze.set_defaults(func=run_analyze)

    sweep_cmd = sub.add_parser("sweep", help="audit a whole parameter box")
    sweep_cmd.add_argument("--max", type=int, default=12,
                           help="bound on A, B, and C (default 12)")
    sweep_cmd.add_argument("--jobs", type=int, default=1,
                           help="parallel worker processes")
    sweep_cmd.add_argument("--csv", help="write sweep records here")
    sweep_cmd.set_defaults(func=run_sweep)

    render = sub.add_parser("render", help="emit point-cloud geometry")
    render.add_argument("--abc", help="family parameters A,B,C")
    render.add_argument("--matrix", help="JSON file with matrix rows")
    render.add_argument("--digits", help="JSON file with digit vectors")
    render.add_argument("--depth", type=int,
                        help="word length (default 8, or 6 with --boundary)")
    render.add_argument("--boundary", action="store_true",
                        help="per-face boundary clouds instead of the tile")
    render.add_argument("--ply", help="write an ascii PLY here")
    render.add_argument("--csv", help="write x,y,z CSV here")
    render.add_argument("--json", help="write a JSON cloud here")
    render.set_defaults(func=run_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
