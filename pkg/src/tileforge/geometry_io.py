"""Geometric approximation and file emission (DOT, JSON, CSV, PLY).

Point clouds are built with exact rational arithmetic; floats appear only
when a cloud is rendered to text.  All writers are deterministic: identical
inputs give byte-identical files.
"""

from __future__ import annotations

import itertools
import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction

from .analysis import TileAnalysis, analysis_for
from .family import SweepRecord, sweep_csv
from .graphs import BoundaryGraph
from .lattice import IntMatrix, Vec, is_expanding

DEFAULT_POINT_CAP = 10 ** 7
CAP_ENV_VAR = "TILEFORGE_CAP_POINTS"


def _resolve_cap(cap: int | None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(CAP_ENV_VAR)
    return int(env) if env else DEFAULT_POINT_CAP


def _ctx(obj) -> TileAnalysis:
    return obj if isinstance(obj, TileAnalysis) else analysis_for(obj)


@dataclass(frozen=True)
class PointCloud:
    """Exact-rational point list with provenance and a radius estimate.

    bound is a floating-point estimate of the attractor radius (sum of
    inverse-power operator norms times the largest digit); it is reported
    for sanity checks, never used in exact computations.
    """

    points: tuple[tuple[Fraction, ...], ...]
    depth: int
    source: str
    bound: float
    tags: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.tags is not None and len(self.tags) != len(self.points):
            raise ValueError("one tag per point required")

    def float_rows(self) -> tuple[tuple[float, ...], ...]:
        return tuple(tuple(float(x) for x in p) for p in self.points)


def merge_clouds(clouds) -> PointCloud:
    clouds = tuple(clouds)
    if not clouds:
        raise ValueError("nothing to merge")
    depth = clouds[0].depth
    tagged = [c.tags is not None for c in clouds]
    if any(tagged) != all(tagged):
        raise ValueError("cannot merge tagged with untagged clouds")
    points = tuple(p for c in clouds for p in c.points)
    tags = (tuple(t for c in clouds for t in c.tags) if all(tagged) else None)
    return PointCloud(points, depth,
                      " + ".join(dict.fromkeys(c.source for c in clouds)),
                      max(c.bound for c in clouds), tags)


def attractor_radius(matrix: IntMatrix, digits) -> float:
    """Floating estimate of sup-norm radius: sum of inverse-power norms."""
    m = matrix.size
    det = matrix.det
    inv = [[matrix.adjugate[i][j] / det for j in range(m)] for i in range(m)]
    dmax = max(max(abs(x) for x in d) for d in digits)
    cur = [[float(i == j) for j in range(m)] for i in range(m)]
    total = 0.0
    for _ in range(512):
        cur = [[sum(cur[i][k] * inv[k][j] for k in range(m)) for j in range(m)]
               for i in range(m)]
        norm = max(sum(abs(x) for x in row) for row in cur)
        total += norm * dmax
        if norm * dmax < 1e-13:
            break
    return total


def _digit_columns(matrix: IntMatrix, digits, depth: int):
    """cols[j][d] = exact image of digit d under the inverse taken j+1 times."""
    cols = []
    current = {d: tuple(Fraction(x) for x in d) for d in digits}
    for _ in range(depth):
        current = {d: matrix.solve_fraction(v) for d, v in current.items()}
        cols.append(current)
    return cols


def approximate_tile(matrix: IntMatrix, digits, depth: int,
                     cap: int | None = None) -> PointCloud:
    """All digit-word points of the given depth, in word order."""
    cap = _resolve_cap(cap)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not is_expanding(matrix):
        raise ValueError("matrix is not expanding")
    digits = tuple(tuple(d) for d in digits)
    count = len(digits) ** depth
    if count > cap:
        raise ValueError(f"{count} points exceed the cap of {cap}")
    cols = _digit_columns(matrix, digits, depth)
    zero = (Fraction(0),) * matrix.size
    points = []

    def descend(level: int, acc):
        if level == depth:
            points.append(acc)
            return
        for d in digits:
            w = cols[level][d]
            descend(level + 1, tuple(a + b for a, b in zip(acc, w)))

    descend(0, zero)
    return PointCloud(tuple(points), depth, f"tile depth {depth}",
                      attractor_radius(matrix, digits))


def count_walks(graph: BoundaryGraph, start: Vec, depth: int) -> int:
    counts = {start: 1}
    for _ in range(depth):
        nxt: dict[Vec, int] = {}
        for v, c in counts.items():
            for e in graph.out_edges(v):
                nxt[e.dst] = nxt.get(e.dst, 0) + c
        counts = nxt
    return sum(counts.values())


def approximate_boundary_piece(ctx, alpha, depth: int,
                               cap: int | None = None) -> PointCloud:
    """One point per length-depth boundary-graph walk from one neighbor."""
    t = _ctx(ctx)
    cap = _resolve_cap(cap)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    alpha = tuple(int(x) for x in alpha)
    g = t.boundary_graph
    if alpha not in g.vertices:
        raise ValueError(f"{alpha} is not a neighbor")
    count = count_walks(g, alpha, depth)
    if count > cap:
        raise ValueError(f"{count} points exceed the cap of {cap}")
    cols = _digit_columns(t.matrix, t.digits, depth)
    zero = (Fraction(0),) * t.matrix.size
    face = t.neighbors.points.index(alpha)
    points = []

    def descend(v: Vec, level: int, acc):
        if level == depth:
            points.append(acc)
            return
        for e in sorted(g.out_edges(v)):
            w = cols[level][e.d]
            descend(e.dst, level + 1, tuple(a + b for a, b in zip(acc, w)))

    descend(alpha, 0, zero)
    return PointCloud(tuple(points), depth, f"boundary piece {alpha}",
                      attractor_radius(t.matrix, t.digits),
                      (face,) * len(points))


# ---------------------------------------------------------------------------
# graph documents and DOT


@dataclass(frozen=True)
class GraphDocument:
    """Serialization-ready labeled digraph; labels are digit indices."""

    vertices: tuple[Vec, ...]
    edges: tuple[tuple[Vec, Vec, int, int], ...]


def graph_document(g: BoundaryGraph) -> GraphDocument:
    index = {d: i for i, d in enumerate(g.digits)}
    edges = tuple(sorted((e.src, e.dst, index[e.d], index[e.d_prime])
                         for e in g.edges))
    return GraphDocument(tuple(sorted(g.vertices)), edges)


def _node_name(v: Vec) -> str:
    return ",".join(str(x) for x in v)


def to_dot(doc: GraphDocument) -> str:
    lines = ["digraph {"]
    for v in doc.vertices:
        lines.append(f'  "{_node_name(v)}";')
    for src, dst, d, dp in doc.edges:
        lines.append(f'  "{_node_name(src)}" -> "{_node_name(dst)}" '
                     f'[label="{d}|{dp}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r'^\s*"([^"]+)"\s*->\s*"([^"]+)"\s*'
                       r'\[label="(\d+)\|(\d+)"\]\s*;\s*$')
_DOT_NODE = re.compile(r'^\s*"([^"]+)"\s*;\s*$')


def _parse_vec(name: str) -> Vec:
    return tuple(int(x) for x in name.split(","))


def parse_dot(text: str) -> GraphDocument:
    vertices = set()
    edges = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped in ("digraph {", "}", ""):
            continue
        m = _DOT_EDGE.match(line)
        if m:
            src, dst = _parse_vec(m.group(1)), _parse_vec(m.group(2))
            vertices.update((src, dst))
            edges.append((src, dst, int(m.group(3)), int(m.group(4))))
            continue
        m = _DOT_NODE.match(line)
        if m:
            vertices.add(_parse_vec(m.group(1)))
            continue
        raise ValueError(f"unparseable DOT line: {line!r}")
    return GraphDocument(tuple(sorted(vertices)), tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# writers


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def cloud_ply(cloud: PointCloud) -> str:
    lines = [
        "ply",
        "format ascii 1.0",
        f"comment {cloud.source}",
        f"element vertex {len(cloud.points)}",
        "property float x",
        "property float y",
        "property float z",
    ]
    if cloud.tags is not None:
        lines.append("property uchar face")
    lines.append("end_header")
    for i, p in enumerate(cloud.float_rows()):
        row = " ".join(_fmt(x) for x in p)
        if cloud.tags is not None:
            row += f" {cloud.tags[i]}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def cloud_csv(cloud: PointCloud) -> str:
    header = "x,y,z" if cloud.tags is None else "x,y,z,face"
    lines = [header]
    for i, p in enumerate(cloud.float_rows()):
        row = ",".join(_fmt(x) for x in p)
        if cloud.tags is not None:
            row += f",{cloud.tags[i]}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cloud_json(cloud: PointCloud) -> str:
    payload = {
        "source": cloud.source,
        "depth": cloud.depth,
        "bound": cloud.bound,
        "points": [list(p) for p in cloud.float_rows()],
    }
    if cloud.tags is not None:
        payload["tags"] = list(cloud.tags)
    return json_text(payload)


def render(doc, fmt: str) -> str:
    """Render a document to text; raises ValueError on incompatible pairs."""
    if isinstance(doc, BoundaryGraph):
        doc = graph_document(doc)
    if isinstance(doc, GraphDocument):
        if fmt == "dot":
            return to_dot(doc)
        raise ValueError(f"graphs cannot be rendered as {fmt}")
    if isinstance(doc, PointCloud):
        if fmt == "ply":
            return cloud_ply(doc)
        if fmt == "csv":
            return cloud_csv(doc)
        if fmt == "json":
            return cloud_json(doc)
        raise ValueError(f"point clouds cannot be rendered as {fmt}")
    if isinstance(doc, (list, tuple)) and doc and isinstance(doc[0], SweepRecord):
        if fmt == "csv":
            return sweep_csv(doc)
        if fmt == "json":
            return json_text([r.__dict__ for r in doc])
        raise ValueError(f"sweep records cannot be rendered as {fmt}")
    if isinstance(doc, dict):
        if fmt == "json":
            return json_text(doc)
        raise ValueError(f"reports cannot be rendered as {fmt}")
    raise ValueError(f"cannot render {type(doc).__name__} as {fmt}")


def export(doc, fmt: str, path) -> None:
    text = render(doc, fmt)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
